#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subseg {

// Marker appended to a word-final token in serialized model files.
inline constexpr std::string_view kWordEndMarker = "</w>";

// Suffix appended to non-final subwords in segmented text streams.
inline constexpr std::string_view kContinuationMarker = "@@";

// A subword unit. The same character sequence is a different token depending
// on whether it closes a word, so the flag takes part in identity.
struct Token {
  std::string text;
  bool word_final = false;

  Token() = default;
  Token(std::string t, bool final_) : text(std::move(t)), word_final(final_) {}

  // File form: text plus the end-of-word marker when word_final.
  std::string rendered() const {
    std::string r = text;
    if (word_final) r += kWordEndMarker;
    return r;
  }

  friend bool operator==(const Token& a, const Token& b) {
    return a.word_final == b.word_final && a.text == b.text;
  }
  friend bool operator!=(const Token& a, const Token& b) { return !(a == b); }
  friend bool operator<(const Token& a, const Token& b) {
    if (a.text != b.text) return a.text < b.text;
    return a.word_final < b.word_final;
  }
};

struct TokenHash {
  std::size_t operator()(const Token& t) const {
    return std::hash<std::string>()(t.text) * 2ULL + (t.word_final ? 1 : 0);
  }
};

using TokenPair = std::pair<Token, Token>;

struct TokenPairHash {
  std::size_t operator()(const TokenPair& p) const {
    const std::size_t h1 = TokenHash()(p.first);
    const std::size_t h2 = TokenHash()(p.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

// Concatenation of two adjacent tokens; the result closes the word iff the
// right member does.
inline Token merged_token(const Token& left, const Token& right) {
  return Token(left.text + right.text, right.word_final);
}

// Working state of one word during segmentation: the concatenation of the
// token texts always equals the word, and exactly the last token is final.
using Split = std::vector<Token>;

// The word a split stands for (marker dropped).
inline std::string split_text(const Split& split) {
  std::string out;
  for (const Token& t : split) out += t.text;
  return out;
}

// Stream form: tokens joined by single spaces, non-final subwords suffixed
// with the continuation marker.
std::string render_split(const Split& split);

}  // namespace subseg
