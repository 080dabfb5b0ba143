#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subseg::unicode {

// Decodes UTF-8 into unicode scalar values. Throws ParseError on malformed
// input (truncated sequences, overlong encodings, surrogates, > U+10FFFF).
std::vector<char32_t> decode(std::string_view utf8);

// Encodes a sequence of scalar values back to UTF-8.
std::string encode(const std::vector<char32_t>& scalars);

// Appends the UTF-8 encoding of a single scalar value.
void append(std::string& out, char32_t scalar);

std::string encode_scalar(char32_t scalar);

// Unicode whitespace as far as this toolkit is concerned: ASCII space and
// control whitespace. Input corpora are pre-tokenized with single spaces,
// so this is only used for validation and word scanning.
constexpr bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' ||
         c == U'\f';
}

}  // namespace subseg::unicode
