#include "subseg/noise.hpp"

#include <algorithm>
#include <ostream>

#include "line_pipeline.hpp"
#include "subseg/error.hpp"
#include "subseg/unicode.hpp"

namespace subseg {

namespace {

enum class EditOp { kRemove, kInsert, kSubstitute };

}  // namespace

void NoiseConfig::validate() const {
  if (!(word_prob >= 0.0 && word_prob <= 1.0))
    throw ConfigError("word perturbation probability must lie in [0, 1], got " +
                      std::to_string(word_prob));
}

std::vector<char32_t> collect_alphabet(const std::vector<std::string>& lines) {
  std::vector<char32_t> alphabet;
  for (const std::string& line : lines)
    for (char32_t cp : unicode::decode(line))
      if (!unicode::is_space(cp)) alphabet.push_back(cp);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()),
                 alphabet.end());
  return alphabet;
}

std::string misspell_word(std::string_view word, RandomStream& rng,
                          const std::vector<char32_t>& alphabet) {
  if (word.empty()) throw InvalidInputError("cannot misspell an empty word");
  if (alphabet.empty()) throw ConfigError("empty misspelling alphabet");

  std::vector<char32_t> scalars = unicode::decode(word);
  const std::size_t n = scalars.size();

  // Removal would empty a one-character word; substitution needs some
  // position that a differing character can land on.
  const bool can_remove = n >= 2;
  const bool can_substitute =
      alphabet.size() > 1 ||
      std::any_of(scalars.begin(), scalars.end(),
                  [&](char32_t c) { return c != alphabet[0]; });

  std::vector<EditOp> ops;
  if (can_remove) ops.push_back(EditOp::kRemove);
  ops.push_back(EditOp::kInsert);
  if (can_substitute) ops.push_back(EditOp::kSubstitute);

  switch (ops[rng.uniform_below(ops.size())]) {
    case EditOp::kRemove: {
      const std::size_t pos = rng.uniform_below(n);
      scalars.erase(scalars.begin() + static_cast<std::ptrdiff_t>(pos));
      break;
    }
    case EditOp::kInsert: {
      const std::size_t slot = rng.uniform_below(n + 1);
      const char32_t ch = alphabet[rng.uniform_below(alphabet.size())];
      scalars.insert(scalars.begin() + static_cast<std::ptrdiff_t>(slot), ch);
      break;
    }
    case EditOp::kSubstitute: {
      if (alphabet.size() == 1) {
        std::vector<std::size_t> changeable;
        for (std::size_t i = 0; i < n; ++i)
          if (scalars[i] != alphabet[0]) changeable.push_back(i);
        scalars[changeable[rng.uniform_below(changeable.size())]] = alphabet[0];
      } else {
        const std::size_t pos = rng.uniform_below(n);
        char32_t ch = alphabet[rng.uniform_below(alphabet.size())];
        while (ch == scalars[pos])
          ch = alphabet[rng.uniform_below(alphabet.size())];
        scalars[pos] = ch;
      }
      break;
    }
  }
  return unicode::encode(scalars);
}

void augment_corpus(const std::vector<std::string>& lines, std::ostream& out,
                    const NoiseConfig& cfg, int threads) {
  cfg.validate();
  std::vector<char32_t> alphabet =
      cfg.alphabet.empty() ? collect_alphabet(lines) : cfg.alphabet;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()),
                 alphabet.end());

  detail::transform_lines(
      lines, out, threads, [&](std::uint64_t i, const std::string& line) {
        const auto words = detail::scan_words(line);
        std::string result;
        result.reserve(line.size() + 8);
        std::size_t consumed = 0;
        for (std::size_t j = 0; j < words.size(); ++j) {
          result.append(line, consumed, words[j].begin - consumed);
          const std::string_view word = std::string_view(line).substr(
              words[j].begin, words[j].end - words[j].begin);
          RandomStream rng(word_stream_seed(cfg.seed, i, j));
          if (rng.bernoulli(cfg.word_prob))
            result += misspell_word(word, rng, alphabet);
          else
            result += word;
          consumed = words[j].end;
        }
        result.append(line, consumed, line.size() - consumed);
        return result;
      });
}

}  // namespace subseg
