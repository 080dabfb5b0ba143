#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "subseg/random.hpp"

namespace subseg {

struct NoiseConfig {
  double word_prob = 0.1;  // probability that a given word is perturbed
  std::uint64_t seed = 0;
  // Pool for inserted/substituted characters. When empty, augment_corpus
  // fills it with every scalar observed in the input (whitespace excluded).
  std::vector<char32_t> alphabet;

  void validate() const;  // throws ConfigError
};

// All distinct non-whitespace scalars of the corpus, sorted.
std::vector<char32_t> collect_alphabet(const std::vector<std::string>& lines);

// Applies exactly one perturbation, chosen uniformly among the applicable
// ones: character removal (needs length >= 2), insertion of a random
// character (uniform over length+1 slots), or substitution of one character
// (re-drawn when the sample equals the original, so the result is always at
// edit distance exactly 1).
std::string misspell_word(std::string_view word, RandomStream& rng,
                          const std::vector<char32_t>& alphabet);

// Perturbs each word independently with probability word_prob. The random
// stream of line i, word j derives from (seed, i, j); untouched words and the
// whitespace between words pass through byte-identical.
void augment_corpus(const std::vector<std::string>& lines, std::ostream& out,
                    const NoiseConfig& cfg, int threads = 1);

}  // namespace subseg
