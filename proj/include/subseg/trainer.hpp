#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "subseg/merge_table.hpp"
#include "subseg/vocabulary.hpp"

namespace subseg {

// Word-frequency view of a corpus. Words are non-empty and contain no
// whitespace; counts are strictly positive.
using WordCounts = std::unordered_map<std::string, std::uint64_t>;

// Counts whitespace-separated words from a line stream.
WordCounts count_words(std::istream& is);

struct TrainResult {
  MergeTable table;
  Vocabulary vocab;
};

// Learns up to num_merges merge rules from the corpus, fewer if pair counts
// are exhausted first. Pair frequencies are weighted by word counts; after
// each learned merge the rule is applied to all training splits before the
// next pair is selected. Ties on frequency break by lexicographic order of
// the rendered (left, right) texts.
//
// The vocabulary holds every character token observed in the initial splits
// (word-internal and word-final variants as observed), one token per merge
// rule, and the reserved UNK entry.
TrainResult train_bpe(const WordCounts& counts, std::size_t num_merges);

// Number of distinct character tokens (both variants) the corpus produces.
std::size_t count_character_tokens(const WordCounts& counts);

// Merge count that targets a total vocabulary size of
// characters + merges + 1 (UNK). Throws InvalidInputError when the target is
// smaller than the character inventory allows.
std::size_t merges_for_vocab_size(const WordCounts& counts,
                                  std::size_t vocab_size);

}  // namespace subseg
