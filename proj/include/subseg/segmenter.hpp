#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "subseg/merge_table.hpp"
#include "subseg/token.hpp"
#include "subseg/vocabulary.hpp"

namespace subseg {

// One token per unicode scalar value of the word, the last one word-final.
// Throws InvalidInputError on empty words or embedded whitespace.
Split initial_split(std::string_view word);

// A merge performed during segmentation: the rule fired at the position of
// its left token.
struct AppliedMerge {
  std::size_t position;
  std::uint32_t priority;
};

// Deterministic segmentation: starting from the character split, repeatedly
// merge the adjacent pair with the lowest priority index (leftmost occurrence
// on a cross-position tie) until no adjacent pair is in the table.
Split segment_word(std::string_view word, const MergeTable& table);

// Same, recording the sequence of merges in application order.
Split segment_word(std::string_view word, const MergeTable& table,
                   std::vector<AppliedMerge>* trace);

// Maps each token to its vocabulary id; absent tokens map to the UNK id.
std::vector<int> tokens_to_ids(const Split& split, const Vocabulary& vocab);

}  // namespace subseg
