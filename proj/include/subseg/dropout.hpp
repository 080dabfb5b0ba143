#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "subseg/merge_table.hpp"
#include "subseg/random.hpp"
#include "subseg/token.hpp"

namespace subseg {

// Parameters of stochastic segmentation. p is the probability that each
// merge candidate is discarded (0 keeps segmentation deterministic);
// base_seed roots all derived randomness; samples sizes the estimators.
struct DropoutConfig {
  double p = 0.0;
  std::uint64_t base_seed = 0;
  std::uint32_t samples = 1;

  // Compatibility switch for the loop-exit reading: the default terminates a
  // word as soon as one iteration drops every candidate; when set, such an
  // iteration is re-drawn instead (p == 1 still terminates immediately).
  bool resample_dropped = false;

  void validate() const;  // throws ConfigError
};

// A droppable merge: the table rule at `priority` applies at `position`
// (index of the left token). Distinct occurrences of the same rule are
// distinct candidates.
struct MergeCandidate {
  std::size_t position;
  std::uint32_t priority;
};

// All applicable merges of a split, in left-to-right position order.
std::vector<MergeCandidate> enumerate_candidates(const Split& split,
                                                 const MergeTable& table);

// Stochastic segmentation: each iteration enumerates the applicable merges,
// discards each one independently with probability p (one Bernoulli draw per
// candidate, consumed in position order), then applies the surviving merge
// with the lowest priority index, leftmost on an equal-priority tie. The
// word is finished when an iteration ends with no survivors, even if
// candidates existed before the drops. p = 0 reproduces segment_word;
// p = 1 yields the character split.
Split segment_word_dropout(std::string_view word, const MergeTable& table,
                           const DropoutConfig& cfg, RandomStream& rng);

struct SampledSplit {
  Split split;
  std::uint64_t count;
};

// cfg.samples independent draws of segment_word_dropout, aggregated into
// distinct splits with frequencies, highest count first (rendering order on
// ties).
std::vector<SampledSplit> sample_segmentations(std::string_view word,
                                               const MergeTable& table,
                                               const DropoutConfig& cfg,
                                               RandomStream& rng);

}  // namespace subseg
