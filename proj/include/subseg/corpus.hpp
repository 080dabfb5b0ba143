#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "subseg/dropout.hpp"
#include "subseg/merge_table.hpp"

namespace subseg {

struct CorpusOptions {
  DropoutConfig dropout;  // p == 0 gives the deterministic segmentation
  int threads = 1;
};

// Segments every whitespace-separated word of every line, writing the stream
// rendering (single-space separated tokens, "@@" continuation suffix). The
// random stream of line i, word j is seeded from (base_seed, i, j), so output
// is byte-identical for any thread count. Lines are processed in bounded
// memory.
void segment_corpus(std::istream& in, std::ostream& out,
                    const MergeTable& table, const CorpusOptions& options);

// Inverse of the stream rendering. Throws ParseError (with byte offset) on
// malformed marker placement, e.g. a line ending in a continuation token.
std::string detokenize_line(std::string_view line);

void detokenize_stream(std::istream& in, std::ostream& out);

// Whole corpus in memory, for the multi-pass estimators.
std::vector<std::string> read_lines(std::istream& in);

// Corpus-wide token-count ratio: mean total tokens per pass at dropout
// probability p (over `samples` passes) divided by total tokens at p = 0.
// Pass k derives its seeds from mix_seed(base_seed, k).
double expected_length_ratio(const std::vector<std::string>& lines,
                             const MergeTable& table, double p,
                             std::uint32_t samples, std::uint64_t base_seed);

struct CalibrationResult {
  double p = 0.0;
  double achieved_ratio = 1.0;
  std::uint32_t iterations = 0;
};

// Bisects over p in [0, 1] for the dropout probability whose expected length
// ratio matches target_ratio within tol (at most 30 iterations; the ratio is
// empirically monotone in p). Targets outside [1, ratio(p=1)] raise
// RangeError carrying the achievable interval. If the tolerance is tighter
// than estimator noise allows, the closest visited point is returned.
CalibrationResult calibrate_p(const std::vector<std::string>& lines,
                              const MergeTable& table, double target_ratio,
                              double tol, std::uint32_t samples,
                              std::uint64_t base_seed);

}  // namespace subseg
