#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "subseg/dropout.hpp"
#include "subseg/merge_table.hpp"
#include "subseg/token.hpp"
#include "subseg/vocabulary.hpp"

namespace subseg {

struct AnalysisOptions {
  DropoutConfig dropout;  // p == 0 analyses the deterministic segmentation
  int threads = 1;
};

// Aggregated segmentation statistics of one corpus pass.
//
// token_counts: appearances of each token as an emitted token.
// substring_counts: appearances of each vocabulary token's character
// sequence inside the corpus words, marker-aware: a word-final token only
// matches spans ending at a word end, a word-internal token only spans that
// stop short of it. Overlapping spans all count.
struct CorpusStats {
  std::unordered_map<Token, std::uint64_t, TokenHash> token_counts;
  std::unordered_map<Token, std::uint64_t, TokenHash> substring_counts;
  std::map<std::size_t, std::uint64_t> length_histogram;  // tokens per line
  std::uint64_t unk_tokens = 0;
  std::uint64_t total_tokens = 0;
};

CorpusStats collect_corpus_stats(const std::vector<std::string>& lines,
                                 const MergeTable& table,
                                 const Vocabulary& vocab,
                                 const AnalysisOptions& options);

struct RatioEntry {
  Token token;
  double ratio;  // token_count / substring_count, in [0, 1]
  std::uint64_t substring_count;
  std::uint64_t token_count;
};

// Ratio of individual-token to substring appearances per vocabulary token,
// restricted to the top decile by substring frequency unless `all` is set.
// Tokens whose character sequence never occurs are omitted. Ordered by
// descending substring count, then rendered text.
std::vector<RatioEntry> token_to_substring_ratios(
    const std::vector<std::string>& lines, const MergeTable& table,
    const Vocabulary& vocab, const AnalysisOptions& options, bool all = false);

// Tokens-per-line histogram at the configured dropout probability.
std::map<std::size_t, std::uint64_t> length_distribution(
    const std::vector<std::string>& lines, const MergeTable& table,
    const AnalysisOptions& options);

// Fraction of emitted tokens that map to the UNK id, estimated over
// options.dropout.samples passes.
double unk_rate(const std::vector<std::string>& lines, const MergeTable& table,
                const Vocabulary& vocab, const AnalysisOptions& options);

// TSV: "token<TAB>ratio<TAB>substring_count".
void write_ratios_tsv(std::ostream& os, const std::vector<RatioEntry>& entries);

// TSV: "length<TAB>count", ascending length.
void write_histogram_tsv(std::ostream& os,
                         const std::map<std::size_t, std::uint64_t>& histogram);

}  // namespace subseg
