#include "subseg/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <thread>

#include "line_pipeline.hpp"
#include "subseg/error.hpp"
#include "subseg/segmenter.hpp"
#include "subseg/unicode.hpp"

namespace subseg {

namespace {

struct SegmentedPartial {
  std::unordered_map<Token, std::uint64_t, TokenHash> token_counts;
  std::map<std::size_t, std::uint64_t> length_histogram;
  std::uint64_t unk_tokens = 0;
  std::uint64_t total_tokens = 0;

  void merge(SegmentedPartial&& other) {
    for (auto& [t, c] : other.token_counts) token_counts[t] += c;
    for (auto& [len, c] : other.length_histogram) length_histogram[len] += c;
    unk_tokens += other.unk_tokens;
    total_tokens += other.total_tokens;
  }
};

// One segmentation pass over the corpus. vocab may be null when UNK counting
// is not needed. Partial stats merge associatively, so the partition into
// threads cannot change the result.
SegmentedPartial segmented_stats(const std::vector<std::string>& lines,
                                 const MergeTable& table,
                                 const Vocabulary* vocab,
                                 const DropoutConfig& cfg,
                                 std::uint64_t pass_seed, int threads) {
  const auto process_range = [&](std::size_t begin, std::size_t stride,
                                 SegmentedPartial& partial) {
    for (std::size_t i = begin; i < lines.size(); i += stride) {
      const auto words = detail::scan_words(lines[i]);
      std::size_t line_tokens = 0;
      for (std::size_t j = 0; j < words.size(); ++j) {
        const std::string_view word = std::string_view(lines[i]).substr(
            words[j].begin, words[j].end - words[j].begin);
        Split split;
        if (cfg.p == 0.0) {
          split = segment_word(word, table);
        } else {
          RandomStream rng(word_stream_seed(pass_seed, i, j));
          split = segment_word_dropout(word, table, cfg, rng);
        }
        line_tokens += split.size();
        for (Token& t : split) {
          if (vocab && !vocab->contains(t)) ++partial.unk_tokens;
          ++partial.token_counts[std::move(t)];
        }
      }
      partial.total_tokens += line_tokens;
      ++partial.length_histogram[line_tokens];
    }
  };

  if (threads <= 1 || lines.size() < 2) {
    SegmentedPartial partial;
    process_range(0, 1, partial);
    return partial;
  }
  const int workers =
      static_cast<int>(std::min<std::size_t>(threads, lines.size()));
  std::vector<SegmentedPartial> partials(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&, t] { process_range(t, workers, partials[t]); });
  for (auto& th : pool) th.join();
  SegmentedPartial result;
  for (auto& p : partials) result.merge(std::move(p));
  return result;
}

// Marker-aware substring occurrences of vocabulary tokens, aggregated over
// distinct words and weighted by word frequency.
std::unordered_map<Token, std::uint64_t, TokenHash> substring_stats(
    const std::vector<std::string>& lines, const Vocabulary& vocab) {
  std::size_t max_scalars = 0;
  for (const Token& t : vocab.tokens())
    max_scalars = std::max(max_scalars, unicode::decode(t.text).size());

  std::unordered_map<std::string, std::uint64_t> word_freq;
  for (const std::string& line : lines)
    for (const auto& ref : detail::scan_words(line))
      ++word_freq[line.substr(ref.begin, ref.end - ref.begin)];

  std::unordered_map<Token, std::uint64_t, TokenHash> counts;
  for (const auto& [word, freq] : word_freq) {
    const std::vector<char32_t> scalars = unicode::decode(word);
    const std::size_t n = scalars.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::string span;
      for (std::size_t len = 1; len <= max_scalars && i + len <= n; ++len) {
        unicode::append(span, scalars[i + len - 1]);
        const Token candidate(span, /*word_final=*/i + len == n);
        if (vocab.contains(candidate)) counts[candidate] += freq;
      }
    }
  }
  return counts;
}

}  // namespace

CorpusStats collect_corpus_stats(const std::vector<std::string>& lines,
                                 const MergeTable& table,
                                 const Vocabulary& vocab,
                                 const AnalysisOptions& options) {
  options.dropout.validate();
  if (lines.empty()) throw InvalidInputError("empty corpus");
  SegmentedPartial pass =
      segmented_stats(lines, table, &vocab, options.dropout,
                      mix_seed(options.dropout.base_seed, 0), options.threads);
  CorpusStats stats;
  stats.token_counts = std::move(pass.token_counts);
  stats.length_histogram = std::move(pass.length_histogram);
  stats.unk_tokens = pass.unk_tokens;
  stats.total_tokens = pass.total_tokens;
  stats.substring_counts = substring_stats(lines, vocab);
  return stats;
}

std::vector<RatioEntry> token_to_substring_ratios(
    const std::vector<std::string>& lines, const MergeTable& table,
    const Vocabulary& vocab, const AnalysisOptions& options, bool all) {
  const CorpusStats stats = collect_corpus_stats(lines, table, vocab, options);

  std::vector<RatioEntry> entries;
  entries.reserve(stats.substring_counts.size());
  for (const auto& [token, substrings] : stats.substring_counts) {
    auto it = stats.token_counts.find(token);
    const std::uint64_t as_token =
        it == stats.token_counts.end() ? 0 : it->second;
    entries.push_back(RatioEntry{token,
                                 static_cast<double>(as_token) /
                                     static_cast<double>(substrings),
                                 substrings, as_token});
  }
  std::sort(entries.begin(), entries.end(),
            [](const RatioEntry& a, const RatioEntry& b) {
              if (a.substring_count != b.substring_count)
                return a.substring_count > b.substring_count;
              return a.token.rendered() < b.token.rendered();
            });
  if (!all && !entries.empty()) {
    const std::size_t keep = std::max<std::size_t>(1, entries.size() / 10);
    entries.resize(keep);
  }
  return entries;
}

std::map<std::size_t, std::uint64_t> length_distribution(
    const std::vector<std::string>& lines, const MergeTable& table,
    const AnalysisOptions& options) {
  options.dropout.validate();
  SegmentedPartial pass =
      segmented_stats(lines, table, nullptr, options.dropout,
                      mix_seed(options.dropout.base_seed, 0), options.threads);
  return std::move(pass.length_histogram);
}

double unk_rate(const std::vector<std::string>& lines, const MergeTable& table,
                const Vocabulary& vocab, const AnalysisOptions& options) {
  options.dropout.validate();
  if (lines.empty()) throw InvalidInputError("empty corpus");
  std::uint64_t unk = 0, total = 0;
  for (std::uint32_t k = 0; k < options.dropout.samples; ++k) {
    SegmentedPartial pass =
        segmented_stats(lines, table, &vocab, options.dropout,
                        mix_seed(options.dropout.base_seed, k),
                        options.threads);
    unk += pass.unk_tokens;
    total += pass.total_tokens;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(unk) / static_cast<double>(total);
}

void write_ratios_tsv(std::ostream& os,
                      const std::vector<RatioEntry>& entries) {
  char buf[32];
  for (const RatioEntry& e : entries) {
    std::snprintf(buf, sizeof buf, "%.6f", e.ratio);
    os << e.token.rendered() << '\t' << buf << '\t' << e.substring_count
       << '\n';
  }
}

void write_histogram_tsv(
    std::ostream& os, const std::map<std::size_t, std::uint64_t>& histogram) {
  for (const auto& [length, count] : histogram)
    os << length << '\t' << count << '\n';
}

}  // namespace subseg
