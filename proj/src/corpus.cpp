#include "subseg/corpus.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "line_pipeline.hpp"
#include "subseg/error.hpp"
#include "subseg/segmenter.hpp"

namespace subseg {

namespace {

std::string segment_line(std::string_view line, const MergeTable& table,
                         const DropoutConfig& cfg, std::uint64_t line_index) {
  std::string out;
  out.reserve(line.size() * 2);
  const auto words = detail::scan_words(line);
  for (std::size_t j = 0; j < words.size(); ++j) {
    const std::string_view word =
        line.substr(words[j].begin, words[j].end - words[j].begin);
    Split split;
    if (cfg.p == 0.0) {
      split = segment_word(word, table);
    } else {
      RandomStream rng(word_stream_seed(cfg.base_seed, line_index, j));
      split = segment_word_dropout(word, table, cfg, rng);
    }
    if (j) out += ' ';
    out += render_split(split);
  }
  return out;
}

}  // namespace

void segment_corpus(std::istream& in, std::ostream& out,
                    const MergeTable& table, const CorpusOptions& options) {
  options.dropout.validate();
  detail::transform_lines(
      in, out, options.threads,
      [&](std::uint64_t index, const std::string& line) {
        return segment_line(line, table, options.dropout, index);
      });
}

std::string detokenize_line(std::string_view line) {
  if (line.empty()) return {};
  std::string out;
  std::string word;
  std::size_t i = 0;
  while (true) {
    std::size_t end = line.find(' ', i);
    const bool last = end == std::string_view::npos;
    if (last) end = line.size();
    const std::string_view piece = line.substr(i, end - i);
    if (piece.empty())
      throw ParseError("empty token at byte offset " + std::to_string(i));
    // A bare "@@" is a word-final token whose text is the marker itself.
    const bool continues =
        piece.size() > kContinuationMarker.size() &&
        piece.substr(piece.size() - kContinuationMarker.size()) ==
            kContinuationMarker;
    if (continues) {
      word += piece.substr(0, piece.size() - kContinuationMarker.size());
      if (last)
        throw ParseError("line ends with a continuation token at byte offset " +
                         std::to_string(i));
    } else {
      word += piece;
      if (!out.empty()) out += ' ';
      out += word;
      word.clear();
    }
    if (last) break;
    i = end + 1;
  }
  return out;
}

void detokenize_stream(std::istream& in, std::ostream& out) {
  detail::transform_lines(in, out, 1,
                          [](std::uint64_t, const std::string& line) {
                            return detokenize_line(line);
                          });
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (in.bad())
    throw Error("read failure at line " + std::to_string(lines.size() + 1));
  return lines;
}

namespace {

// Token total of the deterministic segmentation, cached per distinct word.
std::uint64_t deterministic_token_total(const std::vector<std::string>& lines,
                                        const MergeTable& table) {
  std::unordered_map<std::string, std::uint64_t> cache;
  std::uint64_t total = 0;
  for (const std::string& line : lines) {
    for (const auto& ref : detail::scan_words(line)) {
      std::string word = line.substr(ref.begin, ref.end - ref.begin);
      auto it = cache.find(word);
      if (it == cache.end()) {
        const std::uint64_t tokens = segment_word(word, table).size();
        it = cache.emplace(std::move(word), tokens).first;
      }
      total += it->second;
    }
  }
  return total;
}

std::uint64_t dropout_token_total(const std::vector<std::string>& lines,
                                  const MergeTable& table,
                                  const DropoutConfig& cfg,
                                  std::uint64_t pass_seed) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto words = detail::scan_words(lines[i]);
    for (std::size_t j = 0; j < words.size(); ++j) {
      const std::string_view word = std::string_view(lines[i]).substr(
          words[j].begin, words[j].end - words[j].begin);
      RandomStream rng(word_stream_seed(pass_seed, i, j));
      total += segment_word_dropout(word, table, cfg, rng).size();
    }
  }
  return total;
}

}  // namespace

double expected_length_ratio(const std::vector<std::string>& lines,
                             const MergeTable& table, double p,
                             std::uint32_t samples, std::uint64_t base_seed) {
  DropoutConfig cfg;
  cfg.p = p;
  cfg.base_seed = base_seed;
  cfg.samples = samples;
  cfg.validate();
  if (lines.empty()) throw InvalidInputError("empty corpus");

  const std::uint64_t base_total = deterministic_token_total(lines, table);
  if (base_total == 0) throw InvalidInputError("corpus contains no words");
  if (p == 0.0) return 1.0;

  double dropout_sum = 0.0;
  for (std::uint32_t k = 0; k < samples; ++k)
    dropout_sum += static_cast<double>(
        dropout_token_total(lines, table, cfg, mix_seed(base_seed, k)));
  return dropout_sum / static_cast<double>(samples) /
         static_cast<double>(base_total);
}

CalibrationResult calibrate_p(const std::vector<std::string>& lines,
                              const MergeTable& table, double target_ratio,
                              double tol, std::uint32_t samples,
                              std::uint64_t base_seed) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  const double max_ratio =
      expected_length_ratio(lines, table, 1.0, samples, base_seed);
  if (target_ratio < 1.0 - tol || target_ratio > max_ratio + tol)
    throw RangeError("target ratio " + std::to_string(target_ratio) +
                         " is outside the achievable range [1.0, " +
                         std::to_string(max_ratio) + "]",
                     1.0, max_ratio);
  if (std::abs(target_ratio - 1.0) <= tol)
    return CalibrationResult{0.0, 1.0, 0};
  if (std::abs(target_ratio - max_ratio) <= tol)
    return CalibrationResult{1.0, max_ratio, 0};

  double lo = 0.0, hi = 1.0;
  CalibrationResult best{0.0, 1.0, 0};
  double best_gap = std::abs(1.0 - target_ratio);
  for (std::uint32_t iter = 1; iter <= 30; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double r =
        expected_length_ratio(lines, table, mid, samples, base_seed);
    if (std::abs(r - target_ratio) < best_gap) {
      best = CalibrationResult{mid, r, iter};
      best_gap = std::abs(r - target_ratio);
    }
    if (std::abs(r - target_ratio) <= tol)
      return CalibrationResult{mid, r, iter};
    if (r < target_ratio)
      lo = mid;
    else
      hi = mid;
  }
  return best;
}

}  // namespace subseg
