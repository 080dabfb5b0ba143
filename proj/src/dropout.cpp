#include "subseg/dropout.hpp"

#include <algorithm>
#include <map>

#include "subseg/error.hpp"
#include "subseg/segmenter.hpp"

namespace subseg {

void DropoutConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("dropout probability must lie in [0, 1], got " +
                      std::to_string(p));
  if (samples == 0) throw ConfigError("sample count must be positive");
}

std::vector<MergeCandidate> enumerate_candidates(const Split& split,
                                                 const MergeTable& table) {
  std::vector<MergeCandidate> candidates;
  for (std::size_t i = 0; i + 1 < split.size(); ++i) {
    if (auto prio = table.find(split[i], split[i + 1]))
      candidates.push_back(MergeCandidate{i, *prio});
  }
  return candidates;
}

Split segment_word_dropout(std::string_view word, const MergeTable& table,
                           const DropoutConfig& cfg, RandomStream& rng) {
  cfg.validate();
  Split split = initial_split(word);
  while (true) {
    const std::vector<MergeCandidate> candidates =
        enumerate_candidates(split, table);
    if (candidates.empty()) break;

    // One Bernoulli draw per candidate, in position order; position order
    // also settles equal-priority ties in favour of the leftmost survivor.
    bool have_survivor = false;
    MergeCandidate best{};
    for (const MergeCandidate& c : candidates) {
      const bool dropped = rng.bernoulli(cfg.p);
      if (dropped) continue;
      if (!have_survivor || c.priority < best.priority) {
        best = c;
        have_survivor = true;
      }
    }
    if (!have_survivor) {
      if (cfg.resample_dropped && cfg.p < 1.0) continue;
      break;
    }
    split[best.position] =
        merged_token(split[best.position], split[best.position + 1]);
    split.erase(split.begin() + static_cast<std::ptrdiff_t>(best.position) + 1);
  }
  return split;
}

std::vector<SampledSplit> sample_segmentations(std::string_view word,
                                               const MergeTable& table,
                                               const DropoutConfig& cfg,
                                               RandomStream& rng) {
  cfg.validate();
  std::map<std::string, SampledSplit> by_rendering;
  for (std::uint32_t s = 0; s < cfg.samples; ++s) {
    Split split = segment_word_dropout(word, table, cfg, rng);
    std::string key = render_split(split);
    auto it = by_rendering.find(key);
    if (it == by_rendering.end())
      by_rendering.emplace(std::move(key), SampledSplit{std::move(split), 1});
    else
      ++it->second.count;
  }
  std::vector<SampledSplit> out;
  out.reserve(by_rendering.size());
  for (auto& [key, sampled] : by_rendering) out.push_back(std::move(sampled));
  std::stable_sort(out.begin(), out.end(),
                   [](const SampledSplit& a, const SampledSplit& b) {
                     return a.count > b.count;
                   });
  return out;
}

}  // namespace subseg
