#include "subseg/trainer.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <set>
#include <unordered_set>
#include <vector>

#include "subseg/error.hpp"
#include "subseg/segmenter.hpp"

namespace subseg {

namespace {

// Entry of the selection index, ordered best-first: highest weighted count,
// ties by lexicographic rendered texts. The raw token fields only disambiguate
// entries whose rendered forms collide.
struct Candidate {
  std::uint64_t count;
  std::string left_rendered;
  std::string right_rendered;
  TokenPair pair;

  bool operator<(const Candidate& o) const {
    if (count != o.count) return count > o.count;
    if (left_rendered != o.left_rendered)
      return left_rendered < o.left_rendered;
    if (right_rendered != o.right_rendered)
      return right_rendered < o.right_rendered;
    if (pair.first.text != o.pair.first.text)
      return pair.first.text < o.pair.first.text;
    if (pair.first.word_final != o.pair.first.word_final)
      return pair.first.word_final < o.pair.first.word_final;
    if (pair.second.text != o.pair.second.text)
      return pair.second.text < o.pair.second.text;
    return pair.second.word_final < o.pair.second.word_final;
  }
};

Candidate make_candidate(std::uint64_t count, const TokenPair& pair) {
  return Candidate{count, pair.first.rendered(), pair.second.rendered(), pair};
}

struct PairStats {
  std::unordered_map<TokenPair, std::uint64_t, TokenPairHash> counts;
  std::unordered_map<TokenPair, std::unordered_set<std::uint32_t>, TokenPairHash>
      words;  // indices of splits currently containing the pair
  std::set<Candidate> index;

  void bump(const TokenPair& pair, std::int64_t delta) {
    if (delta == 0) return;
    auto it = counts.find(pair);
    const std::uint64_t old_count = it == counts.end() ? 0 : it->second;
    if (old_count) index.erase(make_candidate(old_count, pair));
    assert(delta > 0 || old_count >= static_cast<std::uint64_t>(-delta));
    const std::uint64_t new_count =
        old_count + static_cast<std::uint64_t>(delta);
    if (new_count == 0) {
      if (it != counts.end()) counts.erase(it);
      words.erase(pair);
    } else {
      counts[pair] = new_count;
      index.insert(make_candidate(new_count, pair));
    }
  }
};

// Adjacent pair occurrences within one split, overlaps included.
std::unordered_map<TokenPair, std::uint32_t, TokenPairHash> pair_occurrences(
    const Split& split) {
  std::unordered_map<TokenPair, std::uint32_t, TokenPairHash> occ;
  for (std::size_t i = 0; i + 1 < split.size(); ++i)
    ++occ[TokenPair(split[i], split[i + 1])];
  return occ;
}

// Replaces every (left, right) adjacency by the merged token in one
// left-to-right pass. A merged position does not re-participate as the left
// member within the same pass, which removes all occurrences of the pair.
Split apply_merge(const Split& split, const Token& left, const Token& right,
                  const Token& result) {
  Split out;
  out.reserve(split.size());
  std::size_t i = 0;
  while (i < split.size()) {
    if (i + 1 < split.size() && split[i] == left && split[i + 1] == right) {
      out.push_back(result);
      i += 2;
    } else {
      out.push_back(split[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

WordCounts count_words(std::istream& is) {
  WordCounts counts;
  std::string line;
  while (std::getline(is, line)) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() &&
             (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
        ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '\r')
        ++i;
      if (i > start) ++counts[line.substr(start, i - start)];
    }
  }
  return counts;
}

std::size_t count_character_tokens(const WordCounts& counts) {
  std::unordered_set<Token, TokenHash> chars;
  for (const auto& [word, count] : counts) {
    (void)count;
    const Split split = initial_split(word);
    for (const Token& t : split) chars.insert(t);
  }
  return chars.size();
}

std::size_t merges_for_vocab_size(const WordCounts& counts,
                                  std::size_t vocab_size) {
  const std::size_t chars = count_character_tokens(counts);
  if (vocab_size < chars + 1)
    throw InvalidInputError(
        "vocabulary size " + std::to_string(vocab_size) +
        " is too small: the corpus needs at least " +
        std::to_string(chars + 1) + " entries (characters + UNK)");
  return vocab_size - chars - 1;
}

TrainResult train_bpe(const WordCounts& counts, std::size_t num_merges) {
  if (counts.empty())
    throw InvalidInputError("cannot train on an empty corpus");
  for (const auto& [word, count] : counts) {
    if (word.empty()) throw InvalidInputError("empty word in corpus counts");
    if (count == 0)
      throw InvalidInputError("zero count for word \"" + word + "\"");
  }

  std::vector<Split> splits;
  std::vector<std::uint64_t> freqs;
  splits.reserve(counts.size());
  for (const auto& [word, count] : counts) {
    splits.push_back(initial_split(word));
    freqs.push_back(count);
  }

  // Character inventory, in rendered order so vocabulary ids are stable.
  std::set<Token> chars;
  for (const Split& split : splits)
    for (const Token& t : split) chars.insert(t);

  PairStats stats;
  for (std::uint32_t w = 0; w < splits.size(); ++w) {
    for (const auto& [pair, occ] : pair_occurrences(splits[w])) {
      stats.bump(pair, static_cast<std::int64_t>(occ) *
                           static_cast<std::int64_t>(freqs[w]));
      stats.words[pair].insert(w);
    }
  }

  TrainResult result;
  for (std::size_t m = 0; m < num_merges; ++m) {
    if (stats.index.empty()) break;
    const TokenPair pair = stats.index.begin()->pair;

    result.table.add(pair.first, pair.second);
    const Token merged = merged_token(pair.first, pair.second);

    const std::unordered_set<std::uint32_t> affected = stats.words[pair];
    for (std::uint32_t w : affected) {
      const auto old_occ = pair_occurrences(splits[w]);
      Split next = apply_merge(splits[w], pair.first, pair.second, merged);
      const auto new_occ = pair_occurrences(next);
      for (const auto& [p, occ] : old_occ) {
        auto it = new_occ.find(p);
        const std::int64_t delta =
            static_cast<std::int64_t>(it == new_occ.end() ? 0 : it->second) -
            static_cast<std::int64_t>(occ);
        stats.bump(p, delta * static_cast<std::int64_t>(freqs[w]));
        if (it == new_occ.end()) {
          auto ws = stats.words.find(p);
          if (ws != stats.words.end()) ws->second.erase(w);
        }
      }
      for (const auto& [p, occ] : new_occ) {
        if (!old_occ.count(p))
          stats.bump(p, static_cast<std::int64_t>(occ) *
                            static_cast<std::int64_t>(freqs[w]));
        if (stats.counts.count(p)) stats.words[p].insert(w);
      }
      splits[w] = std::move(next);
    }
  }

  for (const Token& t : chars) result.vocab.add(t);
  for (const MergeRule& rule : result.table.rules())
    result.vocab.add(rule.result());
  return result;
}

}  // namespace subseg
