#include "subseg/segmenter.hpp"

#include <limits>

#include "subseg/error.hpp"
#include "subseg/unicode.hpp"

namespace subseg {

Split initial_split(std::string_view word) {
  if (word.empty()) throw InvalidInputError("cannot split an empty word");
  const std::vector<char32_t> scalars = unicode::decode(word);
  Split split;
  split.reserve(scalars.size());
  for (char32_t cp : scalars) {
    if (unicode::is_space(cp))
      throw InvalidInputError("word contains whitespace: \"" +
                              std::string(word) + "\"");
    split.emplace_back(unicode::encode_scalar(cp), false);
  }
  split.back().word_final = true;
  return split;
}

Split segment_word(std::string_view word, const MergeTable& table) {
  return segment_word(word, table, nullptr);
}

Split segment_word(std::string_view word, const MergeTable& table,
                   std::vector<AppliedMerge>* trace) {
  Split split = initial_split(word);
  if (table.empty()) return split;
  while (split.size() > 1) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i + 1 < split.size(); ++i) {
      if (auto prio = table.find(split[i], split[i + 1]); prio && *prio < best) {
        best = *prio;
        best_pos = i;
      }
    }
    if (best == std::numeric_limits<std::uint32_t>::max()) break;
    split[best_pos] = merged_token(split[best_pos], split[best_pos + 1]);
    split.erase(split.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
    if (trace) trace->push_back(AppliedMerge{best_pos, best});
  }
  return split;
}

std::vector<int> tokens_to_ids(const Split& split, const Vocabulary& vocab) {
  std::vector<int> ids;
  ids.reserve(split.size());
  for (const Token& t : split) ids.push_back(vocab.id_of(t));
  return ids;
}

}  // namespace subseg
