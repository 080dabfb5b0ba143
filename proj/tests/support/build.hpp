// Small constructors shared by the test suites.

#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "subseg/merge_table.hpp"
#include "subseg/token.hpp"
#include "subseg/trainer.hpp"

namespace subseg::test {

// Token from its rendered form, e.g. tok("er</w>").
inline Token tok(std::string_view rendered) {
  if (rendered.size() > kWordEndMarker.size() &&
      rendered.substr(rendered.size() - kWordEndMarker.size()) ==
          kWordEndMarker)
    return Token(
        std::string(rendered.substr(0, rendered.size() - kWordEndMarker.size())),
        true);
  return Token(std::string(rendered), false);
}

inline MergeTable table_of(
    std::initializer_list<std::pair<const char*, const char*>> pairs) {
  MergeTable table;
  for (const auto& [left, right] : pairs) table.add(tok(left), tok(right));
  return table;
}

inline WordCounts counts_of(
    std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  WordCounts counts;
  for (const auto& [word, count] : entries) counts[word] = count;
  return counts;
}

inline std::string rendered(const Split& split) {
  std::string out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (i) out += ' ';
    out += split[i].rendered();
  }
  return out;
}

}  // namespace subseg::test
