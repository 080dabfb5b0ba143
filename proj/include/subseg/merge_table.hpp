#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "subseg/token.hpp"

namespace subseg {

struct MergeRule {
  Token left;
  Token right;
  std::uint32_t priority = 0;  // position in learned order; lower fires first

  Token result() const { return merged_token(left, right); }
};

// Ordered list of merge rules with constant-time pair lookup. Immutable once
// built; safe to share across threads.
class MergeTable {
public:
  MergeTable() = default;

  // Appends a rule with the next priority. Throws InvalidInputError if the
  // left member is word-final or the pair is already present.
  void add(Token left, Token right);

  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const MergeRule& rule(std::size_t priority) const { return rules_[priority]; }
  const std::vector<MergeRule>& rules() const { return rules_; }

  // Priority of (left, right), if the pair is in the table.
  std::optional<std::uint32_t> find(const Token& left,
                                    const Token& right) const {
    auto it = lookup_.find(TokenPair(left, right));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Token& left, const Token& right) const {
    return lookup_.count(TokenPair(left, right)) != 0;
  }

  // Text format: a version header line, then one "left right" pair per line
  // in priority order, tokens in rendered (marker-suffixed) form.
  void save(std::ostream& os) const;
  static MergeTable load(std::istream& is);

  friend bool operator==(const MergeTable& a, const MergeTable& b);

private:
  std::vector<MergeRule> rules_;
  std::unordered_map<TokenPair, std::uint32_t, TokenPairHash> lookup_;
};

inline constexpr std::string_view kMergeFileHeader = "#version: subseg/1";

}  // namespace subseg
