#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subseg/token.hpp"

namespace subseg {

inline constexpr std::string_view kUnkRendered = "<unk>";
inline constexpr int kUnkId = 0;

// Bidirectional token <-> id map with a reserved UNK entry at id 0.
// Immutable after construction; safe to share across threads.
class Vocabulary {
public:
  Vocabulary();

  // Assigns the next id to the token; returns the existing id if the token
  // is already present.
  int add(const Token& token);

  // Id of the token, or the UNK id when absent.
  int id_of(const Token& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? kUnkId : it->second;
  }

  bool contains(const Token& token) const { return ids_.count(token) != 0; }
  int unk_id() const { return kUnkId; }
  std::size_t size() const { return tokens_.size(); }

  // Token at an id. id 0 yields a placeholder whose rendered form is the UNK
  // spelling. Throws InvalidInputError for out-of-range ids.
  const Token& token_of(int id) const;

  // All non-UNK tokens in id order (ids 1..size-1).
  const std::vector<Token>& tokens() const { return tokens_; }

  // TSV format: "rendered-token<TAB>id", one per line, ids ascending from 0,
  // UNK first.
  void save(std::ostream& os) const;
  static Vocabulary load(std::istream& is);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

private:
  std::vector<Token> tokens_;  // index == id; slot 0 holds the UNK placeholder
  std::unordered_map<Token, int, TokenHash> ids_;
};

}  // namespace subseg
