#include "subseg/vocabulary.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "subseg/error.hpp"

namespace subseg {

Vocabulary::Vocabulary() {
  // Reserved UNK. It lives outside ids_ so lookup falls through to kUnkId
  // only on absence.
  tokens_.emplace_back(std::string(kUnkRendered), false);
}

int Vocabulary::add(const Token& token) {
  if (token.text.empty())
    throw InvalidInputError("vocabulary tokens must be non-empty");
  if (token.rendered() == kUnkRendered)
    throw InvalidInputError(
        "vocabulary token collides with the reserved UNK spelling");
  auto [it, inserted] = ids_.emplace(token, static_cast<int>(tokens_.size()));
  if (inserted) tokens_.push_back(token);
  return it->second;
}

const Token& Vocabulary::token_of(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size())
    throw InvalidInputError("vocabulary id out of range: " +
                            std::to_string(id));
  return tokens_[static_cast<std::size_t>(id)];
}

void Vocabulary::save(std::ostream& os) const {
  for (std::size_t id = 0; id < tokens_.size(); ++id)
    os << tokens_[id].rendered() << '\t' << id << '\n';
}

Vocabulary Vocabulary::load(std::istream& is) {
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": expected token<TAB>id");
    std::string text = line.substr(0, tab);
    int id = 0;
    try {
      id = std::stoi(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": malformed id");
    }
    if (line_no == 1) {
      if (text != kUnkRendered || id != kUnkId)
        throw ParseError("vocabulary line 1: expected \"" +
                         std::string(kUnkRendered) + "\" at id 0");
      continue;
    }
    if (id != static_cast<int>(line_no) - 1)
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": ids must ascend contiguously from 0");
    bool final_ = false;
    if (text.size() >= kWordEndMarker.size() &&
        text.compare(text.size() - kWordEndMarker.size(),
                     kWordEndMarker.size(), kWordEndMarker) == 0) {
      text.resize(text.size() - kWordEndMarker.size());
      final_ = true;
    }
    if (text.empty())
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": empty token");
    if (text.find_first_of(" \t\r\n") != std::string::npos)
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": whitespace in token");
    const int assigned = vocab.add(Token(std::move(text), final_));
    if (assigned != id)
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": duplicate token");
  }
  if (vocab.size() == 0 || line_no == 0)
    throw ParseError("vocabulary: empty file");
  return vocab;
}

}  // namespace subseg
