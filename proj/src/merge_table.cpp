#include "subseg/merge_table.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "subseg/error.hpp"

namespace subseg {

namespace {

bool strip_marker(std::string& text) {
  if (text.size() >= kWordEndMarker.size() &&
      text.compare(text.size() - kWordEndMarker.size(), kWordEndMarker.size(),
                   kWordEndMarker) == 0) {
    text.resize(text.size() - kWordEndMarker.size());
    return true;
  }
  return false;
}

Token parse_token(std::string text, std::size_t line_no) {
  const bool final_ = strip_marker(text);
  if (text.empty())
    throw ParseError("merge table line " + std::to_string(line_no) +
                     ": empty token");
  // Catches stray carriage returns from foreign line endings.
  if (text.find_first_of("\t\r\n") != std::string::npos)
    throw ParseError("merge table line " + std::to_string(line_no) +
                     ": control character in token");
  return Token(std::move(text), final_);
}

}  // namespace

void MergeTable::add(Token left, Token right) {
  if (left.text.empty() || right.text.empty())
    throw InvalidInputError("merge rule members must be non-empty");
  if (left.word_final)
    throw InvalidInputError("left member of a merge rule cannot be word-final: " +
                            left.rendered());
  TokenPair key(left, right);
  if (lookup_.count(key))
    throw InvalidInputError("duplicate merge pair: " + left.rendered() + " " +
                            right.rendered());
  const auto priority = static_cast<std::uint32_t>(rules_.size());
  lookup_.emplace(std::move(key), priority);
  rules_.push_back(MergeRule{std::move(left), std::move(right), priority});
}

void MergeTable::save(std::ostream& os) const {
  os << kMergeFileHeader << '\n';
  for (const MergeRule& r : rules_)
    os << r.left.rendered() << ' ' << r.right.rendered() << '\n';
}

MergeTable MergeTable::load(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMergeFileHeader)
    throw ParseError("merge table: missing or unrecognized header (expected \"" +
                     std::string(kMergeFileHeader) + "\")");
  MergeTable table;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty())
      throw ParseError("merge table line " + std::to_string(line_no) +
                       ": empty line");
    const auto sep = line.find(' ');
    if (sep == std::string::npos || line.find(' ', sep + 1) != std::string::npos)
      throw ParseError("merge table line " + std::to_string(line_no) +
                       ": expected exactly two space-separated tokens");
    Token left = parse_token(line.substr(0, sep), line_no);
    Token right = parse_token(line.substr(sep + 1), line_no);
    try {
      table.add(std::move(left), std::move(right));
    } catch (const InvalidInputError& e) {
      throw ParseError("merge table line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return table;
}

bool operator==(const MergeTable& a, const MergeTable& b) {
  if (a.rules_.size() != b.rules_.size()) return false;
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    if (a.rules_[i].left != b.rules_[i].left ||
        a.rules_[i].right != b.rules_[i].right)
      return false;
  }
  return true;
}

}  // namespace subseg
