#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace subseg::detail {

// Applies fn(global_line_index, line) to every line and writes the results
// in input order, one per line. With threads > 1 a batch of lines is split
// across workers by stride; since fn must be pure given its arguments,
// output does not depend on the thread count. Throws Error on stream
// failures, with line context for reads.
void transform_lines(
    std::istream& in, std::ostream& out, int threads,
    const std::function<std::string(std::uint64_t, const std::string&)>& fn);

// Same over lines already in memory.
void transform_lines(
    const std::vector<std::string>& lines, std::ostream& out, int threads,
    const std::function<std::string(std::uint64_t, const std::string&)>& fn);

// Word boundaries of a line: [begin, end) byte ranges of the maximal
// non-whitespace runs.
struct WordRef {
  std::size_t begin;
  std::size_t end;
};

std::vector<WordRef> scan_words(std::string_view line);

}  // namespace subseg::detail
