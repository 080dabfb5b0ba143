#include "line_pipeline.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <thread>

#include "subseg/error.hpp"

namespace subseg::detail {

namespace {

constexpr std::size_t kBatchLines = 4096;

bool is_blank(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

[[noreturn]] void rethrow_with_line(std::uint64_t line_index,
                                    const std::exception& e) {
  const std::string msg =
      "line " + std::to_string(line_index + 1) + ": " + e.what();
  if (dynamic_cast<const ParseError*>(&e)) throw ParseError(msg);
  if (dynamic_cast<const InvalidInputError*>(&e))
    throw InvalidInputError(msg);
  throw Error(msg);
}

}  // namespace

std::vector<WordRef> scan_words(std::string_view line) {
  std::vector<WordRef> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > start) words.push_back(WordRef{start, i});
  }
  return words;
}

namespace {

void process_batch(
    const std::vector<std::string>& batch, std::uint64_t base_index,
    std::vector<std::string>& results, int threads,
    const std::function<std::string(std::uint64_t, const std::string&)>& fn) {
  results.assign(batch.size(), {});
  if (threads == 1 || batch.size() == 1) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      try {
        results[i] = fn(base_index + i, batch[i]);
      } catch (const std::exception& e) {
        rethrow_with_line(base_index + i, e);
      }
    }
    return;
  }
  const int workers =
      static_cast<int>(std::min<std::size_t>(threads, batch.size()));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::uint64_t> error_lines(
      workers, std::numeric_limits<std::uint64_t>::max());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < batch.size(); i += workers) {
        try {
          results[i] = fn(base_index + i, batch[i]);
        } catch (...) {
          errors[t] = std::current_exception();
          error_lines[t] = base_index + i;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  // Surface the failure with the smallest line number so diagnostics do not
  // depend on scheduling.
  int first = -1;
  for (int t = 0; t < workers; ++t)
    if (errors[t] && (first < 0 || error_lines[t] < error_lines[first]))
      first = t;
  if (first >= 0) {
    try {
      std::rethrow_exception(errors[first]);
    } catch (const std::exception& e) {
      rethrow_with_line(error_lines[first], e);
    }
  }
}

}  // namespace

void transform_lines(
    std::istream& in, std::ostream& out, int threads,
    const std::function<std::string(std::uint64_t, const std::string&)>& fn) {
  if (threads < 1) threads = 1;
  std::uint64_t next_index = 0;
  std::vector<std::string> batch;
  std::vector<std::string> results;
  batch.reserve(kBatchLines);

  std::string line;
  bool eof = false;
  while (!eof) {
    batch.clear();
    while (batch.size() < kBatchLines) {
      if (!std::getline(in, line)) {
        eof = true;
        break;
      }
      batch.push_back(line);
    }
    if (in.bad())
      throw Error("read failure near line " +
                  std::to_string(next_index + batch.size() + 1));
    if (batch.empty()) break;

    process_batch(batch, next_index, results, threads, fn);

    for (const std::string& r : results) out << r << '\n';
    if (!out)
      throw Error("write failure near line " + std::to_string(next_index + 1));
    next_index += batch.size();
  }
}

void transform_lines(
    const std::vector<std::string>& lines, std::ostream& out, int threads,
    const std::function<std::string(std::uint64_t, const std::string&)>& fn) {
  if (threads < 1) threads = 1;
  std::vector<std::string> results;
  process_batch(lines, 0, results, threads, fn);
  for (const std::string& r : results) out << r << '\n';
  if (!out) throw Error("write failure");
}

}  // namespace subseg::detail
