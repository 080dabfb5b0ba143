// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured values it rests on; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subseg/analysis.hpp"
#include "subseg/corpus.hpp"
#include "subseg/dropout.hpp"
#include "subseg/merge_table.hpp"
#include "subseg/noise.hpp"
#include "subseg/segmenter.hpp"
#include "subseg/trainer.hpp"
#include "support/build.hpp"
#include "support/cli_runner.hpp"
#include "support/corpus_gen.hpp"
#include "support/oracles.hpp"

using namespace subseg;
using namespace subseg::test;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& info) {
    if (!detail.empty()) detail += "; ";
    detail += info;
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Shared corpora. The "plain" corpus is English-like running text; the
// "compound" corpus is flat-frequency, morphology-dense English used where
// a type-rich vocabulary is required.
const CorpusGenOptions kPlainCorpus = [] {
  CorpusGenOptions gen;
  gen.lines = 20000;
  gen.seed = 1;
  return gen;
}();

const CorpusGenOptions kCompoundCorpus = [] {
  CorpusGenOptions gen;
  gen.lines = 12000;
  gen.seed = 1;
  gen.zipf_exponent = 0.0;
  gen.suffix_prob = 0.55;
  gen.prefix_prob = 0.25;
  gen.compound_prob = 0.45;
  return gen;
}();

WordCounts counts_of_lines(const std::vector<std::string>& lines) {
  std::string joined;
  for (const auto& l : lines) {
    joined += l;
    joined += '\n';
  }
  std::istringstream stream(joined);
  return count_words(stream);
}

// ---------------------------------------------------------------------------

Check criterion_equivalence_oracle() {
  Check check;
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  const std::vector<std::string> words = all_words_up_to(alphabet, 6);
  RandomStream table_rng(101);
  std::size_t comparisons = 0;
  for (int t = 0; t < 20 && check.ok; ++t) {
    const MergeTable table = random_table(table_rng, 10, alphabet);
    for (std::size_t w = 0; w < words.size(); ++w) {
      const std::string& word = words[w];
      const std::string det = rendered(segment_word(word, table));
      const std::string ref = rendered(reference_segment(word, table));
      DropoutConfig cfg;
      cfg.p = 0.0;
      RandomStream rng(word_stream_seed(202, t, w));
      const std::string drop =
          rendered(segment_word_dropout(word, table, cfg, rng));
      ++comparisons;
      if (det != ref || det != drop) {
        check.fail("mismatch on \"" + word + "\" (table " + std::to_string(t) +
                   "): det=" + det + " ref=" + ref + " p0=" + drop);
        break;
      }
    }
  }
  check.note(std::to_string(words.size()) + " words x 20 tables, " +
             std::to_string(comparisons) + " three-way comparisons");
  return check;
}

Check criterion_character_limit() {
  Check check;
  RandomStream word_rng(55);
  RandomStream table_rng(56);
  const std::vector<std::string> small_alpha = {"a", "b", "ä", "世",
                                                "\U0001F600"};
  const MergeTable dense_table = random_table(table_rng, 12, small_alpha);
  const MergeTable ascii_table = random_table(table_rng, 10, {"a", "b", "c"});
  DropoutConfig cfg;
  cfg.p = 1.0;
  for (int i = 0; i < 10000 && check.ok; ++i) {
    std::string word;
    const MergeTable* table = nullptr;
    if (i % 2 == 0) {
      word = random_unicode_word(word_rng);
      table = &ascii_table;
    } else {
      const std::size_t len = 1 + word_rng.uniform_below(10);
      for (std::size_t k = 0; k < len; ++k)
        word += small_alpha[word_rng.uniform_below(small_alpha.size())];
      table = &dense_table;
    }
    RandomStream rng(word_stream_seed(77, i, 0));
    if (rendered(segment_word_dropout(word, *table, cfg, rng)) !=
        rendered(initial_split(word)))
      check.fail("p=1 output differs from the character split on \"" + word +
                 "\"");
  }
  check.note("10000 words, p=1 equals the character split");
  return check;
}

Check criterion_exit_probability() {
  Check check;
  struct Case {
    std::string word;
    MergeTable table;
    int k;
  };
  std::vector<Case> cases;
  cases.push_back({"ab", table_of({{"a", "b</w>"}}), 1});
  cases.push_back({"merger", table_of({{"e", "r"}, {"e", "r</w>"}}), 2});
  cases.push_back({"abcd", table_of({{"a", "b"}, {"b", "c"}, {"c", "d</w>"}}), 3});

  const int trials = 100000;
  for (const Case& c : cases) {
    const std::string char_form = rendered(initial_split(c.word));
    for (double p : {0.1, 0.5}) {
      DropoutConfig cfg;
      cfg.p = p;
      int exits = 0;
      for (int i = 0; i < trials; ++i) {
        RandomStream rng(word_stream_seed(140 + c.k, i, 0));
        if (rendered(segment_word_dropout(c.word, c.table, cfg, rng)) ==
            char_form)
          ++exits;
      }
      const double expected = std::pow(p, c.k);
      const double freq = exits / static_cast<double>(trials);
      const double bound =
          3 * std::sqrt(expected * (1 - expected) / trials);
      if (std::abs(freq - expected) > bound)
        check.fail("k=" + std::to_string(c.k) + " p=" + fmt(p, 1) +
                   ": observed " + fmt(freq) + " expected " + fmt(expected) +
                   " +/- " + fmt(bound));
      else if (c.k == 2 && p == 0.5)
        check.note("merger @ p=0.5: " + fmt(freq) + " vs 0.25 +/- " +
                   fmt(bound));
    }
  }
  check.note("100k trials per (k, p), 3-sigma binomial bounds");
  return check;
}

Check criterion_length_ratio() {
  Check check;
  const auto lines = generate_english_corpus(kPlainCorpus);
  const std::uint64_t tokens = count_corpus_tokens(lines);
  if (tokens < 200000)
    check.fail("corpus too small: " + std::to_string(tokens) + " tokens");

  const TrainResult trained = train_bpe(counts_of_lines(lines), 4000);
  const double at_p01 =
      expected_length_ratio(lines, trained.table, 0.1, 2, 42);
  if (!(at_p01 >= 1.10 && at_p01 <= 1.40))
    check.fail("ratio(p=0.1) = " + fmt(at_p01) + " outside [1.10, 1.40]");
  else
    check.note(std::to_string(tokens) + " tokens, ratio(p=0.1) = " +
               fmt(at_p01));

  double previous = 0.0;
  std::string grid;
  for (double p : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double r = expected_length_ratio(lines, trained.table, p, 1, 42);
    if (r + 0.01 < previous)
      check.fail("ratio not non-decreasing at p=" + fmt(p, 1) + ": " + fmt(r) +
                 " < " + fmt(previous));
    previous = r;
    if (!grid.empty()) grid += " ";
    grid += fmt(r, 3);
  }
  check.note("grid " + grid);
  return check;
}

Check criterion_unk_ordering() {
  Check check;
  const auto train_lines = generate_english_corpus(kPlainCorpus);
  const WordCounts counts = counts_of_lines(train_lines);
  const TrainResult small = train_bpe(counts, 4000);
  const TrainResult large =
      train_bpe(counts, merges_for_vocab_size(counts, 32000));

  CorpusGenOptions heldout = kPlainCorpus;
  heldout.seed = 777;
  heldout.lines = 4000;
  heldout.rare_word_rate = 0.001;
  const auto eval_lines = generate_english_corpus(heldout);

  AnalysisOptions options;
  options.dropout.p = 0.1;
  options.dropout.base_seed = 5;
  options.dropout.samples = 2;
  const double unk_small = unk_rate(eval_lines, small.table, small.vocab, options);
  const double unk_large = unk_rate(eval_lines, large.table, large.vocab, options);

  check.note("unk(vocab " + std::to_string(small.vocab.size()) + ") = " +
             fmt(unk_small, 6) + ", unk(vocab " +
             std::to_string(large.vocab.size()) + ") = " + fmt(unk_large, 6));
  if (!(unk_small < unk_large))
    check.fail("expected the smaller vocabulary to give the lower rate");
  if (!(unk_small < 0.01 && unk_large < 0.01))
    check.fail("rates exceed 0.01");
  return check;
}

Check criterion_ratio_shift() {
  Check check;
  const auto lines = generate_english_corpus(kCompoundCorpus);
  const TrainResult trained = train_bpe(counts_of_lines(lines), 16000);

  AnalysisOptions base_options;
  base_options.dropout.p = 0.0;
  AnalysisOptions drop_options;
  drop_options.dropout.p = 0.1;
  drop_options.dropout.base_seed = 9;

  const auto base =
      token_to_substring_ratios(lines, trained.table, trained.vocab, base_options);
  const auto dropped =
      token_to_substring_ratios(lines, trained.table, trained.vocab, drop_options);
  if (base.size() != dropped.size()) {
    check.fail("top-decile sets differ in size");
    return check;
  }
  double mean_base = 0.0, mean_dropped = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].token != dropped[i].token) {
      check.fail("top-decile sets differ in membership");
      return check;
    }
    mean_base += base[i].ratio;
    mean_dropped += dropped[i].ratio;
  }
  mean_base /= static_cast<double>(base.size());
  mean_dropped /= static_cast<double>(base.size());

  check.note("decile of " + std::to_string(base.size()) + " tokens, mean " +
             fmt(mean_base) + " -> " + fmt(mean_dropped) + " (x" +
             fmt(mean_dropped / mean_base, 3) + ")");
  if (!(mean_dropped > mean_base)) check.fail("no upward shift");
  if (!(mean_dropped >= 1.5 * mean_base))
    check.fail("shift below the 1.5x bar");
  return check;
}

Check criterion_noise_model() {
  Check check;
  CorpusGenOptions gen = kPlainCorpus;
  gen.lines = 8000;
  gen.seed = 71;
  const auto lines = generate_english_corpus(gen);

  NoiseConfig cfg;
  cfg.word_prob = 0.1;
  cfg.seed = 11;
  std::ostringstream out;
  augment_corpus(lines, out, cfg, 2);
  std::istringstream augmented(out.str());

  std::uint64_t total = 0, modified = 0, distance_errors = 0;
  std::string line;
  for (const auto& original : lines) {
    if (!std::getline(augmented, line)) {
      check.fail("augmented corpus lost lines");
      return check;
    }
    std::istringstream before(original), after(line);
    std::string b, a;
    while (before >> b) {
      if (!(after >> a)) {
        check.fail("word count changed on a line");
        return check;
      }
      ++total;
      if (b != a) {
        ++modified;
        if (levenshtein(b, a) != 1) ++distance_errors;
      }
    }
    if (after >> a) {
      check.fail("word count changed on a line");
      return check;
    }
  }
  if (total < 100000)
    check.fail("only " + std::to_string(total) + " words, need >= 100k");
  const double freq = modified / static_cast<double>(total);
  const double bound = 3 * std::sqrt(0.1 * 0.9 / static_cast<double>(total));
  check.note(std::to_string(total) + " words, modified fraction " +
             fmt(freq, 5) + " vs 0.1 +/- " + fmt(bound, 5));
  if (std::abs(freq - 0.1) > bound) check.fail("fraction outside 3 sigma");
  if (distance_errors != 0)
    check.fail(std::to_string(distance_errors) +
               " modified words not at edit distance 1");
  return check;
}

Check criterion_determinism_round_trips() {
  Check check;
  TempDir dir;
  CorpusGenOptions gen = kPlainCorpus;
  gen.lines = 10000;
  gen.seed = 81;
  const auto lines = generate_english_corpus(gen);
  std::string text;
  for (const auto& l : lines) text += l + '\n';
  const auto corpus_path = (dir.path() / "corpus.txt").string();
  write_file(corpus_path, text);

  const TrainResult trained = train_bpe(counts_of_lines(lines), 2000);
  const auto merges_path = (dir.path() / "m.txt").string();
  {
    std::ofstream m(merges_path, std::ios::binary);
    trained.table.save(m);
  }

  // Merge-table file round trip, object and bytes.
  {
    std::ifstream in(merges_path);
    const MergeTable loaded = MergeTable::load(in);
    if (!(loaded == trained.table))
      check.fail("merge table does not round-trip through its file format");
    std::ostringstream rewritten;
    loaded.save(rewritten);
    if (rewritten.str() != read_file(merges_path))
      check.fail("merge table bytes change across save/load/save");
  }

  const std::string encode =
      "encode --merges " + merges_path + " --dropout 0.1 --seed 42";
  const auto one = run_cli(encode + " --threads 1", dir.path(), corpus_path);
  const auto eight = run_cli(encode + " --threads 8", dir.path(), corpus_path);
  const auto eight_again =
      run_cli(encode + " --threads 8", dir.path(), corpus_path);
  if (one.exit_code != 0 || eight.exit_code != 0)
    check.fail("encode runs failed");
  else if (one.out != eight.out || eight.out != eight_again.out)
    check.fail("outputs differ across thread counts or repeats");
  else
    check.note("10k lines, dropout encode identical across 1/8 threads");

  const auto plain =
      run_cli("encode --merges " + merges_path, dir.path(), corpus_path);
  const auto encoded_path = (dir.path() / "encoded.txt").string();
  write_file(encoded_path, plain.out);
  const auto decoded = run_cli("encode --decode", dir.path(), encoded_path);
  if (decoded.out != text)
    check.fail("encode followed by decode is not byte-identical");
  else
    check.note("encode | decode restores the corpus byte-for-byte");
  return check;
}

Check criterion_training_oracle() {
  Check check;
  const WordCounts counts =
      counts_of({{"low", 5}, {"lower", 2}, {"newest", 6}, {"widest", 3}});

  // Hand count of adjacent pairs over the initial splits.
  std::map<std::pair<std::string, std::string>, std::uint64_t> weights;
  for (const auto& [word, count] : counts) {
    const Split split = char_split(word);
    for (std::size_t i = 0; i + 1 < split.size(); ++i)
      weights[{split[i].rendered(), split[i + 1].rendered()}] += count;
  }
  std::pair<std::string, std::string> best;
  std::uint64_t best_weight = 0;
  for (const auto& [pair, weight] : weights) {
    if (weight > best_weight) {
      best = pair;
      best_weight = weight;
    }
  }
  if (best != std::pair<std::string, std::string>{"e", "s"} || best_weight != 9)
    check.fail("hand count disagrees: best pair (" + best.first + ", " +
               best.second + ") weight " + std::to_string(best_weight));

  const TrainResult first = train_bpe(counts, 1);
  if (first.table.size() != 1 || first.table.rule(0).left.rendered() != "e" ||
      first.table.rule(0).right.rendered() != "s")
    check.fail("first learned merge is not (e, s)");
  else
    check.note("first merge (e, s), weighted count 9");

  const TrainResult full = train_bpe(counts, 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    const TrainResult partial = train_bpe(counts, k);
    const std::size_t expect = std::min<std::size_t>(k, full.table.size());
    if (partial.table.size() != expect) {
      check.fail("prefix property broken at k=" + std::to_string(k));
      break;
    }
    for (std::size_t i = 0; i < expect; ++i) {
      if (!(partial.table.rule(i).left == full.table.rule(i).left) ||
          !(partial.table.rule(i).right == full.table.rule(i).right)) {
        check.fail("prefix property broken at k=" + std::to_string(k));
        break;
      }
    }
  }
  check.note("prefix property holds for num_merges 1..10");
  return check;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int number;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "bpe-equivalence-oracle", criterion_equivalence_oracle},
      {2, "character-split-limit", criterion_character_limit},
      {3, "exit-probability-law", criterion_exit_probability},
      {4, "length-ratio-reproduction", criterion_length_ratio},
      {5, "unk-ordering", criterion_unk_ordering},
      {6, "ratio-shift-reproduction", criterion_ratio_shift},
      {7, "noise-model", criterion_noise_model},
      {8, "determinism-and-round-trips", criterion_determinism_round_trips},
      {9, "training-oracle", criterion_training_oracle},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (!selected.empty() && !selected.count(criterion.number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.run();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << criterion.number << " "
              << criterion.name << " (" << fmt(seconds, 1) << "s): "
              << check.detail << "\n";
    std::cout.flush();
    if (!check.ok) ++failures;
  }
  if (selected.empty()) {
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << "\n";
  }
  return failures;
}
