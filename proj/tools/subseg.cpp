// Command-line front end: BPE merge-table training, deterministic and
// stochastic segmentation, corpus statistics and misspelling augmentation,
// all line-oriented and seed-reproducible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subseg/analysis.hpp"
#include "subseg/corpus.hpp"
#include "subseg/dropout.hpp"
#include "subseg/error.hpp"
#include "subseg/merge_table.hpp"
#include "subseg/noise.hpp"
#include "subseg/segmenter.hpp"
#include "subseg/trainer.hpp"
#include "subseg/vocabulary.hpp"

namespace {

using subseg::MergeTable;
using subseg::Vocabulary;

struct CommandConfig {
  std::string input_path;   // empty means stdin
  std::string output_path;  // empty means stdout
  std::string merges_path;
  std::string vocab_path;
  std::string merges_out;
  std::string vocab_out;
  std::vector<std::string> dropout_raw;
  std::uint64_t seed = 0;
  std::uint32_t samples = 1;
  int threads = 1;
  std::uint64_t num_merges = 0;
  std::uint64_t vocab_size = 0;
  double word_prob = 0.1;
  double tolerance = 0.01;
  std::vector<std::string> calibrate_raw;
  bool decode = false;
  bool all_ratios = false;
};

// --dropout without a value selects the conventional training probability.
double dropout_value(const CommandConfig& cfg, CLI::Option* opt) {
  if (opt == nullptr || opt->count() == 0) return 0.0;
  if (cfg.dropout_raw.empty() || cfg.dropout_raw.front().empty()) return 0.1;
  double p = 0.0;
  try {
    p = std::stod(cfg.dropout_raw.front());
  } catch (const std::exception&) {
    throw CLI::ValidationError("--dropout",
                               "expected a probability in [0, 1]");
  }
  if (!(p >= 0.0 && p <= 1.0))
    throw CLI::ValidationError("--dropout",
                               "expected a probability in [0, 1]");
  return p;
}

std::ifstream open_input_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subseg::Error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output_file(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw subseg::Error("cannot open output file: " + path);
  return out;
}

std::istream& select_input(const CommandConfig& cfg,
                           std::optional<std::ifstream>& holder) {
  if (cfg.input_path.empty()) return std::cin;
  holder.emplace(open_input_file(cfg.input_path));
  return *holder;
}

std::ostream& select_output(const CommandConfig& cfg,
                            std::optional<std::ofstream>& holder) {
  if (cfg.output_path.empty()) return std::cout;
  holder.emplace(open_output_file(cfg.output_path));
  return *holder;
}

MergeTable load_merges(const std::string& path) {
  std::ifstream in = open_input_file(path);
  try {
    return MergeTable::load(in);
  } catch (const subseg::ParseError& e) {
    throw subseg::ParseError(path + ": " + e.what());
  }
}

Vocabulary load_vocab(const std::string& path) {
  std::ifstream in = open_input_file(path);
  try {
    return Vocabulary::load(in);
  } catch (const subseg::ParseError& e) {
    throw subseg::ParseError(path + ": " + e.what());
  }
}

std::vector<std::string> load_corpus(const CommandConfig& cfg) {
  std::optional<std::ifstream> holder;
  return subseg::read_lines(select_input(cfg, holder));
}

void add_io_options(CLI::App* cmd, CommandConfig& cfg) {
  cmd->add_option("--input", cfg.input_path,
                  "input file (standard input when omitted)");
  cmd->add_option("--output", cfg.output_path,
                  "output file (standard output when omitted)");
}

CLI::Option* add_dropout_options(CLI::App* cmd, CommandConfig& cfg) {
  auto* opt = cmd->add_option("--dropout", cfg.dropout_raw,
                              "merge dropout probability p; bare flag means 0.1")
                  ->expected(0, 1);
  cmd->add_option("--seed", cfg.seed, "base seed for all randomness");
  return opt;
}

void add_threads_option(CLI::App* cmd, CommandConfig& cfg) {
  cmd->add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::Range(1, 512));
}

int run_train(const CommandConfig& cfg, bool use_vocab_size) {
  std::optional<std::ifstream> holder;
  subseg::WordCounts counts = subseg::count_words(select_input(cfg, holder));

  std::size_t merges = cfg.num_merges;
  if (use_vocab_size)
    merges = subseg::merges_for_vocab_size(counts, cfg.vocab_size);

  subseg::TrainResult trained = subseg::train_bpe(counts, merges);

  {
    std::ofstream out = open_output_file(cfg.merges_out);
    trained.table.save(out);
    if (!out) throw subseg::Error("failed writing " + cfg.merges_out);
  }
  if (!cfg.vocab_out.empty()) {
    std::ofstream out = open_output_file(cfg.vocab_out);
    trained.vocab.save(out);
    if (!out) throw subseg::Error("failed writing " + cfg.vocab_out);
  }

  std::cerr << "subseg train: " << counts.size() << " distinct words, "
            << trained.table.size() << " merges learned, vocabulary size "
            << trained.vocab.size() << "\n";
  return 0;
}

int run_encode(const CommandConfig& cfg, double p) {
  std::optional<std::ifstream> in_holder;
  std::optional<std::ofstream> out_holder;
  std::istream& in = select_input(cfg, in_holder);
  std::ostream& out = select_output(cfg, out_holder);

  if (cfg.decode) {
    subseg::detokenize_stream(in, out);
    out.flush();
    return 0;
  }

  const MergeTable table = load_merges(cfg.merges_path);
  subseg::CorpusOptions options;
  options.dropout.p = p;
  options.dropout.base_seed = cfg.seed;
  options.threads = cfg.threads;
  subseg::segment_corpus(in, out, table, options);
  out.flush();
  return 0;
}

int run_sample(const CommandConfig& cfg, double p) {
  const MergeTable table = load_merges(cfg.merges_path);
  std::optional<std::ifstream> in_holder;
  std::optional<std::ofstream> out_holder;
  std::istream& in = select_input(cfg, in_holder);
  std::ostream& out = select_output(cfg, out_holder);

  subseg::DropoutConfig dropout;
  dropout.p = p;
  dropout.base_seed = cfg.seed;
  dropout.samples = cfg.samples;

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    if (line.find_first_of(" \t") != std::string::npos)
      throw subseg::InvalidInputError(
          "line " + std::to_string(line_no + 1) +
          ": expected one word per line for sampling");
    if (!line.empty()) {
      subseg::RandomStream rng(
          subseg::word_stream_seed(dropout.base_seed, line_no, 0));
      for (const auto& sampled :
           subseg::sample_segmentations(line, table, dropout, rng))
        out << line << '\t' << sampled.count << '\t'
            << subseg::render_split(sampled.split) << '\n';
    }
    ++line_no;
  }
  out.flush();
  return 0;
}

int run_analyze_ratios(const CommandConfig& cfg, double p) {
  const MergeTable table = load_merges(cfg.merges_path);
  const Vocabulary vocab = load_vocab(cfg.vocab_path);
  const std::vector<std::string> lines = load_corpus(cfg);

  subseg::AnalysisOptions options;
  options.dropout.p = p;
  options.dropout.base_seed = cfg.seed;
  options.dropout.samples = cfg.samples;
  options.threads = cfg.threads;

  const auto entries = subseg::token_to_substring_ratios(
      lines, table, vocab, options, cfg.all_ratios);
  std::optional<std::ofstream> out_holder;
  std::ostream& out = select_output(cfg, out_holder);
  subseg::write_ratios_tsv(out, entries);
  out.flush();
  return 0;
}

int run_analyze_lengths(const CommandConfig& cfg, double p, bool calibrate) {
  const MergeTable table = load_merges(cfg.merges_path);
  const std::vector<std::string> lines = load_corpus(cfg);
  std::optional<std::ofstream> out_holder;
  std::ostream& out = select_output(cfg, out_holder);

  if (calibrate) {
    double target = 0.0;
    try {
      target = std::stod(cfg.calibrate_raw.front());
    } catch (const std::exception&) {
      throw CLI::ValidationError("--calibrate", "expected a length ratio");
    }
    const subseg::CalibrationResult result = subseg::calibrate_p(
        lines, table, target, cfg.tolerance, cfg.samples, cfg.seed);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f", result.p,
                  result.achieved_ratio);
    out << buf << '\n';
    out.flush();
    return 0;
  }

  subseg::AnalysisOptions options;
  options.dropout.p = p;
  options.dropout.base_seed = cfg.seed;
  options.dropout.samples = cfg.samples;
  options.threads = cfg.threads;
  subseg::write_histogram_tsv(
      out, subseg::length_distribution(lines, table, options));
  out.flush();
  return 0;
}

int run_analyze_unk(const CommandConfig& cfg, double p) {
  const MergeTable table = load_merges(cfg.merges_path);
  const Vocabulary vocab = load_vocab(cfg.vocab_path);
  const std::vector<std::string> lines = load_corpus(cfg);

  subseg::AnalysisOptions options;
  options.dropout.p = p;
  options.dropout.base_seed = cfg.seed;
  options.dropout.samples = cfg.samples;
  options.threads = cfg.threads;

  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8f",
                subseg::unk_rate(lines, table, vocab, options));
  std::optional<std::ofstream> out_holder;
  std::ostream& out = select_output(cfg, out_holder);
  out << buf << '\n';
  out.flush();
  return 0;
}

int run_augment(const CommandConfig& cfg) {
  const std::vector<std::string> lines = load_corpus(cfg);
  std::optional<std::ofstream> out_holder;
  std::ostream& out = select_output(cfg, out_holder);

  subseg::NoiseConfig noise;
  noise.word_prob = cfg.word_prob;
  noise.seed = cfg.seed;
  subseg::augment_corpus(lines, out, noise, cfg.threads);
  out.flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);

  CLI::App app{"subword segmentation toolkit"};
  app.require_subcommand(1);
  CommandConfig cfg;

  // train
  auto* train = app.add_subcommand("train", "learn a merge table and vocabulary");
  train->add_option("--input", cfg.input_path,
                    "training corpus (standard input when omitted)");
  auto* opt_nm = train->add_option("--num-merges", cfg.num_merges,
                                   "number of merge rules to learn");
  auto* opt_vs = train->add_option("--vocab-size", cfg.vocab_size,
                                   "target vocabulary size (characters + merges + 1)");
  opt_nm->excludes(opt_vs);
  opt_vs->excludes(opt_nm);
  train->add_option("--merges-out", cfg.merges_out, "merge table output path")
      ->required();
  train->add_option("--vocab-out", cfg.vocab_out, "vocabulary output path");

  // encode
  auto* encode = app.add_subcommand(
      "encode", "segment a corpus (or reverse it with --decode)");
  add_io_options(encode, cfg);
  auto* encode_merges =
      encode->add_option("--merges", cfg.merges_path, "merge table path");
  auto* encode_dropout = add_dropout_options(encode, cfg);
  add_threads_option(encode, cfg);
  auto* decode_flag = encode->add_flag(
      "--decode", cfg.decode, "undo segmentation rendering instead of encoding");
  decode_flag->excludes(encode_merges);
  decode_flag->excludes(encode_dropout);

  // sample
  auto* sample = app.add_subcommand(
      "sample", "draw stochastic segmentations of one word per input line");
  add_io_options(sample, cfg);
  sample->add_option("--merges", cfg.merges_path, "merge table path")
      ->required();
  auto* sample_dropout = add_dropout_options(sample, cfg);
  sample->add_option("--samples", cfg.samples, "draws per word")
      ->check(CLI::Range(1u, 100000000u));

  // analyze
  auto* analyze =
      app.add_subcommand("analyze", "corpus statistics of a segmentation");
  analyze->require_subcommand(1);

  auto* ratios = analyze->add_subcommand(
      "ratios", "token-to-substring frequency ratios (TSV)");
  add_io_options(ratios, cfg);
  ratios->add_option("--merges", cfg.merges_path, "merge table path")
      ->required();
  ratios->add_option("--vocab", cfg.vocab_path, "vocabulary path")->required();
  auto* ratios_dropout = add_dropout_options(ratios, cfg);
  add_threads_option(ratios, cfg);
  ratios->add_flag("--all", cfg.all_ratios,
                   "report every token, not only the top substring decile");

  auto* lengths = analyze->add_subcommand(
      "lengths", "tokens-per-line histogram (TSV), or dropout calibration");
  add_io_options(lengths, cfg);
  lengths->add_option("--merges", cfg.merges_path, "merge table path")
      ->required();
  auto* lengths_dropout = add_dropout_options(lengths, cfg);
  lengths->add_option("--samples", cfg.samples, "estimator passes")
      ->check(CLI::Range(1u, 1000000u));
  add_threads_option(lengths, cfg);
  auto* calibrate_opt =
      lengths
          ->add_option("--calibrate", cfg.calibrate_raw,
                       "find p whose expected length ratio matches this target")
          ->expected(1);
  lengths->add_option("--tolerance", cfg.tolerance,
                      "calibration tolerance on the achieved ratio");

  auto* unk = analyze->add_subcommand("unk", "fraction of tokens mapping to UNK");
  add_io_options(unk, cfg);
  unk->add_option("--merges", cfg.merges_path, "merge table path")->required();
  unk->add_option("--vocab", cfg.vocab_path, "vocabulary path")->required();
  auto* unk_dropout = add_dropout_options(unk, cfg);
  unk->add_option("--samples", cfg.samples, "estimator passes")
      ->check(CLI::Range(1u, 1000000u));
  add_threads_option(unk, cfg);

  // augment
  auto* augment = app.add_subcommand(
      "augment", "inject edit-distance-1 misspellings into a corpus");
  add_io_options(augment, cfg);
  augment->add_option("--word-prob", cfg.word_prob,
                      "probability of perturbing each word")
      ->check(CLI::Range(0.0, 1.0));
  augment->add_option("--seed", cfg.seed, "base seed for all randomness");
  add_threads_option(augment, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (train->parsed()) {
      if ((opt_nm->count() == 0) == (opt_vs->count() == 0))
        throw subseg::ConfigError(
            "train requires exactly one of --num-merges / --vocab-size");
      return run_train(cfg, opt_vs->count() > 0);
    }
    if (encode->parsed()) {
      if (!cfg.decode && encode_merges->count() == 0)
        throw subseg::ConfigError("encode requires --merges");
      return run_encode(cfg, dropout_value(cfg, encode_dropout));
    }
    if (sample->parsed())
      return run_sample(cfg, dropout_value(cfg, sample_dropout));
    if (ratios->parsed())
      return run_analyze_ratios(cfg, dropout_value(cfg, ratios_dropout));
    if (lengths->parsed())
      return run_analyze_lengths(cfg, dropout_value(cfg, lengths_dropout),
                                 calibrate_opt->count() > 0);
    if (unk->parsed())
      return run_analyze_unk(cfg, dropout_value(cfg, unk_dropout));
    if (augment->parsed()) return run_augment(cfg);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "subseg: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
