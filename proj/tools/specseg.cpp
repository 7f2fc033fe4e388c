#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specseg/error.hpp"
#include "specseg/io.hpp"
#include "specseg/pipeline.hpp"
#include "specseg/scbm.hpp"

namespace fs = std::filesystem;
using specseg::Error;
using specseg::ErrorCode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct AnalyzeArgs {
  std::vector<std::string> files;
  std::size_t k = 0;
  double lambda = 1.0;
  std::size_t window = 5;
  double decay = 0.7;
  std::optional<double> tau_p;
  std::optional<double> tau_o;
  std::uint64_t seed = 0;
  std::string stopwords;
  std::string json;
  bool timing = false;
  std::size_t top = 10;
  unsigned jobs = 1;
};

struct EvaluateArgs {
  std::string result;
  std::string reference;
  std::string corpus;
  std::string document;
  std::string json;
  std::size_t top_k = 10;
  bool sentence_units = false;
  std::optional<std::size_t> window;
};

struct SynthArgs {
  std::size_t m = 200;
  std::size_t n = 500;
  std::size_t blocks = 4;
  double p_in = 0.2;
  double p_out = 0.02;
  std::uint64_t seed = 0;
  bool no_edges = false;
  std::string json;
};

int exit_code_for(const Error& e) { return specseg::is_numerical(e.code()) ? kExitNumerical : kExitInput; }

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    specseg::write_file(path, text);
  }
}

std::string analyze_one(const AnalyzeArgs& args, const std::string& file,
                        const std::optional<specseg::WordSet>& stopwords) {
  specseg::AnalysisOptions options;
  options.k = args.k;
  options.lambda = args.lambda;
  options.window = args.window;
  options.decay = args.decay;
  options.tau_p = args.tau_p;
  options.tau_o = args.tau_o;
  options.seed = args.seed;
  options.stopwords = stopwords;
  const specseg::AnalysisResult result = specseg::analyze(specseg::read_file(file), options);

  specseg::ResultJsonOptions json_options;
  json_options.document_path = file;
  json_options.top_words = args.top;
  json_options.include_timing = args.timing;
  return specseg::dump_json(specseg::result_to_json(result, json_options));
}

int run_analyze(const AnalyzeArgs& args) {
  std::optional<specseg::WordSet> stopwords;
  if (!args.stopwords.empty()) stopwords = specseg::load_stopwords(args.stopwords);

  if (args.files.size() == 1) {
    emit(args.json, analyze_one(args, args.files.front(), stopwords));
    return kExitOk;
  }

  // Several documents: --json names an output directory, one <stem>.json per input.
  if (!args.json.empty()) fs::create_directories(args.json);
  std::vector<std::string> outputs(args.files.size());
  std::vector<std::optional<Error>> errors(args.files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < args.files.size(); i = next++) {
      try {
        outputs[i] = analyze_one(args, args.files[i], stopwords);
        if (!args.json.empty()) {
          specseg::write_file(fs::path(args.json) / (fs::path(args.files[i]).stem().string() + ".json"), outputs[i]);
        }
      } catch (const Error& e) {
        errors[i] = e;
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(args.jobs, static_cast<unsigned>(args.files.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  int status = kExitOk;
  for (std::size_t i = 0; i < args.files.size(); ++i) {
    if (errors[i]) {
      std::cerr << args.files[i] << ": " << errors[i]->what() << "\n";
      status = std::max(status, exit_code_for(*errors[i]));
    } else if (args.json.empty()) {
      std::cout << outputs[i];
    }
  }
  return status;
}

int run_evaluate(const EvaluateArgs& args) {
  nlohmann::json stored_json;
  try {
    stored_json = nlohmann::json::parse(specseg::read_file(args.result));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, args.result + ": " + e.what());
  }
  const specseg::StoredResult stored = specseg::parse_result_json(stored_json);
  const std::string document = args.document.empty() ? stored.document_path : args.document;
  if (document.empty()) throw Error(ErrorCode::InvalidArgument, "result has no document path; pass --document");

  const auto sentence_tokens = specseg::document_tokens(specseg::read_file(document));
  const specseg::Segmentation reference =
      specseg::parse_reference_segmentation(specseg::read_file(args.reference));

  specseg::EvaluationOptions options;
  options.top_k = args.top_k;
  options.sentence_units = args.sentence_units;
  options.window = args.window;
  if (!args.corpus.empty()) options.corpus = specseg::load_corpus_directory(args.corpus);

  const specseg::EvaluationReport report =
      specseg::evaluate(stored.topics, stored.segments, reference, sentence_tokens, options);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  emit(args.json, specseg::dump_json(specseg::evaluation_to_json(report)));
  return kExitOk;
}

int run_synth(const SynthArgs& args) {
  if (args.blocks == 0) throw Error(ErrorCode::InvalidArgument, "--blocks must be at least 1");
  const specseg::ScbmSpec spec = specseg::ScbmSpec::planted(args.m, args.n, args.blocks, args.p_in, args.p_out, args.seed);
  const specseg::ScbmInstance instance = specseg::generate(spec);
  const specseg::ScbmRecovery recovery = specseg::recover_blocks(instance, args.blocks, args.seed);

  nlohmann::json j;
  j["spec"] = {{"m", args.m}, {"n", args.n}, {"blocks", args.blocks}, {"p_in", args.p_in},
               {"p_out", args.p_out}, {"seed", args.seed}};
  j["left_labels"] = instance.left_labels;
  j["right_labels"] = instance.right_labels;
  j["edge_count"] = instance.adjacency.non_zeros();
  if (!args.no_edges) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& t : instance.adjacency.triplets()) edges.push_back({t.row, t.col});
    j["edges"] = std::move(edges);
  }
  std::vector<double> sv;
  for (double s : recovery.singular_values) sv.push_back(specseg::round_significant(s));
  j["recovery"] = {{"word", specseg::round_significant(recovery.word_recovery)},
                   {"sentence", specseg::round_significant(recovery.sentence_recovery)},
                   {"singular_values", sv},
                   {"largest_gap_after", recovery.largest_gap_after},
                   {"word_labels", recovery.word_labels},
                   {"sentence_labels", recovery.sentence_labels}};
  emit(args.json, specseg::dump_json(j));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint topic extraction and text segmentation by spectral biclustering"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Extract k topics and k segments from a document");
  analyze->add_option("file", analyze_args.files, "Plain-text document(s)")->required()->check(CLI::ExistingFile);
  analyze->add_option("-k,--segments", analyze_args.k, "Number of topics and segments")->required();
  analyze->add_option("--lambda", analyze_args.lambda, "Noun/verb award")->capture_default_str();
  analyze->add_option("--window", analyze_args.window, "Bonding window")->capture_default_str();
  analyze->add_option("--decay", analyze_args.decay, "Bonding decay")->capture_default_str();
  analyze->add_option("--tau-p", analyze_args.tau_p, "Word degree regularizer (default: average word degree)");
  analyze->add_option("--tau-o", analyze_args.tau_o, "Sentence degree regularizer (default: average sentence degree)");
  analyze->add_option("--seed", analyze_args.seed, "Random seed")->capture_default_str();
  analyze->add_option("--stopwords", analyze_args.stopwords, "Stopword file, one word per line")
      ->check(CLI::ExistingFile);
  analyze->add_option("--json", analyze_args.json, "Output file (a directory with several inputs)");
  analyze->add_flag("--timing", analyze_args.timing, "Include per-stage timings");
  analyze->add_option("--top", analyze_args.top, "Words listed per topic (0: all)")->capture_default_str();
  analyze->add_option("-j,--jobs", analyze_args.jobs, "Documents processed concurrently")->capture_default_str();

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score an analyze result");
  evaluate->add_option("result", evaluate_args.result, "Result JSON from analyze")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--reference", evaluate_args.reference, "Reference segmentation file")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--corpus", evaluate_args.corpus, "Directory of documents for PMI")
      ->check(CLI::ExistingDirectory);
  evaluate->add_option("--document", evaluate_args.document, "Source document (default: path stored in the result)");
  evaluate->add_option("--top-k", evaluate_args.top_k, "Topic words used by the coherence scores")->capture_default_str();
  evaluate->add_flag("--sentence-units", evaluate_args.sentence_units, "Pk and WindowDiff over sentences");
  evaluate->add_option("--pk-window", evaluate_args.window, "Pk/WindowDiff window (default: half mean segment - 1)");
  evaluate->add_option("--json", evaluate_args.json, "Output file");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Generate a planted co-block graph and recover its blocks");
  synth->add_option("--m", synth_args.m, "Sentence nodes")->capture_default_str();
  synth->add_option("--n", synth_args.n, "Word nodes")->capture_default_str();
  synth->add_option("--blocks", synth_args.blocks, "Blocks per side")->capture_default_str();
  synth->add_option("--p-in", synth_args.p_in, "Within-block edge probability")->capture_default_str();
  synth->add_option("--p-out", synth_args.p_out, "Across-block edge probability")->capture_default_str();
  synth->add_option("--seed", synth_args.seed, "Random seed")->capture_default_str();
  synth->add_flag("--no-edges", synth_args.no_edges, "Omit the edge list");
  synth->add_option("--json", synth_args.json, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(analyze_args);
    if (*evaluate) return run_evaluate(evaluate_args);
    return run_synth(synth_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
