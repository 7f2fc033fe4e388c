#include "specseg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "specseg/error.hpp"

namespace specseg {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << contents;
}

WordSet load_stopwords(const std::filesystem::path& path) { return parse_word_list(read_file(path)); }

Segmentation parse_reference_segmentation(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; })) continue;
    std::istringstream fields(line);
    long long start = -1, end = -1;
    std::string extra;
    if (!(fields >> start >> end) || (fields >> extra) || start < 0 || end < start) {
      throw Error(ErrorCode::InvalidArgument, "reference line " + std::to_string(line_no) + ": expected 'start end'");
    }
    ranges.emplace_back(static_cast<std::size_t>(start), static_cast<std::size_t>(end));
  }
  return Segmentation::from_ranges(ranges);
}

std::string format_reference_segmentation(const Segmentation& segmentation) {
  std::string out;
  for (const auto& [start, end] : segmentation.ranges()) out += std::to_string(start) + " " + std::to_string(end) + "\n";
  return out;
}

ReferenceCorpus load_corpus_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<WordSet> docs;
  for (const auto& f : files) {
    const std::vector<std::string> tokens = tokenize(read_file(f));
    docs.emplace_back(tokens.begin(), tokens.end());
  }
  if (docs.empty()) throw Error(ErrorCode::IoError, dir.string() + " contains no documents");
  return ReferenceCorpus(std::move(docs));
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round_significant(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(round_significant(*v)) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json result_to_json(const AnalysisResult& result, const ResultJsonOptions& options) {
  nlohmann::json j;
  j["document"] = {{"path", options.document_path},
                   {"sentences", result.sentence_tokens.size()},
                   {"matrix_rows", result.matrix_rows.size()},
                   {"vocabulary", result.vocabulary_size}};

  const ResolvedParameters& p = result.parameters;
  j["parameters"] = {{"k", p.k},
                     {"lambda", round_significant(p.lambda)},
                     {"window", p.window},
                     {"decay", round_significant(p.decay)},
                     {"tau_p", round_significant(p.tau_p)},
                     {"tau_o", round_significant(p.tau_o)},
                     {"seed", p.seed}};

  nlohmann::json segments = nlohmann::json::array();
  for (const auto& [start, end] : result.segments.ranges()) segments.push_back({{"start", start}, {"end", end}});
  j["segments"] = std::move(segments);

  nlohmann::json topics = nlohmann::json::array();
  for (const auto& topic : result.topics.topics) {
    nlohmann::json words = nlohmann::json::array();
    const std::size_t take = options.top_words == 0 ? topic.size() : std::min(options.top_words, topic.size());
    for (std::size_t i = 0; i < take; ++i) {
      words.push_back({{"word", topic[i].word}, {"score", round_significant(topic[i].score)}});
    }
    topics.push_back(std::move(words));
  }
  j["topics"] = std::move(topics);

  if (options.include_timing) {
    nlohmann::json timing;
    for (const StageTiming& t : result.timing) timing[t.stage] = round_significant(t.milliseconds);
    timing["total"] = round_significant(result.total_milliseconds);
    j["timing_ms"] = std::move(timing);
  }
  return j;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

StoredResult parse_result_json(const nlohmann::json& j) {
  try {
    StoredResult r;
    for (const auto& topic : j.at("topics")) {
      std::vector<std::string> words;
      for (const auto& w : topic) words.push_back(w.at("word").get<std::string>());
      r.topics.push_back(std::move(words));
    }
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (const auto& s : j.at("segments")) {
      ranges.emplace_back(s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>());
    }
    r.segments = Segmentation::from_ranges(ranges);
    if (j.contains("document")) r.document_path = j.at("document").value("path", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed result JSON: ") + e.what());
  }
}

nlohmann::json evaluation_to_json(const EvaluationReport& report) {
  nlohmann::json j;
  nlohmann::json pmi = nlohmann::json::array();
  nlohmann::json umass = nlohmann::json::array();
  for (const auto& v : report.pmi) pmi.push_back(optional_json(v));
  for (const auto& v : report.umass) umass.push_back(optional_json(v));
  j["coherence"] = {{"pmi", pmi},
                    {"umass", umass},
                    {"mean_pmi", optional_json(report.mean_pmi)},
                    {"mean_umass", optional_json(report.mean_umass)},
                    {"pmi_corpus", report.external_corpus ? "external" : "document"}};
  j["diversity"] = {{"jaccard", matrix_json(report.jaccard)}, {"dice", matrix_json(report.dice)}};
  j["composite"] = {{"pmi_jaccard", optional_json(report.pmi_jaccard)},
                    {"pmi_dice", optional_json(report.pmi_dice)},
                    {"umass_jaccard", optional_json(report.umass_jaccard)},
                    {"umass_dice", optional_json(report.umass_dice)}};
  j["segmentation"] = {{"p_k", round_significant(report.segmentation.p_k)},
                       {"window_diff", round_significant(report.segmentation.window_diff)},
                       {"window", report.segmentation.window},
                       {"units", report.segmentation.units},
                       {"unit", report.sentence_units ? "sentence" : "word"}};
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace specseg
