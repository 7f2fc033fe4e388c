#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "specseg/metrics.hpp"
#include "specseg/pipeline.hpp"
#include "specseg/segmentation.hpp"
#include "specseg/text_prep.hpp"

namespace specseg {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

WordSet load_stopwords(const std::filesystem::path& path);

// One "start end" line per segment, inclusive 0-based sentence indices.
// Blank lines and '#' comments are skipped.
Segmentation parse_reference_segmentation(std::string_view text);
std::string format_reference_segmentation(const Segmentation& segmentation);

// Every regular file in the directory (sorted by name) is one document.
ReferenceCorpus load_corpus_directory(const std::filesystem::path& dir);

// Rounds to 9 significant digits so the JSON text is stable.
double round_significant(double value, int digits = 9);

struct ResultJsonOptions {
  std::string document_path;
  std::size_t top_words = 10;  // 0 keeps every word
  bool include_timing = false;
};

// Keys: "document", "parameters", "segments", "topics" and, when requested,
// "timing_ms". Object keys are emitted sorted.
nlohmann::json result_to_json(const AnalysisResult& result, const ResultJsonOptions& options);
std::string dump_json(const nlohmann::json& j);

// What evaluate needs back from an analyze result file.
struct StoredResult {
  std::vector<std::vector<std::string>> topics;
  Segmentation segments;
  std::string document_path;
};
StoredResult parse_result_json(const nlohmann::json& j);

nlohmann::json evaluation_to_json(const EvaluationReport& report);

}  // namespace specseg
