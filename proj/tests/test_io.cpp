#include <doctest.h>

#include <filesystem>

#include "specseg/error.hpp"
#include "specseg/io.hpp"
#include "support.hpp"

using namespace specseg;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("specseg_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("reference segmentation format") {
  const Segmentation s = parse_reference_segmentation("# sample\n0 3\n4 4\n\n5 9  # last\n");
  CHECK(s.boundaries == std::vector<std::size_t>{3, 4});
  CHECK(s.sentence_count == 10);
  CHECK(format_reference_segmentation(s) == "0 3\n4 4\n5 9\n");
  CHECK(parse_reference_segmentation(format_reference_segmentation(s)) == s);

  CHECK_THROWS_AS(parse_reference_segmentation("0 3\n5 9\n"), Error);
  CHECK_THROWS_AS(parse_reference_segmentation("0\n"), Error);
  CHECK_THROWS_AS(parse_reference_segmentation("0 3 7\n"), Error);
  CHECK_THROWS_AS(parse_reference_segmentation("3 1\n"), Error);
  CHECK_THROWS_AS(parse_reference_segmentation("-1 2\n"), Error);
  CHECK_THROWS_AS(parse_reference_segmentation(""), Error);
}

TEST_CASE("significant-digit rounding") {
  CHECK(round_significant(0.1234567891234) == 0.123456789);
  CHECK(round_significant(123456789.87) == 123456790.0);
  CHECK(round_significant(0.0) == 0.0);
  CHECK(round_significant(-2.5) == -2.5);
}

TEST_CASE("file helpers") {
  const fs::path dir = scratch_dir("files");
  write_file(dir / "stop.txt", "Foo\n# note\nbar\n");
  CHECK(read_file(dir / "stop.txt") == "Foo\n# note\nbar\n");
  CHECK(load_stopwords(dir / "stop.txt") == WordSet{"foo", "bar"});
  try {
    read_file(dir / "missing.txt");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("corpus directory") {
  const fs::path dir = scratch_dir("corpus");
  write_file(dir / "b.txt", "Rivers and lakes.");
  write_file(dir / "a.txt", "Rivers, mountains!");
  const ReferenceCorpus c = load_corpus_directory(dir);
  CHECK(c.count() == 2);
  CHECK(c.document_frequency("rivers") == 2);
  CHECK(c.joint_frequency("rivers", "lakes") == 1);
  CHECK_THROWS_AS(load_corpus_directory(dir / "a.txt"), Error);
  CHECK_THROWS_AS(load_corpus_directory(scratch_dir("empty")), Error);
}

TEST_CASE("result JSON schema and round trip") {
  AnalysisResult r;
  r.topics.topics = {{{"apple", 0, 2.123456789123}, {"pear", 2, 1.0}}, {{"sun", 1, 3.0}}};
  r.segments = Segmentation::from_ranges({{0, 1}, {2, 4}});
  r.parameters = {2, 1.0, 5, 0.7, 1.5, 2.25, 42};
  r.timing = {{"preprocess", 0.5}, {"svd", 1.25}};
  r.total_milliseconds = 2.0;
  r.sentence_tokens.resize(5);
  r.matrix_rows = {0, 1, 2, 3, 4};
  r.vocabulary_size = 3;

  ResultJsonOptions o;
  o.document_path = "doc.txt";
  const nlohmann::json j = result_to_json(r, o);
  CHECK(!j.contains("timing_ms"));
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"document", "parameters", "segments", "topics"});
  CHECK(j["segments"][1]["start"] == 2);
  CHECK(j["segments"][1]["end"] == 4);
  CHECK(j["topics"][0][0]["word"] == "apple");
  CHECK(j["topics"][0][0]["score"].get<double>() == 2.12345679);
  CHECK(j["parameters"]["seed"] == 42);
  CHECK(j["parameters"]["tau_o"].get<double>() == 2.25);

  const std::string text = dump_json(j);
  CHECK(text.find("\"document\"") < text.find("\"parameters\""));
  CHECK(text.find("\"end\"") < text.find("\"start\""));

  o.include_timing = true;
  o.top_words = 1;
  const nlohmann::json timed = result_to_json(r, o);
  CHECK(timed["timing_ms"]["svd"].get<double>() == 1.25);
  CHECK(timed["timing_ms"]["total"].get<double>() == 2.0);
  CHECK(timed["topics"][0].size() == 1);

  const StoredResult back = parse_result_json(nlohmann::json::parse(text));
  CHECK(back.topics == std::vector<std::vector<std::string>>{{"apple", "pear"}, {"sun"}});
  CHECK(back.segments == r.segments);
  CHECK(back.document_path == "doc.txt");

  CHECK_THROWS_AS(parse_result_json(nlohmann::json::parse("{\"topics\": []}")), Error);
}

TEST_CASE("evaluation JSON") {
  EvaluationReport e;
  e.pmi = {0.5, std::nullopt};
  e.umass = {-1.0, -2.0};
  e.jaccard = Eigen::MatrixXd::Zero(2, 2);
  e.dice = Eigen::MatrixXd::Zero(2, 2);
  e.mean_pmi = 0.5;
  e.segmentation = {0.25, 0.5, 3, 40};
  const nlohmann::json j = evaluation_to_json(e);
  CHECK(j["coherence"]["pmi"][1].is_null());
  CHECK(j["coherence"]["umass"][1] == -2.0);
  CHECK(j["composite"]["pmi_jaccard"].is_null());
  CHECK(j["segmentation"]["p_k"] == 0.25);
  CHECK(j["segmentation"]["unit"] == "word");
  CHECK(j["diversity"]["dice"][0][1] == 0.0);
}
