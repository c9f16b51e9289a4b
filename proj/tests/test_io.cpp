#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "tsptw/io.hpp"

using namespace tsptw;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("tsptw-io-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

constexpr const char* kTinyFile =
    "!! tiny synthetic instance\n"
    "CUST NO.  XCOORD.  YCOORD.  DEMAND  READY TIME  DUE DATE  SERVICE TIME\n"
    "  1   0.0   0.0   0.0    0.0   100.0   0.0\n"
    "  2   3.0   4.0   0.0   10.0    50.0   0.0\n"
    "999   0.0   0.0   0.0    0.0     0.0   0.0\n";

}  // namespace

TEST_CASE("euclidean distances honor the rounding mode") {
  std::istringstream exact(kTinyFile);
  const Instance a = parse_benchmark(exact, "tiny", DistanceRounding::Exact);
  CHECK(a.travel(0, 1) == 5.0);  // 3-4-5 triangle
  CHECK(a.window(1).open == 10.0);
  CHECK(a.window(1).close == 50.0);

  const std::string diagonal =
      "2\n"
      "1 0 0 0 0 10 0\n"
      "2 1 1 0 0 10 0\n";
  std::istringstream trunc(diagonal);
  CHECK(parse_benchmark(trunc, "d", DistanceRounding::Truncate).travel(0, 1) == 1.0);
  std::istringstream round(diagonal);
  CHECK(parse_benchmark(round, "d", DistanceRounding::Round).travel(0, 1) == 1.0);
  std::istringstream ex(diagonal);
  CHECK(parse_benchmark(ex, "d", DistanceRounding::Exact).travel(0, 1) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("classic files round-trip through the native format") {
  std::istringstream in(kTinyFile);
  const Instance parsed = parse_benchmark(in, "tiny", DistanceRounding::Truncate);
  const Instance reread = instance_from_json(instance_to_json(parsed));
  CHECK(parsed == reread);

  const fs::path dir = temp_dir("instance");
  write_instance(dir / "tiny.json", parsed);
  CHECK(load_instance(dir / "tiny.json") == parsed);
}

TEST_CASE("malformed benchmark rows carry line numbers") {
  const std::string broken =
      "CUST NO. XCOORD ...\n"
      "1 0 0 0 0 100 0\n"
      "2 3 4 0 0\n";
  std::istringstream in(broken);
  try {
    parse_benchmark(in, "broken", DistanceRounding::Truncate);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 3);
  }

  const std::string skipped_id = "1 0 0 0 0 100 0\n3 3 4 0 0 100 0\n";
  std::istringstream in2(skipped_id);
  CHECK_THROWS_AS(parse_benchmark(in2, "skip", DistanceRounding::Truncate), ParseError);

  const std::string count_mismatch = "3\n1 0 0 0 0 100 0\n2 3 4 0 0 100 0\n";
  std::istringstream in3(count_mismatch);
  CHECK_THROWS_AS(parse_benchmark(in3, "count", DistanceRounding::Truncate),
                  InstanceError);
}

TEST_CASE("the bundled 20-city instance parses") {
  const fs::path file =
      fs::path(TSPTW_DATA_DIR) / "synthetic" / "n20.synthetic.001.txt";
  REQUIRE(fs::exists(file));
  const Instance inst = parse_benchmark(file, DistanceRounding::Truncate);
  CHECK(inst.size() == 20);
  CHECK(inst.depot() == 0);
  CHECK(inst.penalty_constant() > 0.0);
}

TEST_CASE("sequence documents round-trip and serialize deterministically") {
  SyntheticParams params;
  params.window_sigma_factor = 1.5;
  const Instance base = synthetic_instance(10, 51, params);
  const TaskSequence sequence = build_sequence(base, Environment::Swap, 51, {}, {});

  const fs::path dir = temp_dir("sequence");
  write_sequence(dir / "s.json", sequence);
  const TaskSequence reread = load_sequence(dir / "s.json");
  CHECK(reread.tasks.size() == sequence.tasks.size());
  CHECK(reread.environment == sequence.environment);
  CHECK(reread.seed == sequence.seed);
  CHECK(reread.reference_tour == sequence.reference_tour);
  CHECK(reread.swap_tours == sequence.swap_tours);
  CHECK(reread.deltas == sequence.deltas);
  for (std::size_t k = 0; k < sequence.tasks.size(); ++k)
    CHECK(reread.tasks[k] == sequence.tasks[k]);

  write_sequence(dir / "s2.json", reread);
  std::ifstream f1(dir / "s.json"), f2(dir / "s2.json");
  std::stringstream b1, b2;
  b1 << f1.rdbuf();
  b2 << f2.rdbuf();
  CHECK(b1.str() == b2.str());
}

TEST_CASE("record CSVs round-trip") {
  std::vector<RunRecord> records;
  for (int i = 1; i <= 4; ++i) {
    RunRecord r;
    r.sequence_id = "syn10s1-expansion-3";
    r.environment = "expansion";
    r.cities = 10;
    r.algorithm = i % 2 ? Algorithm::Lns : Algorithm::Vns;
    r.protocol = i < 3 ? Protocol::Standard : Protocol::Iterative;
    r.task = i;
    r.repetition = i;
    r.seed = 0xdeadbeefULL + i;
    r.score = 123.456 + i * 0.125;
    r.cost = 100.25;
    r.cv = i % 2 ? 0.0 : 0.0625;
    r.feasible = i % 2 == 1;
    r.evaluations_used = 1000 + i;
    records.push_back(std::move(r));
  }
  const fs::path dir = temp_dir("records");
  write_records_csv(dir / "records.csv", records);
  const std::vector<RunRecord> reread = read_records_csv(dir / "records.csv");
  REQUIRE(reread.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(reread[i].sequence_id == records[i].sequence_id);
    CHECK(reread[i].algorithm == records[i].algorithm);
    CHECK(reread[i].protocol == records[i].protocol);
    CHECK(reread[i].task == records[i].task);
    CHECK(reread[i].seed == records[i].seed);
    CHECK(reread[i].score == records[i].score);
    CHECK(reread[i].cv == records[i].cv);
    CHECK(reread[i].feasible == records[i].feasible);
    CHECK(reread[i].evaluations_used == records[i].evaluations_used);
  }
}

TEST_CASE("results bundles embed the config echo") {
  nlohmann::ordered_json config;
  config["command"] = "solve";
  config["budget"] = 1234;
  RunRecord r;
  r.sequence_id = "x";
  r.environment = "swap";
  r.cities = 5;
  r.best_order = {0, 2, 1, 4, 3};
  const fs::path dir = temp_dir("bundle");
  write_results_bundle(dir / "results.json", config, {&r, 1});
  const ResultsBundle bundle = load_results_bundle(dir / "results.json");
  CHECK(bundle.config.at("budget") == 1234);
  REQUIRE(bundle.records.size() == 1);
  CHECK(bundle.records[0].best_order == r.best_order);
}

TEST_CASE("table formatting follows the paper's style") {
  CHECK(format_table_value(0.0) == "0");
  CHECK(format_table_value(661.6) == "661.6");
  CHECK(format_table_value(1263.0) == "1263");
  CHECK(format_table_value(591.82) == "591.82");
  CHECK(format_table_value(368000.0) == "3.68e5");
  CHECK(format_table_value(520500000.0) == "5.21e8");
  CHECK(format_table_value(0.93) == "0.93");
  CHECK(format_double(0.875) == "0.875");
}
