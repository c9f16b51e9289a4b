#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "tsptw/stats.hpp"

using namespace tsptw;

namespace {

RunRecord make_record(const std::string& sequence_id, int cities, Algorithm algorithm,
                      Protocol protocol, int task, int repetition, double score,
                      bool feasible) {
  RunRecord r;
  r.sequence_id = sequence_id;
  r.environment = "expansion";
  r.cities = cities;
  r.algorithm = algorithm;
  r.protocol = protocol;
  r.task = task;
  r.repetition = repetition;
  r.score = score;
  r.cost = feasible ? score : score / 2;
  r.cv = feasible ? 0.0 : 1.0;
  r.feasible = feasible;
  r.evaluations_used = 100;
  return r;
}

std::vector<RunRecord> cell(double score, int runs, bool feasible) {
  std::vector<RunRecord> records;
  for (int i = 1; i <= runs; ++i)
    records.push_back(
        make_record("seq", 20, Algorithm::Lns, Protocol::Standard, 1, i, score, feasible));
  return records;
}

}  // namespace

TEST_CASE("cell summaries") {
  SUBCASE("thirty identical feasible scores") {
    const CellSummary summary = summarize_cell(cell(661.6, 30, true));
    CHECK(summary.mean == doctest::Approx(661.6));
    CHECK(summary.stddev == 0.0);
    CHECK(summary.sr == 1.0);
    REQUIRE(summary.succ_mean.has_value());
    CHECK(*summary.succ_mean == doctest::Approx(661.6));
    CHECK(*summary.succ_stddev == 0.0);
  }
  SUBCASE("all infeasible: success fields are absent") {
    const CellSummary summary = summarize_cell(cell(5.2e8, 30, false));
    CHECK(summary.sr == 0.0);
    CHECK(!summary.succ_mean.has_value());
    CHECK(!summary.succ_stddev.has_value());
  }
  SUBCASE("one feasible of two") {
    std::vector<RunRecord> records = cell(100.0, 1, true);
    records.push_back(
        make_record("seq", 20, Algorithm::Lns, Protocol::Standard, 1, 2, 9e6, false));
    const CellSummary summary = summarize_cell(records);
    CHECK(summary.sr == 0.5);
    REQUIRE(summary.succ_mean.has_value());
    CHECK(*summary.succ_mean == 100.0);
  }
  SUBCASE("empty cells are rejected") {
    CHECK_THROWS_AS(summarize_cell({}), ConfigError);
  }
}

TEST_CASE("identical samples are not significantly different") {
  const std::vector<double> a(30, 661.6);
  const StatVerdict verdict = mann_whitney(a, a);
  CHECK(verdict.p_value == doctest::Approx(1.0));
  CHECK(verdict.verdict == Verdict::NoDifference);
}

TEST_CASE("exact enumeration on {1,2,3} vs {10,11,12}") {
  // All three a-values rank below all three b-values: U = 0 and the exact
  // two-sided p doubles the 1/C(6,3) tail, p = 0.1.
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{10, 11, 12};
  const StatVerdict verdict = mann_whitney(a, b);
  CHECK(verdict.u_statistic == 0.0);
  CHECK(verdict.p_value == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(verdict.verdict == Verdict::NoDifference);  // 0.1 > alpha = 0.05
  CHECK(mann_whitney_exact_p(a, b) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("heavily tied samples are handled without variance blowup") {
  const std::vector<double> a(10, 5.0);
  const std::vector<double> b(10, 5.0);
  const StatVerdict verdict = mann_whitney(a, b);
  CHECK(verdict.p_value == 1.0);
  CHECK(verdict.verdict == Verdict::NoDifference);

  // Small sides go through the exact route with the same tie pattern.
  const std::vector<double> c(4, 5.0);
  CHECK(mann_whitney(c, b).verdict == Verdict::NoDifference);
}

TEST_CASE("clear separation yields a directional verdict") {
  std::vector<double> low, high;
  for (int i = 0; i < 12; ++i) {
    low.push_back(100.0 + i);
    high.push_back(500.0 + i);
  }
  CHECK(mann_whitney(low, high).verdict == Verdict::IterativeBetter);
  CHECK(mann_whitney(high, low).verdict == Verdict::IterativeWorse);
}

TEST_CASE("verdict symmetry and identical p-values under swapped samples") {
  oracle::TestRand rand(71);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a, b;
    const int na = rand.integer(3, 12);
    const int nb = rand.integer(3, 12);
    for (int i = 0; i < na; ++i) a.push_back(rand.integer(0, 40));
    for (int i = 0; i < nb; ++i) b.push_back(rand.integer(0, 40));
    const StatVerdict ab = mann_whitney(a, b);
    const StatVerdict ba = mann_whitney(b, a);
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
    CHECK(ab.u_statistic == ba.u_statistic);
    switch (ab.verdict) {
      case Verdict::IterativeBetter:
        CHECK(ba.verdict == Verdict::IterativeWorse);
        break;
      case Verdict::IterativeWorse:
        CHECK(ba.verdict == Verdict::IterativeBetter);
        break;
      case Verdict::NoDifference:
        CHECK(ba.verdict == Verdict::NoDifference);
        break;
    }
  }
}

TEST_CASE("ranks are scale invariant") {
  oracle::TestRand rand(72);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a, b;
    for (int i = 0; i < 15; ++i) a.push_back(rand.real(0.0, 100.0));
    for (int i = 0; i < 15; ++i) b.push_back(rand.real(0.0, 100.0));
    const StatVerdict base = mann_whitney(a, b);
    for (const double scale : {0.001, 7.5, 1e6}) {
      std::vector<double> sa = a, sb = b;
      for (double& v : sa) v *= scale;
      for (double& v : sb) v *= scale;
      const StatVerdict scaled = mann_whitney(sa, sb);
      CHECK(scaled.u_statistic == base.u_statistic);
      CHECK(scaled.p_value == doctest::Approx(base.p_value).epsilon(1e-12));
      CHECK(scaled.verdict == base.verdict);
    }
  }
}

TEST_CASE("exact and normal-approximation p-values agree on small tieless sides") {
  oracle::TestRand rand(73);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int na = rand.integer(3, 8);
    const int nb = rand.integer(3, 8);
    // Distinct pooled values: a shuffled range, no ties by construction.
    std::vector<int> pool = rand.permutation(60);
    std::vector<double> a, b;
    for (int i = 0; i < na; ++i) a.push_back(pool[i]);
    for (int i = 0; i < nb; ++i) b.push_back(pool[na + i]);
    const double exact = mann_whitney_exact_p(a, b);
    const double approx = mann_whitney_normal_p(a, b);
    worst = std::max(worst, std::abs(exact - approx));
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("figure aggregation") {
  SUBCASE("all comparisons tied gives proportions (0,1,0)") {
    std::vector<RunRecord> records;
    for (const std::string& id : {"a-expansion-1", "b-expansion-1"})
      for (int task = 1; task <= 5; ++task)
        for (int rep = 1; rep <= 10; ++rep)
          for (const Protocol protocol : {Protocol::Standard, Protocol::Iterative})
            records.push_back(
                make_record(id, 60, Algorithm::Lns, protocol, task, rep, 100.0, true));
    const std::vector<FigureRow> rows = figure_aggregates(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].comparisons == 8);
    CHECK(rows[0].better == 0.0);
    CHECK(rows[0].none == 1.0);
    CHECK(rows[0].worse == 0.0);
  }

  SUBCASE("uniformly dominant iterative runs give better-proportion 1") {
    std::vector<RunRecord> records;
    for (const std::string& id : {"x-expansion-1", "y-expansion-1"})
      for (int task = 1; task <= 5; ++task)
        for (int rep = 1; rep <= 10; ++rep) {
          records.push_back(make_record(id, 150, Algorithm::Lns, Protocol::Iterative,
                                        task, rep, 900.0 + rep, task == 1 ? false : true));
          records.push_back(make_record(id, 150, Algorithm::Lns, Protocol::Standard,
                                        task, rep, 5e8 + rep, false));
        }
    // T_1 rows are pooled identically in practice; here they only feed sr.
    const std::vector<FigureRow> rows = figure_aggregates(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].cities == 150);
    CHECK(rows[0].better == 1.0);
    CHECK(rows[0].worse == 0.0);
    CHECK(rows[0].sr_iterative == 1.0);
    CHECK(rows[0].sr_standard == 0.0);
  }

  SUBCASE("mean success rate recomputes the reported coordinates") {
    // Eight transfer cells with feasible counts summing to 171 of 240 runs:
    // mean sr = 0.7125, the n = 200 iterative-LNS coordinate.
    const int feasible_counts[8] = {30, 30, 30, 30, 21, 10, 10, 10};
    std::vector<RunRecord> records;
    int cell_index = 0;
    for (const std::string& id : {"p-expansion-1", "q-expansion-1"})
      for (int task = 2; task <= 5; ++task) {
        const int feasible = feasible_counts[cell_index++];
        for (int rep = 1; rep <= 30; ++rep) {
          records.push_back(make_record(id, 200, Algorithm::Lns, Protocol::Iterative,
                                        task, rep, 1000.0 + rep, rep <= feasible));
          records.push_back(make_record(id, 200, Algorithm::Lns, Protocol::Standard,
                                        task, rep, 1000.0 + rep, false));
        }
      }
    const std::vector<FigureRow> rows = figure_aggregates(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].sr_iterative == doctest::Approx(0.7125).epsilon(1e-12));
    CHECK(rows[0].sr_standard == 0.0);
  }

  SUBCASE("missing cells raise an explicit incomplete-data error") {
    std::vector<RunRecord> records;
    for (int task = 1; task <= 5; ++task)
      for (int rep = 1; rep <= 5; ++rep) {
        records.push_back(make_record("gap-expansion-1", 40, Algorithm::Vns,
                                      Protocol::Iterative, task, rep, 50.0, true));
        if (task != 3)  // drop standard T_3
          records.push_back(make_record("gap-expansion-1", 40, Algorithm::Vns,
                                        Protocol::Standard, task, rep, 50.0, true));
      }
    try {
      figure_aggregates(records);
      FAIL("expected IncompleteDataError");
    } catch (const IncompleteDataError& err) {
      CHECK(std::string(err.what()).find("gap-expansion-1 T3") != std::string::npos);
    }
  }
}

TEST_CASE("table rows pair both protocols per task") {
  std::vector<RunRecord> records;
  for (int task = 1; task <= 5; ++task)
    for (int rep = 1; rep <= 6; ++rep)
      for (const Protocol protocol : {Protocol::Standard, Protocol::Iterative})
        records.push_back(make_record("t-expansion-9", 20, Algorithm::Lns, protocol,
                                      task, rep, 661.6, true));
  const std::vector<TableRow> rows = table_rows(records);
  REQUIRE(rows.size() == 5);
  for (const TableRow& row : rows) {
    CHECK(row.iterative.mean == doctest::Approx(661.6));
    CHECK(row.stat.verdict == Verdict::NoDifference);
  }
  CHECK(rows.front().task == 1);

  // Removing every standard T_5 record leaves a gap.
  std::erase_if(records, [](const RunRecord& r) {
    return r.task == 5 && r.protocol == Protocol::Standard;
  });
  CHECK_THROWS_AS(table_rows(records), IncompleteDataError);
}
