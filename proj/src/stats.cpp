#include "tsptw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace tsptw {

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(std::span<const double> values) {
  Moments m;
  const std::size_t n = values.size();
  if (n == 0) return m;
  // A constant sample has zero spread exactly; skipping the accumulation
  // avoids reporting rounding noise as a standard deviation.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    m.mean = *lo;
    return m;
  }
  double sum = 0.0;
  for (const double v : values) sum += v;
  m.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return m;
}

// Average ranks of the pooled samples (1-based; ties share the mean rank),
// returned separately for each group, plus the tie-group sizes.
struct RankInfo {
  double rank_sum_a = 0.0;
  std::vector<double> pooled_ranks;  // aligned with sorted pool
  std::vector<int> tie_sizes;
  std::vector<int> group;  // 0 = a, 1 = b, aligned with sorted pool
};

RankInfo ranks(std::span<const double> a, std::span<const double> b) {
  struct Entry {
    double value;
    int group;
  };
  std::vector<Entry> pool;
  pool.reserve(a.size() + b.size());
  for (const double v : a) pool.push_back({v, 0});
  for (const double v : b) pool.push_back({v, 1});
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Entry& x, const Entry& y) { return x.value < y.value; });

  RankInfo info;
  const std::size_t n = pool.size();
  info.pooled_ranks.resize(n);
  info.group.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pool[j].value == pool[i].value) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      info.pooled_ranks[k] = avg_rank;
      info.group[k] = pool[k].group;
      if (pool[k].group == 0) info.rank_sum_a += avg_rank;
    }
    info.tie_sizes.push_back(static_cast<int>(j - i));
    i = j;
  }
  return info;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Exact permutation distribution of the rank sum of the smaller group,
// conditional on the observed tie pattern. Ranks are doubled so tie-averaged
// half-integer ranks become integers; the subset-sum table is built by
// dynamic programming, which keeps the cost polynomial even though the
// number of assignments is combinatorial.
double exact_two_sided_p(const RankInfo& info, std::size_t na, std::size_t nb) {
  const std::size_t small = std::min(na, nb);
  const int which = na <= nb ? 0 : 1;

  double small_rank_sum = 0.0;
  for (std::size_t k = 0; k < info.group.size(); ++k)
    if (info.group[k] == which) small_rank_sum += info.pooled_ranks[k];

  std::vector<long> scaled(info.pooled_ranks.size());
  long total = 0;
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    scaled[k] = std::lround(info.pooled_ranks[k] * 2.0);
    total += scaled[k];
  }
  const long target = std::lround(small_rank_sum * 2.0);

  // counts[c][s] = number of size-c subsets of the scaled ranks with sum s.
  std::vector<std::vector<double>> counts(
      small + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  counts[0][0] = 1.0;
  for (const long r : scaled) {
    for (std::size_t c = std::min(small, scaled.size()); c >= 1; --c) {
      for (long s = total; s >= r; --s) {
        const double add = counts[c - 1][static_cast<std::size_t>(s - r)];
        if (add != 0.0) counts[c][static_cast<std::size_t>(s)] += add;
      }
    }
  }

  double below = 0.0, above = 0.0, all = 0.0;
  for (long s = 0; s <= total; ++s) {
    const double c = counts[small][static_cast<std::size_t>(s)];
    if (c == 0.0) continue;
    all += c;
    if (s <= target) below += c;
    if (s >= target) above += c;
  }
  const double p = 2.0 * std::min(below, above) / all;
  return std::min(1.0, p);
}

double normal_two_sided_p(const RankInfo& info, std::size_t na, std::size_t nb) {
  const double fa = static_cast<double>(na);
  const double fb = static_cast<double>(nb);
  const double total = fa + fb;
  const double u_a = info.rank_sum_a - fa * (fa + 1.0) / 2.0;
  const double u = std::min(u_a, fa * fb - u_a);
  const double mu = fa * fb / 2.0;

  double tie_term = 0.0;
  for (const int t : info.tie_sizes) {
    const double ft = static_cast<double>(t);
    tie_term += ft * ft * ft - ft;
  }
  const double variance =
      fa * fb / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (variance <= 0.0) return 1.0;  // every observation tied

  // Continuity correction: shift half a unit toward the mean.
  const double z = (u - mu + 0.5) / std::sqrt(variance);
  return std::min(1.0, 2.0 * normal_cdf(z));
}

}  // namespace

CellSummary summarize_cell(std::span<const RunRecord> records) {
  if (records.empty()) throw ConfigError("summarize_cell needs at least one record");
  std::vector<double> scores, feasible_scores;
  scores.reserve(records.size());
  for (const RunRecord& r : records) {
    scores.push_back(r.score);
    if (r.feasible) feasible_scores.push_back(r.score);
  }
  CellSummary cell;
  cell.runs = static_cast<int>(records.size());
  const Moments all = moments(scores);
  cell.mean = all.mean;
  cell.stddev = all.stddev;
  cell.sr = static_cast<double>(feasible_scores.size()) / static_cast<double>(records.size());
  if (!feasible_scores.empty()) {
    const Moments succ = moments(feasible_scores);
    cell.succ_mean = succ.mean;
    cell.succ_stddev = succ.stddev;
  }
  return cell;
}

std::string verdict_symbol(Verdict verdict) {
  switch (verdict) {
    case Verdict::IterativeBetter: return "+";
    case Verdict::IterativeWorse: return "-";
    case Verdict::NoDifference: return "*";
  }
  return "*";
}

double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("mann_whitney needs non-empty samples");
  return exact_two_sided_p(ranks(a, b), a.size(), b.size());
}

double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("mann_whitney needs non-empty samples");
  return normal_two_sided_p(ranks(a, b), a.size(), b.size());
}

StatVerdict mann_whitney(std::span<const double> iterative,
                         std::span<const double> standard, double alpha) {
  if (iterative.empty() || standard.empty())
    throw ConfigError("mann_whitney needs non-empty samples");
  const RankInfo info = ranks(iterative, standard);
  const double fa = static_cast<double>(iterative.size());
  const double fb = static_cast<double>(standard.size());
  const double u_a = info.rank_sum_a - fa * (fa + 1.0) / 2.0;
  const double u_b = fa * fb - u_a;

  StatVerdict result;
  result.alpha = alpha;
  result.u_statistic = std::min(u_a, u_b);
  const bool exact = std::min(iterative.size(), standard.size()) < 8;
  result.p_value = exact ? exact_two_sided_p(info, iterative.size(), standard.size())
                         : normal_two_sided_p(info, iterative.size(), standard.size());

  if (result.p_value < alpha && u_a != u_b) {
    // Smaller U for the iterative sample means its ranks (scores) are lower.
    result.verdict =
        u_a < u_b ? Verdict::IterativeBetter : Verdict::IterativeWorse;
  } else {
    result.verdict = Verdict::NoDifference;
  }
  return result;
}

namespace {

struct CellKey {
  std::string sequence_id;
  int task;
  Protocol protocol;
  auto operator<=>(const CellKey&) const = default;
};

struct CellData {
  std::vector<const RunRecord*> records;
};

using CellMap = std::map<CellKey, CellData>;

CellMap group_cells(std::span<const RunRecord> records) {
  CellMap cells;
  for (const RunRecord& r : records)
    cells[{r.sequence_id, r.task, r.protocol}].records.push_back(&r);
  return cells;
}

std::vector<double> cell_scores(const CellData& cell) {
  std::vector<double> scores;
  scores.reserve(cell.records.size());
  for (const RunRecord* r : cell.records) scores.push_back(r->score);
  return scores;
}

CellSummary cell_summary(const CellData& cell) {
  std::vector<RunRecord> copy;
  copy.reserve(cell.records.size());
  for (const RunRecord* r : cell.records) copy.push_back(*r);
  return summarize_cell(copy);
}

}  // namespace

std::vector<TableRow> table_rows(std::span<const RunRecord> records, double alpha) {
  const CellMap cells = group_cells(records);
  std::set<std::pair<std::string, int>> keys;
  for (const auto& [key, cell] : cells) keys.insert({key.sequence_id, key.task});

  std::vector<std::string> gaps;
  std::vector<TableRow> rows;
  for (const auto& [sequence_id, task] : keys) {
    const auto iter = cells.find({sequence_id, task, Protocol::Iterative});
    const auto stan = cells.find({sequence_id, task, Protocol::Standard});
    if (iter == cells.end() || stan == cells.end()) {
      gaps.push_back(sequence_id + " T" + std::to_string(task) + " " +
                     to_string(iter == cells.end() ? Protocol::Iterative
                                                   : Protocol::Standard));
      continue;
    }
    TableRow row;
    row.sequence_id = sequence_id;
    row.task = task;
    row.iterative = cell_summary(iter->second);
    row.standard = cell_summary(stan->second);
    row.stat = mann_whitney(cell_scores(iter->second), cell_scores(stan->second), alpha);
    rows.push_back(std::move(row));
  }
  if (!gaps.empty()) {
    std::string message = "missing cells:";
    for (const std::string& g : gaps) message += " [" + g + "]";
    throw IncompleteDataError(message);
  }
  return rows;
}

std::vector<FigureRow> figure_aggregates(std::span<const RunRecord> records,
                                         double alpha) {
  // Transfer-relevant comparisons only: tasks T_2 and later.
  struct GroupKey {
    std::string algorithm;
    int cities;
    auto operator<=>(const GroupKey&) const = default;
  };
  std::map<GroupKey, std::vector<RunRecord>> groups;
  std::map<std::string, int> max_task;
  for (const RunRecord& r : records) {
    groups[{to_string(r.algorithm), r.cities}].push_back(r);
    max_task[r.sequence_id] = std::max(max_task[r.sequence_id], r.task);
  }

  std::vector<std::string> gaps;
  std::vector<FigureRow> rows;
  for (const auto& [key, group_records] : groups) {
    const CellMap cells = group_cells(group_records);
    std::set<std::string> sequence_ids;
    for (const auto& [cell_key, cell] : cells) sequence_ids.insert(cell_key.sequence_id);

    FigureRow row;
    row.algorithm = key.algorithm;
    row.cities = key.cities;
    int better = 0, worse = 0, none = 0;
    double sr_iter = 0.0, sr_stan = 0.0;
    for (const std::string& sequence_id : sequence_ids) {
      for (int task = 2; task <= max_task[sequence_id]; ++task) {
        const auto iter = cells.find({sequence_id, task, Protocol::Iterative});
        const auto stan = cells.find({sequence_id, task, Protocol::Standard});
        if (iter == cells.end() || stan == cells.end()) {
          gaps.push_back(key.algorithm + " " + sequence_id + " T" + std::to_string(task) +
                         " " + to_string(iter == cells.end() ? Protocol::Iterative
                                                             : Protocol::Standard));
          continue;
        }
        const StatVerdict stat =
            mann_whitney(cell_scores(iter->second), cell_scores(stan->second), alpha);
        switch (stat.verdict) {
          case Verdict::IterativeBetter: ++better; break;
          case Verdict::IterativeWorse: ++worse; break;
          case Verdict::NoDifference: ++none; break;
        }
        sr_iter += cell_summary(iter->second).sr;
        sr_stan += cell_summary(stan->second).sr;
        ++row.comparisons;
      }
    }
    if (row.comparisons > 0) {
      const double total = static_cast<double>(row.comparisons);
      row.better = better / total;
      row.none = none / total;
      row.worse = worse / total;
      row.sr_iterative = sr_iter / total;
      row.sr_standard = sr_stan / total;
    }
    rows.push_back(std::move(row));
  }
  if (!gaps.empty()) {
    std::string message = "missing cells:";
    for (const std::string& g : gaps) message += " [" + g + "]";
    throw IncompleteDataError(message);
  }
  return rows;
}

}  // namespace tsptw
