#include "tsptw/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tsptw {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string format_table_value(double value) {
  if (value == 0.0) return "0";
  const double magnitude = std::abs(value);
  char buffer[64];
  if (magnitude >= 1e5) {
    const int exponent = static_cast<int>(std::floor(std::log10(magnitude)));
    const double mantissa = value / std::pow(10.0, exponent);
    std::snprintf(buffer, sizeof buffer, "%.2f", mantissa);
    std::string text(buffer);
    while (text.ends_with('0')) text.pop_back();
    if (text.ends_with('.')) text.pop_back();
    return text + "e" + std::to_string(exponent);
  }
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  std::string text(buffer);
  while (text.ends_with('0')) text.pop_back();
  if (text.ends_with('.')) text.pop_back();
  return text;
}

namespace {

bool numeric_token(const std::string& token) {
  char* end = nullptr;
  std::strtod(token.c_str(), &end);
  return end != nullptr && *end == '\0' && end != token.c_str();
}

}  // namespace

Instance parse_benchmark(std::istream& in, const std::string& name,
                         DistanceRounding mode) {
  struct Row {
    long id;
    double x, y, ready, due;
  };
  std::vector<Row> rows;
  long declared = -1;
  bool done = false;

  std::string line;
  int line_no = 0;
  while (!done && std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    std::string token;
    while (fields >> token) tokens.push_back(token);
    if (tokens.empty()) continue;

    bool all_numeric = true;
    for (const std::string& t : tokens)
      if (!numeric_token(t)) all_numeric = false;
    if (!all_numeric) {
      if (rows.empty()) continue;  // header variants
      throw ParseError("unexpected non-numeric row inside the city table", line_no);
    }

    if (tokens.size() == 1) {
      const long value = std::lround(std::strtod(tokens[0].c_str(), nullptr));
      if (rows.empty() && declared < 0) {
        declared = value;
        continue;
      }
      if (value == 999) {  // bare sentinel variant
        done = true;
        continue;
      }
      throw ParseError("unexpected single-number row", line_no);
    }
    if (tokens.size() != 7)
      throw ParseError("expected 7 fields: id x y demand ready due service", line_no);

    Row row;
    row.id = std::lround(std::strtod(tokens[0].c_str(), nullptr));
    row.x = std::strtod(tokens[1].c_str(), nullptr);
    row.y = std::strtod(tokens[2].c_str(), nullptr);
    row.ready = std::strtod(tokens[4].c_str(), nullptr);
    row.due = std::strtod(tokens[5].c_str(), nullptr);
    if (row.id == 999) {  // sentinel used by several files in these families
      done = true;
      continue;
    }
    if (row.id != static_cast<long>(rows.size()) + 1)
      throw ParseError("city ids must be consecutive starting at 1", line_no);
    rows.push_back(row);
  }

  if (rows.size() < 2) throw InstanceError(name + ": needs at least 2 cities");
  if (declared >= 0 && declared != static_cast<long>(rows.size()))
    throw InstanceError(name + ": declared city count " + std::to_string(declared) +
                        " does not match " + std::to_string(rows.size()) + " rows");

  std::vector<double> xs, ys;
  std::vector<TimeWindow> windows;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  windows.reserve(rows.size());
  for (const Row& row : rows) {
    xs.push_back(row.x);
    ys.push_back(row.y);
    windows.push_back({row.ready, row.due});
  }
  return Instance(name, euclidean_matrix(xs, ys, mode), std::move(windows), 0);
}

Instance parse_benchmark(const std::filesystem::path& path, DistanceRounding mode) {
  std::ifstream in = open_input(path);
  return parse_benchmark(in, path.stem().string(), mode);
}

namespace {

nlohmann::ordered_json matrix_to_json(const Instance& instance) {
  const int n = instance.size();
  nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < n; ++j) row.push_back(instance.travel(i, j));
    matrix.push_back(std::move(row));
  }
  return matrix;
}

std::vector<double> matrix_from_json(const nlohmann::json& doc, int n) {
  std::vector<double> matrix;
  matrix.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& row : doc)
    for (const auto& value : row) matrix.push_back(value.get<double>());
  return matrix;
}

nlohmann::ordered_json windows_to_json(const Instance& instance) {
  nlohmann::ordered_json windows = nlohmann::ordered_json::array();
  for (const TimeWindow& w : instance.windows())
    windows.push_back(nlohmann::ordered_json::array({w.open, w.close}));
  return windows;
}

std::vector<TimeWindow> windows_from_json(const nlohmann::json& doc) {
  std::vector<TimeWindow> windows;
  windows.reserve(doc.size());
  for (const auto& pair : doc)
    windows.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  return windows;
}

}  // namespace

nlohmann::ordered_json instance_to_json(const Instance& instance) {
  nlohmann::ordered_json doc;
  doc["format"] = "tsptw-instance";
  doc["name"] = instance.name();
  doc["cities"] = instance.size();
  doc["depot"] = instance.depot();
  doc["matrix"] = matrix_to_json(instance);
  doc["windows"] = windows_to_json(instance);
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  const int n = doc.at("cities").get<int>();
  return Instance(doc.at("name").get<std::string>(),
                  matrix_from_json(doc.at("matrix"), n),
                  windows_from_json(doc.at("windows")), doc.at("depot").get<int>());
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out = open_output(path);
  out << instance_to_json(instance).dump(2) << "\n";
}

Instance load_instance(const std::filesystem::path& path, DistanceRounding mode) {
  if (path.extension() == ".json") {
    std::ifstream in = open_input(path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& err) {
      throw ParseError(path.string() + ": " + err.what());
    }
    return instance_from_json(doc);
  }
  return parse_benchmark(path, mode);
}

nlohmann::ordered_json sequence_to_json(const TaskSequence& sequence) {
  const Instance& base = sequence.tasks.front();
  nlohmann::ordered_json doc;
  doc["format"] = "tsptw-sequence";
  doc["base_name"] = sequence.base_name;
  doc["environment"] = to_string(sequence.environment);
  doc["seed"] = sequence.seed;
  doc["params"]["expansion"] = {{"rho", sequence.expansion.rho},
                                {"select_lo", sequence.expansion.select_lo},
                                {"select_hi", sequence.expansion.select_hi}};
  doc["params"]["swap"] = {
      {"swaps", sequence.swap.swaps},
      {"waiting_arrivals", sequence.swap.waiting_arrivals},
      {"fixed_delta", sequence.swap.fixed_delta
                          ? nlohmann::ordered_json(*sequence.swap.fixed_delta)
                          : nlohmann::ordered_json(nullptr)}};
  doc["cities"] = base.size();
  doc["depot"] = base.depot();
  doc["matrix"] = matrix_to_json(base);
  doc["reference_tour"] = sequence.reference_tour;
  doc["swap_tours"] = sequence.swap_tours;
  doc["deltas"] = sequence.deltas;
  nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
  for (const Instance& task : sequence.tasks) {
    nlohmann::ordered_json entry;
    entry["name"] = task.name();
    entry["windows"] = windows_to_json(task);
    tasks.push_back(std::move(entry));
  }
  doc["tasks"] = std::move(tasks);
  return doc;
}

TaskSequence sequence_from_json(const nlohmann::json& doc) {
  TaskSequence sequence;
  sequence.base_name = doc.at("base_name").get<std::string>();
  sequence.environment = environment_from_string(doc.at("environment").get<std::string>());
  sequence.seed = doc.at("seed").get<std::uint64_t>();
  const auto& expansion = doc.at("params").at("expansion");
  sequence.expansion.rho = expansion.at("rho").get<double>();
  sequence.expansion.select_lo = expansion.at("select_lo").get<double>();
  sequence.expansion.select_hi = expansion.at("select_hi").get<double>();
  const auto& swap = doc.at("params").at("swap");
  sequence.swap.swaps = swap.at("swaps").get<int>();
  sequence.swap.waiting_arrivals = swap.at("waiting_arrivals").get<bool>();
  if (!swap.at("fixed_delta").is_null())
    sequence.swap.fixed_delta = swap.at("fixed_delta").get<double>();
  sequence.reference_tour = doc.at("reference_tour").get<std::vector<int>>();
  sequence.swap_tours = doc.at("swap_tours").get<std::vector<std::vector<int>>>();
  sequence.deltas = doc.at("deltas").get<std::vector<double>>();

  const int n = doc.at("cities").get<int>();
  const int depot = doc.at("depot").get<int>();
  const std::vector<double> matrix = matrix_from_json(doc.at("matrix"), n);
  for (const auto& entry : doc.at("tasks"))
    sequence.tasks.emplace_back(entry.at("name").get<std::string>(), matrix,
                                windows_from_json(entry.at("windows")), depot);
  if (sequence.tasks.empty()) throw ParseError("sequence document has no tasks");
  return sequence;
}

void write_sequence(const std::filesystem::path& path, const TaskSequence& sequence) {
  std::ofstream out = open_output(path);
  out << sequence_to_json(sequence).dump(2) << "\n";
}

TaskSequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
  return sequence_from_json(doc);
}

namespace {

constexpr const char* kRecordsHeader =
    "sequence_id,environment,cities,algorithm,protocol,task,repetition,seed,"
    "score,cost,cv,feasible,evaluations_used";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

void write_records_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records) {
  std::ofstream out = open_output(path);
  out << kRecordsHeader << "\n";
  for (const RunRecord& r : records) {
    out << r.sequence_id << ',' << r.environment << ',' << r.cities << ','
        << to_string(r.algorithm) << ',' << to_string(r.protocol) << ',' << r.task
        << ',' << r.repetition << ',' << r.seed << ',' << format_double(r.score)
        << ',' << format_double(r.cost) << ',' << format_double(r.cv) << ','
        << (r.feasible ? 1 : 0) << ',' << r.evaluations_used << "\n";
  }
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty records file", 1);
  ++line_no;
  if (line != kRecordsHeader) throw ParseError("unexpected records header", 1);

  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 13) throw ParseError("expected 13 fields", line_no);
    RunRecord r;
    r.sequence_id = fields[0];
    r.environment = fields[1];
    r.cities = std::stoi(fields[2]);
    r.algorithm = algorithm_from_string(fields[3]);
    r.protocol = protocol_from_string(fields[4]);
    r.task = std::stoi(fields[5]);
    r.repetition = std::stoi(fields[6]);
    r.seed = std::stoull(fields[7]);
    r.score = std::strtod(fields[8].c_str(), nullptr);
    r.cost = std::strtod(fields[9].c_str(), nullptr);
    r.cv = std::strtod(fields[10].c_str(), nullptr);
    r.feasible = fields[11] == "1";
    r.evaluations_used = std::stol(fields[12]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_timings_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records) {
  std::ofstream out = open_output(path);
  out << "sequence_id,algorithm,protocol,task,repetition,wall_ms\n";
  for (const RunRecord& r : records)
    out << r.sequence_id << ',' << to_string(r.algorithm) << ',' << to_string(r.protocol)
        << ',' << r.task << ',' << r.repetition << ',' << format_double(r.wall_ms)
        << "\n";
}

namespace {

nlohmann::ordered_json record_to_json(const RunRecord& r) {
  nlohmann::ordered_json doc;
  doc["sequence_id"] = r.sequence_id;
  doc["environment"] = r.environment;
  doc["cities"] = r.cities;
  doc["algorithm"] = to_string(r.algorithm);
  doc["protocol"] = to_string(r.protocol);
  doc["task"] = r.task;
  doc["repetition"] = r.repetition;
  doc["seed"] = r.seed;
  doc["score"] = r.score;
  doc["cost"] = r.cost;
  doc["cv"] = r.cv;
  doc["feasible"] = r.feasible;
  doc["evaluations_used"] = r.evaluations_used;
  doc["best_order"] = r.best_order;
  return doc;
}

RunRecord record_from_json(const nlohmann::json& doc) {
  RunRecord r;
  r.sequence_id = doc.at("sequence_id").get<std::string>();
  r.environment = doc.at("environment").get<std::string>();
  r.cities = doc.at("cities").get<int>();
  r.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());
  r.protocol = protocol_from_string(doc.at("protocol").get<std::string>());
  r.task = doc.at("task").get<int>();
  r.repetition = doc.at("repetition").get<int>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.score = doc.at("score").get<double>();
  r.cost = doc.at("cost").get<double>();
  r.cv = doc.at("cv").get<double>();
  r.feasible = doc.at("feasible").get<bool>();
  r.evaluations_used = doc.at("evaluations_used").get<long>();
  r.best_order = doc.at("best_order").get<std::vector<int>>();
  return r;
}

}  // namespace

void write_results_bundle(const std::filesystem::path& path,
                          const nlohmann::ordered_json& config,
                          std::span<const RunRecord> records) {
  nlohmann::ordered_json doc;
  doc["format"] = "tsptw-results";
  doc["config"] = config;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const RunRecord& r : records) rows.push_back(record_to_json(r));
  doc["records"] = std::move(rows);
  std::ofstream out = open_output(path);
  out << doc.dump(2) << "\n";
}

ResultsBundle load_results_bundle(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
  if (doc.value("format", "") != "tsptw-results")
    throw ParseError(path.string() + ": not a results bundle");
  ResultsBundle bundle;
  bundle.config = doc.at("config");
  for (const auto& row : doc.at("records")) bundle.records.push_back(record_from_json(row));
  return bundle;
}

namespace {

std::string optional_value(const std::optional<double>& value) {
  return value ? format_table_value(*value) : "--";
}

}  // namespace

void write_table_csv(const std::filesystem::path& path, std::span<const TableRow> rows) {
  std::ofstream out = open_output(path);
  out << "instance,task,iter_mean,iter_std,iter_sr,iter_succ_mu,iter_succ_sigma,"
         "std_mean,std_std,std_sr,std_succ_mu,std_succ_sigma,stat\n";
  for (const TableRow& row : rows) {
    out << row.sequence_id << ",T" << row.task << ','
        << format_table_value(row.iterative.mean) << ','
        << format_table_value(row.iterative.stddev) << ','
        << format_table_value(row.iterative.sr) << ','
        << optional_value(row.iterative.succ_mean) << ','
        << optional_value(row.iterative.succ_stddev) << ','
        << format_table_value(row.standard.mean) << ','
        << format_table_value(row.standard.stddev) << ','
        << format_table_value(row.standard.sr) << ','
        << optional_value(row.standard.succ_mean) << ','
        << optional_value(row.standard.succ_stddev) << ','
        << verdict_symbol(row.stat.verdict) << "\n";
  }
}

void write_figures_csv(const std::filesystem::path& path,
                       std::span<const FigureRow> rows) {
  std::ofstream out = open_output(path);
  out << "algorithm,n,better,none,worse,sr_iter,sr_std\n";
  for (const FigureRow& row : rows) {
    out << row.algorithm << ',' << row.cities << ',' << format_double(row.better)
        << ',' << format_double(row.none) << ',' << format_double(row.worse) << ','
        << format_double(row.sr_iterative) << ',' << format_double(row.sr_standard)
        << "\n";
  }
}

}  // namespace tsptw
