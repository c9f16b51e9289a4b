#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsptw/generators.hpp"
#include "tsptw/geometry.hpp"
#include "tsptw/protocols.hpp"
#include "tsptw/stats.hpp"

namespace tsptw {

// Shortest round-trip decimal representation.
std::string format_double(double value);

// Paper-style table entry: >= 1e5 switches to 3-significant scientific
// notation ("3.68e5"), otherwise up to two decimals with trailing zeros
// trimmed ("661.6", "1263").
std::string format_table_value(double value);

// Classic whitespace benchmark table: header lines, then one row per city
// "id x y demand ready due service", optionally closed by a 999 sentinel
// row. Distances are Euclidean under `mode`; the first listed city is the
// depot.
Instance parse_benchmark(std::istream& in, const std::string& name,
                         DistanceRounding mode = DistanceRounding::Truncate);
Instance parse_benchmark(const std::filesystem::path& path,
                         DistanceRounding mode = DistanceRounding::Truncate);

// Native self-contained instance format (explicit matrix, JSON).
nlohmann::ordered_json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);
void write_instance(const std::filesystem::path& path, const Instance& instance);

// Dispatch on extension: ".json" native, anything else classic benchmark.
Instance load_instance(const std::filesystem::path& path,
                       DistanceRounding mode = DistanceRounding::Truncate);

// Task-sequence document: matrix stored once, one window set per task,
// environment tag, seed, params and swap-tour metadata. Key order is stable,
// so identical sequences serialize identically byte for byte.
nlohmann::ordered_json sequence_to_json(const TaskSequence& sequence);
TaskSequence sequence_from_json(const nlohmann::json& doc);
void write_sequence(const std::filesystem::path& path, const TaskSequence& sequence);
TaskSequence load_sequence(const std::filesystem::path& path);

// Run records as CSV. Wall-clock timings are deliberately not part of this
// file; write_timings_csv emits them separately when asked.
void write_records_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);
void write_timings_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records);

// Results bundle: resolved config echo plus every record (with best tours).
struct ResultsBundle {
  nlohmann::ordered_json config;
  std::vector<RunRecord> records;
};

void write_results_bundle(const std::filesystem::path& path,
                          const nlohmann::ordered_json& config,
                          std::span<const RunRecord> records);
ResultsBundle load_results_bundle(const std::filesystem::path& path);

// Report outputs.
void write_table_csv(const std::filesystem::path& path,
                     std::span<const TableRow> rows);
void write_figures_csv(const std::filesystem::path& path,
                       std::span<const FigureRow> rows);

}  // namespace tsptw
