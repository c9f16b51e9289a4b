#include "tsptw/geometry.hpp"

#include <cmath>

#include "tsptw/errors.hpp"

namespace tsptw {

std::string to_string(DistanceRounding mode) {
  switch (mode) {
    case DistanceRounding::Truncate: return "truncate";
    case DistanceRounding::Round: return "round";
    case DistanceRounding::Exact: return "exact";
  }
  return "truncate";
}

DistanceRounding distance_rounding_from_string(const std::string& text) {
  if (text == "truncate") return DistanceRounding::Truncate;
  if (text == "round") return DistanceRounding::Round;
  if (text == "exact") return DistanceRounding::Exact;
  throw ConfigError("unknown distance rounding mode: " + text);
}

std::vector<double> euclidean_matrix(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     DistanceRounding mode) {
  if (xs.size() != ys.size()) throw ConfigError("coordinate arrays differ in length");
  const std::size_t n = xs.size();
  std::vector<double> matrix(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      double d = std::sqrt(dx * dx + dy * dy);
      if (mode == DistanceRounding::Truncate) d = std::floor(d);
      else if (mode == DistanceRounding::Round) d = std::round(d);
      matrix[i * n + j] = d;
    }
  }
  return matrix;
}

}  // namespace tsptw
