#pragma once

#include <string>
#include <vector>

namespace tsptw {

// How Euclidean distances derived from coordinates are mapped to travel
// times. The classic benchmark families use truncation; feasibility
// classifications depend on this choice.
enum class DistanceRounding { Truncate, Round, Exact };

std::string to_string(DistanceRounding mode);
DistanceRounding distance_rounding_from_string(const std::string& text);

// Row-major n*n matrix of pairwise Euclidean distances under `mode`.
std::vector<double> euclidean_matrix(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     DistanceRounding mode);

}  // namespace tsptw
