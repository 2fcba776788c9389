#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ordkm/common.hpp"

namespace ordkm {

// Finite metric space where every point is both a client and a candidate center.
struct MetricInstance {
  int n = 0;
  int k = 0;
  std::vector<double> dist;  // n*n row-major, symmetric, zero diagonal

  double operator()(int i, int j) const { return dist[std::size_t(i) * n + j]; }
  double& at(int i, int j) { return dist[std::size_t(i) * n + j]; }

  double max_distance() const;
  double min_positive_distance() const;  // 0 when all points coincide
  // One representative per group of coincident points (distance 0), ascending.
  std::vector<int> representatives() const;
  int distinct_point_count() const { return int(representatives().size()); }
};

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violation, with indices
};

// Checks dimensions, NaN/negativity, zero diagonal, symmetry, triangle
// inequality (tolerance 1e-9 * max entry) and 1 <= k < n.
ValidationReport validate_metric(const MetricInstance& inst);

MetricInstance metric_from_points(const std::vector<std::vector<double>>& pts, int k);

// Symmetric uniform draws in (0, scale], then all-pairs shortest-path closure.
MetricInstance gen_random_metric(int n, int k, std::uint64_t seed, double scale);

struct Solution {
  std::vector<int> centers;  // sorted, unique, size <= k
  std::vector<int> assign;   // assign[j] = serving center
  double cost = 0.0;         // filled by the solver under its weight vector
};

// Assigns every client to its nearest center, ties to the smaller center index.
Solution nearest_assignment(const MetricInstance& inst, std::vector<int> centers);
std::vector<double> assignment_costs(const MetricInstance& inst, const Solution& sol);

// Text format: line 1 "n k", line 2 "matrix" or "points d", then n data lines.
MetricInstance read_instance(std::istream& in);
MetricInstance read_instance_file(const std::string& path);
void write_instance_matrix(std::ostream& out, const MetricInstance& inst);
void write_instance_points(std::ostream& out, const std::vector<std::vector<double>>& pts,
                           int k);

// Weight spec: "centrum L", "kmedian", "kcenter", or n whitespace-separated
// reals. load_weights also accepts a path to a file holding such a spec.
std::vector<double> parse_weight_spec(const std::string& text, int n);
std::vector<double> load_weights(const std::string& path_or_spec, int n);

// Throws UsageError unless w is non-increasing, nonnegative and of length n.
void check_weights(const std::vector<double>& w, int n);

// True when every entry is exactly 0 or 1 (the centrum special case).
bool is_zero_one_weights(const std::vector<double>& w);

std::vector<double> centrum_weights(int n, int ell);

}  // namespace ordkm
