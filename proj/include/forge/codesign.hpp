#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/algobank.hpp"
#include "forge/hypergraph.hpp"
#include "json.hpp"

namespace forge {

template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
  }
  std::vector<std::vector<T>> rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(row(i));
    return out;
  }
  static SquareMatrix from_rows(const std::vector<std::vector<T>>& rows);

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <class T>
SquareMatrix<T> SquareMatrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix rows must form a square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// Bytes exchanged between ALFU instances (graph vertices, canonical order).
struct AffinityMatrix {
  std::vector<std::string> units;
  SquareMatrix<double> bytes;
};

AffinityMatrix build_affinity(const HyperGraph& g);

struct CoreTypePlan {
  int k = 1;
  std::vector<int> assignment;                      // unit index -> core type
  std::vector<std::pair<int, double>> wcss_curve;  // (k, WCSS) for k = 1..k_max
  bool elbow_selected = true;                       // false when k was forced
  bool degenerate = false;                          // every affinity row identical
  std::vector<std::string> units;
};

struct ClusterOptions {
  int k_max = 10;
  std::uint64_t seed = 0;
  std::optional<int> forced_k;  // skips elbow selection
  int restarts = 10;
  int max_iterations = 300;
  double tolerance = 1e-6;
};

// k-means (k-means++ seeding) over affinity rows for every k in 1..k_max,
// keeping the best of `restarts` runs per k, then elbow selection at the
// largest second difference of the WCSS curve.
CoreTypePlan cluster_cores(const AffinityMatrix& a, const ClusterOptions& options);

// k* from a non-increasing WCSS curve (index 0 is k = 1).
int select_elbow(const std::vector<double>& wcss);

struct InterCoreMatrix {
  SquareMatrix<std::uint64_t> bytes;   // symmetric, zero diagonal
  std::vector<std::uint64_t> intra;    // bytes on edges inside each core
};

// Requires plan.units to be exactly the vertices of g (CoverageMismatch).
InterCoreMatrix inter_core_matrix(const HyperGraph& g, const CoreTypePlan& plan);

// Greedy dense-block agglomeration. A block's density is the mean over all
// |S|^2 entries of its sub-matrix (zero diagonal included); cores are
// absorbed while density >= density_thresh * mean nonzero off-diagonal
// entry of the whole matrix.
std::vector<std::vector<int>> partition_matrix(const SquareMatrix<std::uint64_t>& m, double density_thresh);

double block_density(const SquareMatrix<std::uint64_t>& m, const std::vector<int>& block);
double mean_nonzero_entry(const SquareMatrix<std::uint64_t>& m);

struct MeshPartition {
  std::vector<int> cores;
  std::uint64_t bytes = 0;
  std::uint64_t switches = 1;
  std::uint64_t rows = 1;
  std::uint64_t cols = 1;
};

struct MeshPlan {
  std::uint64_t switch_bytes = 1;
  std::vector<MeshPartition> partitions;
};

// switches = max(1, ceil(b / s)); shape r = floor(sqrt(switches)), c = ceil(switches / r).
MeshPlan size_mesh(const std::vector<std::vector<int>>& partitions, const SquareMatrix<std::uint64_t>& m,
                   std::uint64_t switch_bytes);

struct CodesignResult {
  CoreTypePlan plan;
  InterCoreMatrix cores;
  std::vector<std::vector<int>> partitions;
  MeshPlan mesh;
};

struct CodesignOptions {
  ClusterOptions cluster;
  double density_thresh = 1.5;
  std::uint64_t switch_bytes = 64;
};

CodesignResult run_codesign(const HyperGraph& g, const CodesignOptions& options);

nlohmann::json to_json(const CodesignResult& r);
CodesignResult codesign_from_json(const nlohmann::json& doc);
std::string inter_core_csv(const InterCoreMatrix& m);

}  // namespace forge
