#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace forge {

enum class AlgoClass { Numeric, SemiNumeric, NonNumeric, GeneralPurpose };

// Closed-form cost family. Each family is the operation count of one naive
// reference implementation:
//
//   matmul       2n^3 - n^2          n^2 dot products of n mults, n-1 adds
//   matadd       n^2                 elementwise adds
//   mattrans     0                   n^2 element moves, no arithmetic
//   elimination  n(n-1)/2 + (n-1)n(2n-1)/3
//                                    Doolittle elimination: one division per
//                                    sub-pivot row, one mul + one sub per
//                                    updated element; leading term (2/3)n^3
//   prim         n^2                 dense Prim: n rounds scanning n keys
//   nearest      n^2                 nearest-neighbour tour: n rounds x n cities
//   mergesort    n * ceil(log2 n)    bottom-up merge sort element moves
//   scalar       1                   one binary general-purpose op
//   loop         n * indexed_vars    one address per indexed variable per
//                                    iteration, n = iteration bound
//   polynomial   sum c_i n^i         user-supplied, coefficients >= 0
enum class CostKind {
  Matmul,
  Matadd,
  Mattrans,
  Elimination,
  Prim,
  Nearest,
  MergeSort,
  Scalar,
  Loop,
  Polynomial,
};

std::string_view to_string(AlgoClass c);
std::string_view to_string(CostKind k);

struct AlgoEntry {
  std::string id;
  AlgoClass algo_class = AlgoClass::GeneralPurpose;
  CostKind cost_kind = CostKind::Scalar;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t elem_bytes = 8;

  // Abstract operation count for instance size n.
  double compute_cost(std::int64_t n) const;
  // Operand reads inside the algorithm's dataflow graph.
  double internal_fanin(std::int64_t n) const;
  // Edges leaving values that are consumed more than once.
  double internal_fanout(std::int64_t n) const;
  std::uint64_t output_bytes(std::int64_t n) const;

  void validate() const;
};

class AlgoBank {
 public:
  AlgoBank() = default;

  // The built-in repertoire: matmul, matadd, mattrans, matinv, matmul2,
  // matadd2, lud, mst, tsp, sort, gp_op plus two loop models.
  static AlgoBank builtin();

  // Built-ins overlaid with the entries of a bank file.
  static AlgoBank load(const std::filesystem::path& path);
  static AlgoBank from_json(const nlohmann::json& doc, AlgoBank base = builtin());
  nlohmann::json to_json() const;

  const AlgoEntry& lookup(std::string_view id) const;
  bool contains(std::string_view id) const;
  void insert(AlgoEntry entry);

  std::vector<std::string> ids() const;
  const std::map<std::string, AlgoEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, AlgoEntry, std::less<>> entries_;
};

// Throws InvalidSize when n < 1.
double eval_cost(const AlgoEntry& entry, std::int64_t n);

// Largest n in [1, n_cap] with compute_cost(n) <= budget, or 0 when even
// n = 1 exceeds the budget. compute_cost is non-decreasing so this is a
// plain binary search.
std::int64_t max_size_within(const AlgoEntry& entry, double budget, std::int64_t n_cap = 1 << 20);

}  // namespace forge
