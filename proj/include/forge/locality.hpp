#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "forge/algobank.hpp"
#include "forge/random.hpp"
#include "json.hpp"

namespace forge {

// Address function of one indexed variable:
//   addr = base_coeff * cursor + step_coeff * step + offset
struct AffineIndex {
  std::int64_t base_coeff = 1;
  std::int64_t step_coeff = 0;
  std::int64_t offset = 0;

  bool operator==(const AffineIndex&) const = default;
};

// Randomized loop
//
//   for (cursor = a; cursor + b < c && count < max_iterations; cursor += b)
//     Z_k[f_k(cursor, b)] for k in 0..indexed_vars-1
//
// a and c are drawn once per loop instance, the increment b is redrawn every
// iteration. Unless var_index overrides them, f_k(cursor, b) = cursor +
// k * block_words, placing each variable in its own block.
struct LoopModel {
  DistributionSpec start = DistributionSpec::constant(0);
  DistributionSpec step = DistributionSpec::constant(1);
  DistributionSpec end = DistributionSpec::constant(1024);
  std::int64_t max_iterations = 1 << 20;
  std::int64_t indexed_vars = 1;
  std::int64_t block_words = 8;
  std::vector<AffineIndex> var_index;

  void validate() const;
  AffineIndex index_function(std::int64_t var) const;
};

using AddressTrace = std::vector<std::uint64_t>;

AddressTrace generate_trace(const LoopModel& model, std::uint64_t seed);

// LRU stack-distance histogram over block addresses (address / block_words).
// `cold` counts first touches (infinite distance).
struct ReuseHistogram {
  std::map<std::uint64_t, std::uint64_t> finite;
  std::uint64_t cold = 0;

  std::uint64_t total() const;
  std::uint64_t finite_count() const;
  // Mean of the finite distances, 0 when there are none.
  double mean_finite() const;

  bool operator==(const ReuseHistogram&) const = default;
};

ReuseHistogram reuse_distance_histogram(std::span<const std::uint64_t> trace, std::uint64_t block_words);

LoopModel loop_model_from_json(const nlohmann::json& params);
nlohmann::json to_json(const LoopModel& m);
nlohmann::json to_json(const ReuseHistogram& h);
// Throws SchemaMismatch.
ReuseHistogram reuse_histogram_from_json(const nlohmann::json& doc);

// The loop model carried by a bank entry of cost kind `loop`; the vertex
// size bounds the iteration count.
LoopModel loop_model_from_entry(const AlgoEntry& entry, std::int64_t size);

}  // namespace forge
