#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forge/algobank.hpp"
#include "forge/hypergraph.hpp"
#include "forge/profile.hpp"
#include "forge/random.hpp"
#include "json.hpp"

namespace forge {

enum class SurgeKind { Computational, Communication, Control };

std::string_view to_string(SurgeKind k);

// Multiplies the size draw (computational), the bytes of edges entering the
// band (communication) or the branch fraction (control) on levels
// [first_level, last_level].
struct SurgeSpec {
  SurgeKind kind = SurgeKind::Communication;
  int first_level = 1;
  int last_level = 1;
  double multiplier = 2.0;

  bool covers(int level) const { return level >= first_level && level <= last_level; }
  bool operator==(const SurgeSpec&) const = default;
};

struct WorkloadSpec {
  DistributionSpec num_levels = DistributionSpec::constant(3);
  DistributionSpec nodes_per_level = DistributionSpec::constant(1);
  DistributionSpec in_degree = DistributionSpec::constant(1);
  DistributionSpec out_degree = DistributionSpec::constant(1);
  std::map<std::string, double> algo_mix{{"gp_op", 1.0}};
  DistributionSpec size = DistributionSpec::constant(1);
  DistributionSpec bytes = DistributionSpec::constant(8);
  double branch_fraction = 0.0;
  DistributionSpec branch_probs = DistributionSpec::normal(0.5, 0.2);
  double locality_fraction = 0.0;
  std::vector<SurgeSpec> surges;
  std::uint64_t seed = 0;

  void validate(const AlgoBank& bank) const;
  // Product of the multipliers of every surge of `kind` covering `level`.
  double surge_factor(SurgeKind kind, int level) const;

  bool operator==(const WorkloadSpec&) const = default;
};

nlohmann::json to_json(const WorkloadSpec& s);
WorkloadSpec workload_spec_from_json(const nlohmann::json& doc);

// What generation had to bend to satisfy the graph invariants.
struct GenerationLog {
  std::uint64_t clamped_in_degree = 0;    // in-degree draws above the prior-level population
  std::uint64_t out_degree_overflow = 0;  // edges taken from predecessors already at capacity
  std::uint64_t fallback_edges = 0;       // added for vertices that drew in-degree 0
  std::uint64_t connectivity_edges = 0;   // added to join weak components
};

struct Generated {
  HyperGraph graph;
  GenerationLog log;
};

Generated generate(const WorkloadSpec& spec, const AlgoBank& bank);

// Level-wise computation table and directed level x level communication matrix.
ComplexityProfile profile(const HyperGraph& g, const AlgoBank& bank);

struct ConformanceCheck {
  std::string name;
  double expected_mean = 0.0;
  double empirical_mean = 0.0;
  double expected_variance = 0.0;
  double empirical_variance = 0.0;
  std::uint64_t samples = 0;
  bool advisory = false;  // reported, not part of the overall verdict
  bool pass = true;
  std::string note;
};

struct ConformanceReport {
  std::vector<ConformanceCheck> checks;
  GenerationLog log;
  double tolerance = 0.15;
  bool pass = true;
};

// Empirical distribution statistics of g against spec. Means pass when
// within tolerance * |expected mean| (exact match for zero-variance specs).
ConformanceReport verify_against_spec(const HyperGraph& g, const WorkloadSpec& spec, double tolerance = 0.15,
                                      const GenerationLog* log = nullptr);

// Pools the samples of several graphs generated from seeds of the same spec.
ConformanceReport verify_against_spec(const std::vector<Generated>& runs, const WorkloadSpec& spec,
                                      double tolerance = 0.15);

nlohmann::json to_json(const ConformanceReport& r);

}  // namespace forge
