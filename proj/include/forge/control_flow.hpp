#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "forge/hypergraph.hpp"
#include "forge/random.hpp"

namespace forge {

// n draws from dist, clamped to [0, 1] and normalized to sum 1.
// Throws DegenerateDistribution when every draw clamps to 0.
std::vector<double> sample_control_vector(std::size_t n, const DistributionSpec& dist, Rng& rng);

// Index of the highest probability; the lowest index wins ties.
std::size_t resolve_path(std::span<const double> probs);

// Sum of Shannon entropies (bits) of the branch vectors. The vectors must
// cover exactly the vertices of g with fan-out > 1, else CoverageMismatch.
double control_complexity(const HyperGraph& g, std::span<const ControlFlowVector> vectors);
inline double control_complexity(const HyperGraph& g) { return control_complexity(g, g.control()); }

double entropy_bits(std::span<const double> probs);

}  // namespace forge
