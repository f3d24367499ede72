#include "forge/control_flow.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "forge/error.hpp"

namespace forge {

std::vector<double> sample_control_vector(std::size_t n, const DistributionSpec& dist, Rng& rng) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "control vectors need fan-out >= 2");
  dist.validate();
  std::vector<double> probs(n);
  double sum = 0.0;
  for (auto& p : probs) {
    p = std::clamp(dist.sample(rng), 0.0, 1.0);
    sum += p;
  }
  if (sum <= 0.0) throw Error(ErrorKind::DegenerateDistribution, "every control draw clamped to 0");
  for (auto& p : probs) p /= sum;
  return probs;
}

std::size_t resolve_path(std::span<const double> probs) {
  if (probs.size() < 2) throw Error(ErrorKind::InvalidArgument, "resolve_path needs at least two branches");
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  // -0.0 from one-hot vectors.
  return h <= 0.0 ? 0.0 : h;
}

double control_complexity(const HyperGraph& g, std::span<const ControlFlowVector> vectors) {
  std::set<std::size_t> branching;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    if (g.out_edges(v).size() > 1) branching.insert(v);
  }
  std::set<std::size_t> covered;
  double total = 0.0;
  for (const auto& cv : vectors) {
    const auto v = g.find(cv.vertex);
    if (!v || !branching.contains(*v) || !covered.insert(*v).second)
      throw Error(ErrorKind::CoverageMismatch, "control vector for '" + cv.vertex + "' is not a unique branch point");
    if (cv.probs.size() != g.out_edges(*v).size())
      throw Error(ErrorKind::CoverageMismatch, "control vector for '" + cv.vertex + "' has the wrong arity");
    total += entropy_bits(cv.probs);
  }
  if (covered.size() != branching.size())
    throw Error(ErrorKind::CoverageMismatch, std::to_string(branching.size() - covered.size()) +
                                                 " branch vertices lack a control vector");
  return total;
}

}  // namespace forge
