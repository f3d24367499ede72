#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace forge {

// Seeded random source bound to a named substream.
//
// All sampling is derived from raw std::mt19937_64 output (whose sequence is
// fixed by the standard) through the transforms below, so a (seed, stream)
// pair yields the same values on every platform and standard library:
//
//   stream seed  = splitmix64(seed ^ splitmix64(fnv1a64(stream)))
//   uniform01    = (next() >> 11) * 2^-53                       in [0, 1)
//   uniform_int  = lo + r % span, rejecting r >= 2^64 - (2^64 % span)
//   normal       = mu + sigma * sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
//                  (one Box-Muller draw per call, no cached pair)
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next() { return engine_(); }
  double uniform01();
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal(double mean, double stddev);
  bool bernoulli(double p) { return uniform01() < p; }

  // Index drawn proportionally to non-negative weights; at least one weight
  // must be positive.
  std::size_t weighted_index(const std::vector<double>& weights);

  // Child stream, e.g. one per retry attempt.
  Rng fork(std::string_view stream);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

enum class DistributionKind { Constant, UniformInt, Normal, Zipf };

// Descriptor for every customizable quantity.
//   constant    params = [value]
//   uniform_int params = [lo, hi]          (inclusive, lo <= hi)
//   normal      params = [mean, stddev]    (stddev >= 0)
//   zipf        params = [s, n]            (P(k) ~ k^-s over k = 1..n, s > 0)
struct DistributionSpec {
  DistributionKind kind = DistributionKind::Constant;
  std::vector<double> params{0.0};

  static DistributionSpec constant(double value);
  static DistributionSpec uniform_int(double lo, double hi);
  static DistributionSpec normal(double mean, double stddev);
  static DistributionSpec zipf(double s, double n);

  void validate() const;

  double sample(Rng& rng) const;
  // Rounded draw clamped below at min_value.
  std::int64_t sample_int(Rng& rng, std::int64_t min_value) const;

  double mean() const;
  double variance() const;
  bool degenerate() const { return variance() == 0.0; }

  // Same family with its location scaled by factor (used by surges).
  DistributionSpec scaled(double factor) const;

  bool operator==(const DistributionSpec&) const = default;
};

void to_json(nlohmann::json& j, const DistributionSpec& d);
void from_json(const nlohmann::json& j, DistributionSpec& d);

}  // namespace forge
