#include "forge/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "forge/error.hpp"

namespace forge {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  return splitmix64(seed ^ splitmix64(fnv1a64(stream)));
}

Rng::Rng(std::uint64_t seed, std::string_view stream)
    : seed_(derive_seed(seed, stream)), engine_(seed_) {}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "uniform_int: lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % span + 1) % span;
  std::uint64_t r = next();
  while (r > limit) r = next();
  return lo + static_cast<std::int64_t>(r % span);
}

double Rng::normal(double mean, double stddev) {
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

std::size_t Rng::weighted_index(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "weighted_index: no positive weight");
  const double target = uniform01() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

Rng Rng::fork(std::string_view stream) { return Rng(seed_, stream); }

// ---------------------------------------------------------------------------

DistributionSpec DistributionSpec::constant(double value) {
  return {DistributionKind::Constant, {value}};
}
DistributionSpec DistributionSpec::uniform_int(double lo, double hi) {
  return {DistributionKind::UniformInt, {lo, hi}};
}
DistributionSpec DistributionSpec::normal(double mean, double stddev) {
  return {DistributionKind::Normal, {mean, stddev}};
}
DistributionSpec DistributionSpec::zipf(double s, double n) {
  return {DistributionKind::Zipf, {s, n}};
}

namespace {

std::string_view kind_name(DistributionKind k) {
  switch (k) {
    case DistributionKind::Constant: return "constant";
    case DistributionKind::UniformInt: return "uniform_int";
    case DistributionKind::Normal: return "normal";
    case DistributionKind::Zipf: return "zipf";
  }
  return "?";
}

void expect_params(const DistributionSpec& d, std::size_t n) {
  if (d.params.size() != n) {
    throw Error(ErrorKind::InvalidArgument, std::string(kind_name(d.kind)) + " distribution takes " +
                                                std::to_string(n) + " params");
  }
  for (double p : d.params) {
    if (!std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "non-finite distribution parameter");
  }
}

// Support size of a zipf descriptor.
std::int64_t zipf_n(const DistributionSpec& d) { return static_cast<std::int64_t>(d.params[1]); }

}  // namespace

void DistributionSpec::validate() const {
  switch (kind) {
    case DistributionKind::Constant:
      expect_params(*this, 1);
      break;
    case DistributionKind::UniformInt:
      expect_params(*this, 2);
      if (params[0] > params[1]) throw Error(ErrorKind::InvalidArgument, "uniform_int requires lo <= hi");
      if (params[0] != std::floor(params[0]) || params[1] != std::floor(params[1]))
        throw Error(ErrorKind::InvalidArgument, "uniform_int bounds must be integers");
      break;
    case DistributionKind::Normal:
      expect_params(*this, 2);
      if (params[1] < 0.0) throw Error(ErrorKind::InvalidArgument, "normal requires stddev >= 0");
      break;
    case DistributionKind::Zipf:
      expect_params(*this, 2);
      if (!(params[0] > 0.0)) throw Error(ErrorKind::InvalidArgument, "zipf requires s > 0");
      if (params[1] < 1.0 || params[1] != std::floor(params[1]))
        throw Error(ErrorKind::InvalidArgument, "zipf requires integer n >= 1");
      break;
  }
}

double DistributionSpec::sample(Rng& rng) const {
  switch (kind) {
    case DistributionKind::Constant:
      return params[0];
    case DistributionKind::UniformInt:
      return static_cast<double>(
          rng.uniform_int(static_cast<std::int64_t>(params[0]), static_cast<std::int64_t>(params[1])));
    case DistributionKind::Normal:
      return rng.normal(params[0], params[1]);
    case DistributionKind::Zipf: {
      const std::int64_t n = zipf_n(*this);
      double norm = 0.0;
      for (std::int64_t k = 1; k <= n; ++k) norm += std::pow(static_cast<double>(k), -params[0]);
      const double target = rng.uniform01() * norm;
      double acc = 0.0;
      for (std::int64_t k = 1; k <= n; ++k) {
        acc += std::pow(static_cast<double>(k), -params[0]);
        if (target < acc) return static_cast<double>(k);
      }
      return static_cast<double>(n);
    }
  }
  return 0.0;
}

std::int64_t DistributionSpec::sample_int(Rng& rng, std::int64_t min_value) const {
  const double x = sample(rng);
  const auto v = static_cast<std::int64_t>(std::llround(x));
  return v < min_value ? min_value : v;
}

double DistributionSpec::mean() const {
  switch (kind) {
    case DistributionKind::Constant: return params[0];
    case DistributionKind::UniformInt: return 0.5 * (params[0] + params[1]);
    case DistributionKind::Normal: return params[0];
    case DistributionKind::Zipf: {
      double num = 0.0, den = 0.0;
      for (std::int64_t k = 1; k <= zipf_n(*this); ++k) {
        const double w = std::pow(static_cast<double>(k), -params[0]);
        num += static_cast<double>(k) * w;
        den += w;
      }
      return num / den;
    }
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  switch (kind) {
    case DistributionKind::Constant: return 0.0;
    case DistributionKind::UniformInt: {
      const double span = params[1] - params[0] + 1.0;
      return (span * span - 1.0) / 12.0;
    }
    case DistributionKind::Normal: return params[1] * params[1];
    case DistributionKind::Zipf: {
      const double m = mean();
      double num = 0.0, den = 0.0;
      for (std::int64_t k = 1; k <= zipf_n(*this); ++k) {
        const double w = std::pow(static_cast<double>(k), -params[0]);
        num += (static_cast<double>(k) - m) * (static_cast<double>(k) - m) * w;
        den += w;
      }
      return num / den;
    }
  }
  return 0.0;
}

DistributionSpec DistributionSpec::scaled(double factor) const {
  DistributionSpec out = *this;
  switch (kind) {
    case DistributionKind::Constant: out.params[0] *= factor; break;
    case DistributionKind::UniformInt:
      out.params[0] = std::round(out.params[0] * factor);
      out.params[1] = std::round(out.params[1] * factor);
      break;
    case DistributionKind::Normal:
      out.params[0] *= factor;
      out.params[1] *= factor;
      break;
    // zipf stays a rank distribution; callers multiply its draws instead.
    case DistributionKind::Zipf: break;
  }
  return out;
}

void to_json(nlohmann::json& j, const DistributionSpec& d) {
  j = nlohmann::json{{"kind", kind_name(d.kind)}, {"params", d.params}};
}

void from_json(const nlohmann::json& j, DistributionSpec& d) {
  if (j.is_number()) {
    d = DistributionSpec::constant(j.get<double>());
    return;
  }
  if (!j.is_object() || !j.contains("kind"))
    throw Error(ErrorKind::SchemaMismatch, "distribution must be a number or {kind, params}");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") d.kind = DistributionKind::Constant;
  else if (kind == "uniform_int" || kind == "uniform") d.kind = DistributionKind::UniformInt;
  else if (kind == "normal") d.kind = DistributionKind::Normal;
  else if (kind == "zipf") d.kind = DistributionKind::Zipf;
  else throw Error(ErrorKind::SchemaMismatch, "unknown distribution kind '" + kind + "'");
  d.params = j.value("params", std::vector<double>{});
  d.validate();
}

}  // namespace forge
