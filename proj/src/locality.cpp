#include "forge/locality.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "forge/error.hpp"

namespace forge {

void LoopModel::validate() const {
  start.validate();
  step.validate();
  end.validate();
  if (max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "loop max_iterations must be >= 1");
  if (indexed_vars < 1) throw Error(ErrorKind::InvalidArgument, "loop indexed_vars must be >= 1");
  if (block_words < 1) throw Error(ErrorKind::InvalidArgument, "loop block_words must be >= 1");
  if (!var_index.empty() && static_cast<std::int64_t>(var_index.size()) != indexed_vars)
    throw Error(ErrorKind::InvalidArgument, "loop var_index must have one entry per indexed variable");
}

AffineIndex LoopModel::index_function(std::int64_t var) const {
  if (!var_index.empty()) return var_index[static_cast<std::size_t>(var)];
  return {1, 0, var * block_words};
}

AddressTrace generate_trace(const LoopModel& model, std::uint64_t seed) {
  model.validate();
  Rng start_rng(seed, "loop/start");
  Rng step_rng(seed, "loop/step");
  Rng end_rng(seed, "loop/end");
  constexpr auto kNoFloor = std::numeric_limits<std::int64_t>::min();

  std::int64_t cursor = model.start.sample_int(start_rng, 0);
  const std::int64_t limit = model.end.sample_int(end_rng, 0);
  std::int64_t b = model.step.sample_int(step_rng, kNoFloor);

  std::vector<AffineIndex> fns;
  for (std::int64_t k = 0; k < model.indexed_vars; ++k) fns.push_back(model.index_function(k));

  AddressTrace trace;
  for (std::int64_t count = 0; cursor + b < limit && count < model.max_iterations; ++count) {
    for (const auto& f : fns) {
      const std::int64_t addr = f.base_coeff * cursor + f.step_coeff * b + f.offset;
      trace.push_back(static_cast<std::uint64_t>(std::max<std::int64_t>(addr, 0)));
    }
    cursor = std::max<std::int64_t>(cursor + b, 0);
    b = model.step.sample_int(step_rng, kNoFloor);
  }
  return trace;
}

std::uint64_t ReuseHistogram::total() const { return cold + finite_count(); }

std::uint64_t ReuseHistogram::finite_count() const {
  std::uint64_t n = 0;
  for (const auto& [_, c] : finite) n += c;
  return n;
}

double ReuseHistogram::mean_finite() const {
  const auto n = finite_count();
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [d, c] : finite) acc += static_cast<double>(d) * static_cast<double>(c);
  return acc / static_cast<double>(n);
}

namespace {

// Fenwick tree over access timestamps; a 1 marks the latest access of a block.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i, std::int64_t delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  std::int64_t prefix(std::size_t i) const {  // sum of [0, i)
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace

ReuseHistogram reuse_distance_histogram(std::span<const std::uint64_t> trace, std::uint64_t block_words) {
  if (block_words < 1) throw Error(ErrorKind::InvalidArgument, "block_words must be >= 1");
  ReuseHistogram h;
  Fenwick live(trace.size());
  std::unordered_map<std::uint64_t, std::size_t> last;
  last.reserve(trace.size());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const std::uint64_t block = trace[t] / block_words;
    auto [it, fresh] = last.try_emplace(block, t);
    if (fresh) {
      ++h.cold;
    } else {
      const std::size_t prev = it->second;
      // Distinct blocks touched strictly between the two accesses.
      const auto d = live.prefix(t) - live.prefix(prev + 1);
      ++h.finite[static_cast<std::uint64_t>(d)];
      live.add(prev, -1);
      it->second = t;
    }
    live.add(t, 1);
  }
  return h;
}

LoopModel loop_model_from_json(const nlohmann::json& params) {
  LoopModel m;
  try {
    if (params.contains("start")) m.start = params["start"].get<DistributionSpec>();
    if (params.contains("step")) m.step = params["step"].get<DistributionSpec>();
    if (params.contains("end")) m.end = params["end"].get<DistributionSpec>();
    m.max_iterations = params.value("max_iterations", m.max_iterations);
    m.indexed_vars = params.value("indexed_vars", m.indexed_vars);
    m.block_words = params.value("block_words", m.block_words);
    for (const auto& f : params.value("var_index", nlohmann::json::array())) {
      m.var_index.push_back({f.value("base_coeff", std::int64_t{1}), f.value("step_coeff", std::int64_t{0}),
                             f.value("offset", std::int64_t{0})});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("loop model: ") + e.what());
  }
  m.validate();
  return m;
}

nlohmann::json to_json(const LoopModel& m) {
  nlohmann::json j = {{"start", m.start},
                      {"step", m.step},
                      {"end", m.end},
                      {"max_iterations", m.max_iterations},
                      {"indexed_vars", m.indexed_vars},
                      {"block_words", m.block_words}};
  if (!m.var_index.empty()) {
    auto& arr = j["var_index"] = nlohmann::json::array();
    for (const auto& f : m.var_index)
      arr.push_back({{"base_coeff", f.base_coeff}, {"step_coeff", f.step_coeff}, {"offset", f.offset}});
  }
  return j;
}

nlohmann::json to_json(const ReuseHistogram& h) {
  nlohmann::json finite = nlohmann::json::array();
  for (const auto& [d, c] : h.finite) finite.push_back({{"distance", d}, {"count", c}});
  return {{"cold", h.cold}, {"finite", finite}, {"mean_finite", h.mean_finite()}};
}

ReuseHistogram reuse_histogram_from_json(const nlohmann::json& doc) {
  ReuseHistogram h;
  try {
    h.cold = doc.at("cold").get<std::uint64_t>();
    for (const auto& row : doc.at("finite"))
      h.finite[row.at("distance").get<std::uint64_t>()] = row.at("count").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("reuse histogram: ") + e.what());
  }
  return h;
}

LoopModel loop_model_from_entry(const AlgoEntry& entry, std::int64_t size) {
  if (entry.cost_kind != CostKind::Loop)
    throw Error(ErrorKind::InvalidArgument, "algorithm '" + entry.id + "' is not a loop model");
  if (size < 1) throw Error(ErrorKind::InvalidSize, "size must be >= 1");
  LoopModel m = loop_model_from_json(entry.params);
  m.max_iterations = size;
  return m;
}

}  // namespace forge
