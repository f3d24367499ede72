#include "forge/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>

#include "forge/control_flow.hpp"
#include "forge/error.hpp"

namespace forge {

std::string_view to_string(SurgeKind k) {
  switch (k) {
    case SurgeKind::Computational: return "computational";
    case SurgeKind::Communication: return "communication";
    case SurgeKind::Control: return "control";
  }
  return "?";
}

namespace {

SurgeKind parse_surge_kind(const std::string& s) {
  if (s == "computational") return SurgeKind::Computational;
  if (s == "communication") return SurgeKind::Communication;
  if (s == "control") return SurgeKind::Control;
  throw Error(ErrorKind::SchemaMismatch, "unknown surge kind '" + s + "'");
}

std::string vertex_name(int level, std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "L%03d_%04zu", level, index);
  return buf;
}

// Predecessors already at their sampled out-degree stay eligible at this
// relative weight so in-degree draws can still be honoured.
constexpr double kOverflowWeight = 0.01;

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

void WorkloadSpec::validate(const AlgoBank& bank) const {
  for (const auto* d : {&num_levels, &nodes_per_level, &in_degree, &out_degree, &size, &bytes, &branch_probs})
    d->validate();
  if (algo_mix.empty()) throw Error(ErrorKind::InvalidArgument, "algo_mix must not be empty");
  for (const auto& [id, w] : algo_mix) {
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "algo_mix weight for '" + id + "' must be positive");
    bank.lookup(id);
  }
  if (!(branch_fraction >= 0.0 && branch_fraction <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "branch_fraction must lie in [0,1]");
  if (!(locality_fraction >= 0.0 && locality_fraction <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "locality_fraction must lie in [0,1]");
  if (locality_fraction > 0.0) {
    const bool any_loop = std::any_of(bank.entries().begin(), bank.entries().end(),
                                      [](const auto& kv) { return kv.second.cost_kind == CostKind::Loop; });
    if (!any_loop) throw Error(ErrorKind::InfeasibleSpec, "locality_fraction > 0 but the bank has no loop models");
  }
  for (const auto& s : surges) {
    if (s.first_level < 1 || s.last_level < s.first_level)
      throw Error(ErrorKind::InvalidArgument, "surge level band must satisfy 1 <= first <= last");
    if (!(s.multiplier > 1.0)) throw Error(ErrorKind::InvalidArgument, "surge multiplier must exceed 1");
  }
}

double WorkloadSpec::surge_factor(SurgeKind kind, int level) const {
  double f = 1.0;
  for (const auto& s : surges) {
    if (s.kind == kind && s.covers(level)) f *= s.multiplier;
  }
  return f;
}

nlohmann::json to_json(const WorkloadSpec& s) {
  nlohmann::json surges = nlohmann::json::array();
  for (const auto& x : s.surges)
    surges.push_back({{"kind", to_string(x.kind)}, {"levels", {x.first_level, x.last_level}}, {"multiplier", x.multiplier}});
  return {{"num_levels", s.num_levels},
          {"nodes_per_level", s.nodes_per_level},
          {"in_degree", s.in_degree},
          {"out_degree", s.out_degree},
          {"algo_mix", s.algo_mix},
          {"size", s.size},
          {"bytes", s.bytes},
          {"branch_fraction", s.branch_fraction},
          {"branch_probs", s.branch_probs},
          {"locality_fraction", s.locality_fraction},
          {"surges", surges},
          {"seed", s.seed}};
}

WorkloadSpec workload_spec_from_json(const nlohmann::json& doc) {
  WorkloadSpec s;
  try {
    if (!doc.is_object()) throw Error(ErrorKind::SchemaMismatch, "workload spec must be a JSON object");
    const auto dist = [&](const char* key, DistributionSpec& out) {
      if (doc.contains(key)) out = doc[key].get<DistributionSpec>();
    };
    dist("num_levels", s.num_levels);
    dist("nodes_per_level", s.nodes_per_level);
    dist("in_degree", s.in_degree);
    dist("out_degree", s.out_degree);
    dist("size", s.size);
    dist("bytes", s.bytes);
    dist("branch_probs", s.branch_probs);
    if (doc.contains("algo_mix")) s.algo_mix = doc["algo_mix"].get<std::map<std::string, double>>();
    s.branch_fraction = doc.value("branch_fraction", s.branch_fraction);
    s.locality_fraction = doc.value("locality_fraction", s.locality_fraction);
    s.seed = doc.value("seed", s.seed);
    for (const auto& x : doc.value("surges", nlohmann::json::array())) {
      const auto band = x.at("levels").get<std::vector<int>>();
      if (band.size() != 2) throw Error(ErrorKind::SchemaMismatch, "surge levels must be [first, last]");
      s.surges.push_back({parse_surge_kind(x.at("kind").get<std::string>()), band[0], band[1],
                          x.at("multiplier").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("workload spec: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------

Generated generate(const WorkloadSpec& spec, const AlgoBank& bank) {
  spec.validate(bank);
  GenerationLog log;

  Rng levels_rng(spec.seed, "levels");
  Rng nodes_rng(spec.seed, "nodes");
  Rng algo_rng(spec.seed, "algo");
  Rng locality_rng(spec.seed, "locality");
  Rng size_rng(spec.seed, "size");
  Rng indeg_rng(spec.seed, "in_degree");
  Rng outdeg_rng(spec.seed, "out_degree");
  Rng pred_rng(spec.seed, "predecessors");
  Rng bytes_rng(spec.seed, "bytes");
  Rng branch_rng(spec.seed, "branch");
  Rng control_rng(spec.seed, "control");

  const auto num_levels = static_cast<int>(spec.num_levels.sample_int(levels_rng, 1));

  std::vector<std::string> mix_ids;
  std::vector<double> mix_weights;
  for (const auto& [id, w] : spec.algo_mix) {
    mix_ids.push_back(id);
    mix_weights.push_back(w);
  }
  std::vector<std::string> loop_ids;
  for (const auto& [id, e] : bank.entries()) {
    if (e.cost_kind == CostKind::Loop) loop_ids.push_back(id);
  }

  // (1)-(2) vertices
  std::vector<HyperVertex> vertices;
  std::vector<std::size_t> level_begin;  // first vertex index of each level, plus end sentinel
  for (int level = 1; level <= num_levels; ++level) {
    const auto count = static_cast<std::int64_t>(std::llround(spec.nodes_per_level.sample(nodes_rng)));
    if (count < 1)
      throw Error(ErrorKind::InfeasibleSpec, "nodes_per_level drew " + std::to_string(count) + " for level " +
                                                 std::to_string(level) + "; levels must not be empty");
    level_begin.push_back(vertices.size());
    const double size_factor = spec.surge_factor(SurgeKind::Computational, level);
    for (std::int64_t k = 0; k < count; ++k) {
      HyperVertex v;
      v.id = vertex_name(level, static_cast<std::size_t>(k));
      v.level = level;
      if (spec.locality_fraction > 0.0 && locality_rng.bernoulli(spec.locality_fraction)) {
        v.algo = loop_ids[static_cast<std::size_t>(
            locality_rng.uniform_int(0, static_cast<std::int64_t>(loop_ids.size()) - 1))];
      } else {
        v.algo = mix_ids[algo_rng.weighted_index(mix_weights)];
      }
      const double draw = spec.size.sample(size_rng) * size_factor;
      v.size = std::max<std::int64_t>(1, std::llround(draw));
      vertices.push_back(std::move(v));
    }
  }
  level_begin.push_back(vertices.size());

  std::vector<std::int64_t> capacity(vertices.size());
  for (auto& c : capacity) c = spec.out_degree.sample_int(outdeg_rng, 0);

  std::vector<HyperEdge> edges;
  DisjointSet components(vertices.size());
  const auto draw_bytes = [&](int dst_level) {
    const double draw = spec.bytes.sample(bytes_rng) * spec.surge_factor(SurgeKind::Communication, dst_level);
    return static_cast<std::uint64_t>(std::max<std::int64_t>(1, std::llround(draw)));
  };
  const auto connect = [&](std::size_t u, std::size_t v) {
    edges.push_back({vertices[u].id, vertices[v].id, draw_bytes(vertices[v].level)});
    components.unite(u, v);
  };
  const auto take = [&](std::size_t u) {
    if (capacity[u] > 0) --capacity[u];
    else ++log.out_degree_overflow;
  };

  // (3) wiring, predecessors weighted by 1 / level gap
  for (int level = 2; level <= num_levels; ++level) {
    const std::size_t population = level_begin[static_cast<std::size_t>(level - 1)];
    for (std::size_t v = level_begin[static_cast<std::size_t>(level - 1)];
         v < level_begin[static_cast<std::size_t>(level)]; ++v) {
      auto k = spec.in_degree.sample_int(indeg_rng, 0);
      if (static_cast<std::size_t>(k) > population) {
        k = static_cast<std::int64_t>(population);
        ++log.clamped_in_degree;
      }
      if (k == 0) {
        const auto lo = static_cast<std::int64_t>(level_begin[static_cast<std::size_t>(level - 2)]);
        const auto u = static_cast<std::size_t>(pred_rng.uniform_int(lo, static_cast<std::int64_t>(population) - 1));
        take(u);
        connect(u, v);
        ++log.fallback_edges;
        continue;
      }
      std::vector<double> weights(population);
      for (std::size_t u = 0; u < population; ++u) {
        const double gap = static_cast<double>(level - vertices[u].level);
        weights[u] = (capacity[u] > 0 ? 1.0 : kOverflowWeight) / gap;
      }
      for (std::int64_t t = 0; t < k; ++t) {
        const auto u = pred_rng.weighted_index(weights);
        weights[u] = 0.0;
        take(u);
        connect(u, v);
      }
    }
  }

  // Join leftover weak components to the one holding vertex 0, preferring an
  // adjacent level.
  if (num_levels > 1) {
    for (std::size_t u = 0; u < vertices.size(); ++u) {
      if (components.find(u) == components.find(0)) continue;
      std::optional<std::size_t> partner;
      for (std::size_t w = 0; w < vertices.size(); ++w) {
        if (components.find(w) != components.find(0)) continue;
        const int gap = std::abs(vertices[w].level - vertices[u].level);
        if (gap == 0) continue;
        if (!partner || gap < std::abs(vertices[*partner].level - vertices[u].level)) partner = w;
        if (gap == 1) break;
      }
      if (!partner) continue;
      const auto [lo, hi] = vertices[u].level < vertices[*partner].level ? std::pair{u, *partner}
                                                                          : std::pair{*partner, u};
      take(lo);
      connect(lo, hi);
      ++log.connectivity_edges;
    }
  }

  HyperGraph graph(std::move(vertices), std::move(edges));

  // (4) control-flow vectors on fan-out vertices
  std::vector<ControlFlowVector> control;
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    const auto fanout = graph.out_edges(v).size();
    if (fanout < 2) continue;
    const int level = graph.vertices()[v].level;
    const double p = std::min(1.0, spec.branch_fraction * spec.surge_factor(SurgeKind::Control, level));
    if (!branch_rng.bernoulli(p)) continue;
    control.push_back({graph.vertices()[v].id, sample_control_vector(fanout, spec.branch_probs, control_rng)});
  }
  if (!control.empty()) graph = graph.with_control(std::move(control));
  return {std::move(graph), log};
}

ComplexityProfile profile(const HyperGraph& g, const AlgoBank& bank) {
  const auto L = static_cast<std::size_t>(g.num_levels());
  ComplexityProfile p;
  p.communication_matrix.assign(L, std::vector<double>(L, 0.0));
  const auto levels = g.levels();
  for (std::size_t l = 0; l < L; ++l) {
    TableRow row;
    row.level = static_cast<int>(l) + 1;
    std::set<std::string> alfus;
    for (auto v : levels[l]) {
      const auto& vx = g.vertices()[v];
      row.complexity += eval_cost(bank.lookup(vx.algo), vx.size);
      alfus.insert(vx.algo);
    }
    row.alfus.assign(alfus.begin(), alfus.end());
    p.computation_table.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto from = static_cast<std::size_t>(g.vertices()[g.src_index(k)].level - 1);
    const auto to = static_cast<std::size_t>(g.vertices()[g.dst_index(k)].level - 1);
    p.communication_matrix[from][to] += edge_weight(g, k);
  }
  return p;
}

// ---------------------------------------------------------------------------

namespace {

struct Samples {
  std::vector<double> num_levels, nodes, in_degree, out_degree, size, bytes;
  std::map<std::string, double> algo_counts;
  double mix_vertices = 0.0;
  double branch_points = 0.0, branched = 0.0;
  double vertices = 0.0, loop_vertices = 0.0;
  // per surge: in-band / out-of-band sample sums and counts
  std::vector<std::array<double, 4>> surge;
};

void collect(const HyperGraph& g, const WorkloadSpec& spec, Samples& s) {
  s.surge.resize(spec.surges.size(), {0, 0, 0, 0});
  s.num_levels.push_back(g.num_levels());
  std::set<std::string> mix;
  for (const auto& [id, _] : spec.algo_mix) mix.insert(id);
  std::set<std::size_t> controlled;
  for (const auto& cv : g.control()) controlled.insert(g.index_of(cv.vertex));

  for (const auto& lv : g.levels()) s.nodes.push_back(static_cast<double>(lv.size()));
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    const auto& vx = g.vertices()[v];
    s.vertices += 1.0;
    if (vx.level > 1) s.in_degree.push_back(static_cast<double>(g.in_edges(v).size()));
    if (vx.level < g.num_levels()) s.out_degree.push_back(static_cast<double>(g.out_edges(v).size()));
    if (spec.surge_factor(SurgeKind::Computational, vx.level) == 1.0) s.size.push_back(static_cast<double>(vx.size));
    if (mix.contains(vx.algo)) {
      s.algo_counts[vx.algo] += 1.0;
      s.mix_vertices += 1.0;
    } else {
      s.loop_vertices += 1.0;
    }
    const bool branch_point = g.out_edges(v).size() >= 2;
    if (branch_point && spec.surge_factor(SurgeKind::Control, vx.level) == 1.0) {
      s.branch_points += 1.0;
      if (controlled.contains(v)) s.branched += 1.0;
    }
    for (std::size_t i = 0; i < spec.surges.size(); ++i) {
      const auto& sg = spec.surges[i];
      double value = 0.0;
      if (sg.kind == SurgeKind::Computational) value = static_cast<double>(vx.size);
      else if (sg.kind == SurgeKind::Control) {
        if (!branch_point) continue;
        value = controlled.contains(v) ? 1.0 : 0.0;
      } else {
        continue;
      }
      auto& acc = s.surge[i];
      if (sg.covers(vx.level)) {
        acc[0] += value;
        acc[1] += 1.0;
      } else {
        acc[2] += value;
        acc[3] += 1.0;
      }
    }
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const int dst_level = g.vertices()[g.dst_index(k)].level;
    const auto b = static_cast<double>(g.edges()[k].bytes);
    if (spec.surge_factor(SurgeKind::Communication, dst_level) == 1.0) s.bytes.push_back(b);
    for (std::size_t i = 0; i < spec.surges.size(); ++i) {
      const auto& sg = spec.surges[i];
      if (sg.kind != SurgeKind::Communication) continue;
      auto& acc = s.surge[i];
      if (sg.covers(dst_level)) {
        acc[0] += b;
        acc[1] += 1.0;
      } else {
        acc[2] += b;
        acc[3] += 1.0;
      }
    }
  }
}

bool within(double empirical, double expected, double tol) {
  return std::abs(empirical - expected) <= tol * std::abs(expected) + 1e-12;
}

ConformanceCheck moment_check(std::string name, const std::vector<double>& xs, const DistributionSpec& d,
                              double tol, bool advisory = false) {
  ConformanceCheck c;
  c.name = std::move(name);
  c.expected_mean = d.mean();
  c.expected_variance = d.variance();
  c.samples = xs.size();
  c.advisory = advisory;
  if (xs.empty()) {
    c.note = "no samples";
    return c;
  }
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= static_cast<double>(xs.size());
  c.empirical_mean = m;
  c.empirical_variance = v;
  c.pass = within(m, c.expected_mean, tol);
  return c;
}

ConformanceCheck rate_check(std::string name, double hits, double trials, double expected, double tol) {
  ConformanceCheck c;
  c.name = std::move(name);
  c.expected_mean = expected;
  c.expected_variance = expected * (1.0 - expected);
  c.samples = static_cast<std::uint64_t>(trials);
  c.advisory = true;
  if (trials == 0.0) {
    c.note = "no samples";
    return c;
  }
  c.empirical_mean = hits / trials;
  c.empirical_variance = c.empirical_mean * (1.0 - c.empirical_mean);
  c.pass = within(c.empirical_mean, expected, tol);
  return c;
}

ConformanceReport build_report(const Samples& s, const WorkloadSpec& spec, double tol, GenerationLog log) {
  ConformanceReport r;
  r.tolerance = tol;
  r.log = log;
  r.checks.push_back(moment_check("num_levels", s.num_levels, spec.num_levels, tol));
  r.checks.push_back(moment_check("nodes_per_level", s.nodes, spec.nodes_per_level, tol));
  r.checks.push_back(moment_check("in_degree", s.in_degree, spec.in_degree, tol));
  r.checks.push_back(moment_check("out_degree", s.out_degree, spec.out_degree, tol, true));
  r.checks.push_back(moment_check("size", s.size, spec.size, tol));
  r.checks.push_back(moment_check("bytes", s.bytes, spec.bytes, tol));
  if (log.clamped_in_degree > 0) r.checks[2].note = std::to_string(log.clamped_in_degree) + " in-degree draws clamped";
  if (log.out_degree_overflow > 0)
    r.checks[3].note = std::to_string(log.out_degree_overflow) + " edges beyond sampled out-degree";

  double total_weight = 0.0;
  for (const auto& [_, w] : spec.algo_mix) total_weight += w;
  for (const auto& [id, w] : spec.algo_mix) {
    const auto it = s.algo_counts.find(id);
    r.checks.push_back(rate_check("algo_mix:" + id, it == s.algo_counts.end() ? 0.0 : it->second, s.mix_vertices,
                                  w / total_weight, tol));
  }
  r.checks.push_back(rate_check("branch_fraction", s.branched, s.branch_points, spec.branch_fraction, tol));
  r.checks.push_back(rate_check("locality_fraction", s.loop_vertices, s.vertices, spec.locality_fraction, tol));

  for (std::size_t i = 0; i < spec.surges.size(); ++i) {
    const auto& sg = spec.surges[i];
    const auto& acc = s.surge[i];
    ConformanceCheck c;
    c.name = "surge:" + std::string(to_string(sg.kind)) + ":" + std::to_string(sg.first_level) + "-" +
             std::to_string(sg.last_level);
    c.expected_mean = sg.multiplier;
    c.samples = static_cast<std::uint64_t>(acc[1]);
    if (acc[1] == 0.0 || acc[3] == 0.0 || acc[2] == 0.0) {
      c.note = "band or baseline has no samples";
      c.advisory = true;
    } else {
      c.empirical_mean = (acc[0] / acc[1]) / (acc[2] / acc[3]);
      c.pass = c.empirical_mean >= sg.multiplier * (1.0 - tol);
      // Control surges saturate at probability 1.
      if (sg.kind == SurgeKind::Control) c.advisory = true;
    }
    r.checks.push_back(std::move(c));
  }
  for (const auto& c : r.checks) {
    if (!c.advisory && !c.pass) r.pass = false;
  }
  return r;
}

}  // namespace

ConformanceReport verify_against_spec(const HyperGraph& g, const WorkloadSpec& spec, double tolerance,
                                      const GenerationLog* log) {
  Samples s;
  collect(g, spec, s);
  return build_report(s, spec, tolerance, log ? *log : GenerationLog{});
}

ConformanceReport verify_against_spec(const std::vector<Generated>& runs, const WorkloadSpec& spec, double tolerance) {
  Samples s;
  GenerationLog total;
  for (const auto& run : runs) {
    collect(run.graph, spec, s);
    total.clamped_in_degree += run.log.clamped_in_degree;
    total.out_degree_overflow += run.log.out_degree_overflow;
    total.fallback_edges += run.log.fallback_edges;
    total.connectivity_edges += run.log.connectivity_edges;
  }
  return build_report(s, spec, tolerance, total);
}

nlohmann::json to_json(const ConformanceReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j = {{"name", c.name},
                        {"expected_mean", c.expected_mean},
                        {"empirical_mean", c.empirical_mean},
                        {"expected_variance", c.expected_variance},
                        {"empirical_variance", c.empirical_variance},
                        {"samples", c.samples},
                        {"advisory", c.advisory},
                        {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  return {{"pass", r.pass},
          {"tolerance", r.tolerance},
          {"checks", checks},
          {"generation", {{"clamped_in_degree", r.log.clamped_in_degree},
                          {"out_degree_overflow", r.log.out_degree_overflow},
                          {"fallback_edges", r.log.fallback_edges},
                          {"connectivity_edges", r.log.connectivity_edges}}}};
}

}  // namespace forge
