#include "forge/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "forge/error.hpp"

namespace forge {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidGraph, msg); }

}  // namespace

HyperGraph::HyperGraph(std::vector<HyperVertex> vertices, std::vector<HyperEdge> edges,
                       std::vector<ControlFlowVector> control)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), control_(std::move(control)) {
  if (vertices_.empty()) invalid("graph has no vertices");

  std::sort(vertices_.begin(), vertices_.end(), [](const HyperVertex& a, const HyperVertex& b) {
    return std::tie(a.level, a.id) < std::tie(b.level, b.id);
  });
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& v = vertices_[i];
    if (v.id.empty()) invalid("vertex with empty id");
    if (v.level < 1) invalid("vertex '" + v.id + "' has level < 1");
    if (v.size < 1) invalid("vertex '" + v.id + "' has size < 1");
    if (!index_.emplace(v.id, i).second) invalid("duplicate vertex id '" + v.id + "'");
  }
  num_levels_ = vertices_.back().level;
  {
    int expected = 1;
    for (const auto& v : vertices_) {
      if (v.level > expected) invalid("level " + std::to_string(expected) + " hosts no vertex");
      if (v.level == expected) ++expected;
    }
  }

  for (const auto& e : edges_) {
    const auto s = find(e.src);
    const auto d = find(e.dst);
    if (!s) invalid("edge references unknown vertex '" + e.src + "'");
    if (!d) invalid("edge references unknown vertex '" + e.dst + "'");
    if (*s == *d) invalid("self edge on '" + e.src + "'");
    if (vertices_[*s].level >= vertices_[*d].level)
      invalid("edge " + e.src + " -> " + e.dst + " does not go to a strictly higher level");
    if (e.bytes < 1) invalid("edge " + e.src + " -> " + e.dst + " carries zero bytes");
  }
  std::sort(edges_.begin(), edges_.end(), [this](const HyperEdge& a, const HyperEdge& b) {
    return std::make_tuple(index_.at(a.src), index_.at(a.dst), a.bytes) <
           std::make_tuple(index_.at(b.src), index_.at(b.dst), b.bytes);
  });

  in_.assign(vertices_.size(), {});
  out_.assign(vertices_.size(), {});
  edge_src_.reserve(edges_.size());
  edge_dst_.reserve(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto s = index_.at(edges_[k].src);
    const auto d = index_.at(edges_[k].dst);
    edge_src_.push_back(s);
    edge_dst_.push_back(d);
    out_[s].push_back(k);
    in_[d].push_back(k);
  }

  std::set<std::string> seen;
  for (const auto& cv : control_) {
    const auto v = find(cv.vertex);
    if (!v) invalid("control vector on unknown vertex '" + cv.vertex + "'");
    if (!seen.insert(cv.vertex).second) invalid("duplicate control vector on '" + cv.vertex + "'");
    if (out_[*v].size() < 2) invalid("control vector on '" + cv.vertex + "' which has fan-out < 2");
    if (cv.probs.size() != out_[*v].size())
      invalid("control vector on '" + cv.vertex + "' has " + std::to_string(cv.probs.size()) +
              " entries for " + std::to_string(out_[*v].size()) + " out-edges");
    double sum = 0.0;
    for (double p : cv.probs) {
      if (!(p >= 0.0 && p <= 1.0)) invalid("control probability outside [0,1] on '" + cv.vertex + "'");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) invalid("control probabilities on '" + cv.vertex + "' do not sum to 1");
  }
  std::sort(control_.begin(), control_.end(), [this](const ControlFlowVector& a, const ControlFlowVector& b) {
    return index_.at(a.vertex) < index_.at(b.vertex);
  });
}

std::optional<std::size_t> HyperGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HyperGraph::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::NoSuchVertex, "no vertex '" + std::string(id) + "'");
}

std::vector<std::vector<std::size_t>> HyperGraph::levels() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(num_levels_));
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    out[static_cast<std::size_t>(vertices_[i].level - 1)].push_back(i);
  return out;
}

HyperGraph HyperGraph::with_control(std::vector<ControlFlowVector> control) const {
  return HyperGraph(vertices_, edges_, std::move(control));
}

nlohmann::json to_json(const HyperGraph& g) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : g.vertices())
    vs.push_back({{"id", v.id}, {"level", v.level}, {"algo", v.algo}, {"size", v.size}});
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : g.edges()) es.push_back({{"src", e.src}, {"dst", e.dst}, {"bytes", e.bytes}});
  nlohmann::json doc = {{"num_levels", g.num_levels()}, {"vertices", vs}, {"edges", es}};
  if (!g.control().empty()) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : g.control()) cs.push_back({{"vertex", c.vertex}, {"probs", c.probs}});
    doc["control"] = cs;
  }
  return doc;
}

HyperGraph graph_from_json(const nlohmann::json& doc) {
  try {
    std::vector<HyperVertex> vs;
    for (const auto& v : doc.at("vertices")) {
      vs.push_back({v.at("id").get<std::string>(), v.at("level").get<int>(), v.at("algo").get<std::string>(),
                    v.at("size").get<std::int64_t>()});
    }
    std::vector<HyperEdge> es;
    for (const auto& e : doc.value("edges", nlohmann::json::array())) {
      const auto bytes = e.at("bytes").get<std::int64_t>();
      if (bytes < 1) throw Error(ErrorKind::InvalidGraph, "edge bytes must be >= 1");
      es.push_back({e.at("src").get<std::string>(), e.at("dst").get<std::string>(),
                    static_cast<std::uint64_t>(bytes)});
    }
    std::vector<ControlFlowVector> cs;
    for (const auto& c : doc.value("control", nlohmann::json::array()))
      cs.push_back({c.at("vertex").get<std::string>(), c.at("probs").get<std::vector<double>>()});
    HyperGraph g(std::move(vs), std::move(es), std::move(cs));
    if (doc.contains("num_levels") && doc["num_levels"].get<int>() != g.num_levels())
      throw Error(ErrorKind::InvalidGraph, "num_levels does not match the vertex levels");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("graph document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(IntensityClass c) {
  switch (c) {
    case IntensityClass::Intense: return "Intense";
    case IntensityClass::MediumDeepSmall: return "MediumDeepSmall";
    case IntensityClass::MediumShallowLarge: return "MediumShallowLarge";
    case IntensityClass::Low: return "Low";
  }
  return "?";
}

std::int64_t depth_index(const HyperGraph& g, std::size_t edge) {
  if (edge >= g.edges().size()) throw Error(ErrorKind::NoSuchEdge, "edge index out of range");
  return std::abs(g.vertices()[g.src_index(edge)].level - g.vertices()[g.dst_index(edge)].level);
}

std::int64_t depth_index(const HyperGraph& g, std::string_view src, std::string_view dst) {
  const auto s = g.find(src);
  const auto d = g.find(dst);
  if (s && d) {
    for (auto k : g.out_edges(*s)) {
      if (g.dst_index(k) == *d) return depth_index(g, k);
    }
  }
  throw Error(ErrorKind::NoSuchEdge, "no edge " + std::string(src) + " -> " + std::string(dst));
}

double edge_weight(const HyperGraph& g, std::size_t edge) {
  return static_cast<double>(depth_index(g, edge)) * static_cast<double>(g.edges().at(edge).bytes);
}

double edge_weight(const HyperGraph& g, const HyperEdge& e) {
  if (const auto s = g.find(e.src)) {
    for (auto k : g.out_edges(*s)) {
      if (g.edges()[k] == e) return edge_weight(g, k);
    }
  }
  throw Error(ErrorKind::NoSuchEdge, "no edge " + e.src + " -> " + e.dst + " with " + std::to_string(e.bytes) + " bytes");
}

double cef_in(const HyperGraph& g, std::string_view vertex) {
  const auto v = g.index_of(vertex);
  double acc = 0.0;
  for (auto k : g.in_edges(v)) acc += edge_weight(g, k);
  return acc;
}

double cef_out(const HyperGraph& g, std::string_view vertex) {
  const auto v = g.index_of(vertex);
  double acc = 0.0;
  for (auto k : g.out_edges(v)) acc += edge_weight(g, k);
  return acc;
}

double internal_complexity(const AlgoBank& bank, const HyperVertex& v, InternalMode mode) {
  const auto& entry = bank.lookup(v.algo);
  return mode == InternalMode::FanIn ? entry.internal_fanin(v.size) : entry.internal_fanout(v.size);
}

VertexComplexity vertex_complexity(const HyperGraph& g, const AlgoBank& bank, std::string_view vertex,
                                   InternalMode mode) {
  VertexComplexity c;
  c.cef_in = cef_in(g, vertex);
  c.cef_out = cef_out(g, vertex);
  c.ci = internal_complexity(bank, g.vertex(vertex), mode);
  c.ce = c.cef_in + c.cef_out;
  c.c_total = c.ce + c.ci;
  return c;
}

std::vector<double> graph_complexity_vector(const HyperGraph& g, const AlgoBank& bank, InternalMode mode) {
  std::vector<double> out;
  out.reserve(g.vertices().size());
  for (const auto& v : g.vertices()) out.push_back(vertex_complexity(g, bank, v.id, mode).c_total);
  return out;
}

IntensityClass classify_intensity(std::int64_t depth, std::uint64_t bytes, std::int64_t depth_thresh,
                                  std::uint64_t bytes_thresh) {
  if (depth_thresh < 1 || bytes_thresh < 1)
    throw Error(ErrorKind::InvalidArgument, "intensity thresholds must be >= 1");
  const bool deep = depth >= depth_thresh;
  const bool large = bytes >= bytes_thresh;
  if (deep && large) return IntensityClass::Intense;
  if (deep) return IntensityClass::MediumDeepSmall;
  if (large) return IntensityClass::MediumShallowLarge;
  return IntensityClass::Low;
}

IntensityClass classify_intensity(const HyperGraph& g, std::size_t edge, std::int64_t depth_thresh,
                                  std::uint64_t bytes_thresh) {
  return classify_intensity(depth_index(g, edge), g.edges().at(edge).bytes, depth_thresh, bytes_thresh);
}

}  // namespace forge
