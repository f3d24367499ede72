#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forge/algobank.hpp"
#include "json.hpp"

namespace forge {

struct HyperVertex {
  std::string id;
  int level = 1;
  std::string algo;
  std::int64_t size = 1;

  bool operator==(const HyperVertex&) const = default;
};

struct HyperEdge {
  std::string src;
  std::string dst;
  std::uint64_t bytes = 1;

  bool operator==(const HyperEdge&) const = default;
};

// Branch probabilities of a fan-out vertex, one per out-edge in canonical
// out-edge order (destination level, destination id, bytes).
struct ControlFlowVector {
  std::string vertex;
  std::vector<double> probs;

  bool operator==(const ControlFlowVector&) const = default;
};

// Leveled DAG workload. Immutable once constructed; the constructor
// validates every structural invariant and stores vertices sorted by
// (level, id) and edges sorted by (src, dst, bytes) in that vertex order.
class HyperGraph {
 public:
  HyperGraph(std::vector<HyperVertex> vertices, std::vector<HyperEdge> edges,
             std::vector<ControlFlowVector> control = {});

  int num_levels() const { return num_levels_; }
  const std::vector<HyperVertex>& vertices() const { return vertices_; }
  const std::vector<HyperEdge>& edges() const { return edges_; }
  const std::vector<ControlFlowVector>& control() const { return control_; }

  std::optional<std::size_t> find(std::string_view id) const;
  // Throws NoSuchVertex.
  std::size_t index_of(std::string_view id) const;
  const HyperVertex& vertex(std::string_view id) const { return vertices_[index_of(id)]; }

  // Edge indices in canonical order.
  const std::vector<std::size_t>& in_edges(std::size_t vertex) const { return in_[vertex]; }
  const std::vector<std::size_t>& out_edges(std::size_t vertex) const { return out_[vertex]; }

  std::size_t src_index(std::size_t edge) const { return edge_src_[edge]; }
  std::size_t dst_index(std::size_t edge) const { return edge_dst_[edge]; }

  // Vertex indices per level, 1-based level -> [level - 1].
  std::vector<std::vector<std::size_t>> levels() const;

  HyperGraph with_control(std::vector<ControlFlowVector> control) const;

  bool operator==(const HyperGraph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_ && control_ == other.control_;
  }

 private:
  int num_levels_ = 0;
  std::vector<HyperVertex> vertices_;
  std::vector<HyperEdge> edges_;
  std::vector<ControlFlowVector> control_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> edge_src_;
  std::vector<std::size_t> edge_dst_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

nlohmann::json to_json(const HyperGraph& g);
HyperGraph graph_from_json(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Communication complexity

struct VertexComplexity {
  double cef_in = 0.0;
  double cef_out = 0.0;
  double ci = 0.0;
  double ce = 0.0;
  double c_total = 0.0;
};

enum class InternalMode { FanIn, FanOut };

enum class IntensityClass { Intense, MediumDeepSmall, MediumShallowLarge, Low };

std::string_view to_string(IntensityClass c);

// |level(src) - level(dst)| of the first (src, dst) edge. Throws NoSuchEdge.
std::int64_t depth_index(const HyperGraph& g, std::string_view src, std::string_view dst);
std::int64_t depth_index(const HyperGraph& g, std::size_t edge);

// depth_index * bytes. Throws NoSuchEdge when e is not an edge of g.
double edge_weight(const HyperGraph& g, const HyperEdge& e);
double edge_weight(const HyperGraph& g, std::size_t edge);

// Fan-in / fan-out dot products of data-set sizes with depth indices.
double cef_in(const HyperGraph& g, std::string_view vertex);
double cef_out(const HyperGraph& g, std::string_view vertex);

double internal_complexity(const AlgoBank& bank, const HyperVertex& v, InternalMode mode);

// ce always combines both fan-in and fan-out external terms; mode only
// selects which internal count is added.
VertexComplexity vertex_complexity(const HyperGraph& g, const AlgoBank& bank, std::string_view vertex,
                                   InternalMode mode);

// c_total per vertex in (level, id) order.
std::vector<double> graph_complexity_vector(const HyperGraph& g, const AlgoBank& bank, InternalMode mode);

inline constexpr std::int64_t kDefaultDepthThreshold = 2;
inline constexpr std::uint64_t kDefaultBytesThreshold = 4096;

IntensityClass classify_intensity(std::int64_t depth, std::uint64_t bytes,
                                  std::int64_t depth_thresh = kDefaultDepthThreshold,
                                  std::uint64_t bytes_thresh = kDefaultBytesThreshold);
IntensityClass classify_intensity(const HyperGraph& g, std::size_t edge,
                                  std::int64_t depth_thresh = kDefaultDepthThreshold,
                                  std::uint64_t bytes_thresh = kDefaultBytesThreshold);

}  // namespace forge
