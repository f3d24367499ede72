#pragma once

#include <string>
#include <vector>

#include "forge/codesign.hpp"
#include "forge/hypergraph.hpp"

namespace fixtures {

inline forge::HyperVertex vtx(std::string id, int level, std::string algo = "gp_op", std::int64_t size = 1) {
  return {std::move(id), level, std::move(algo), size};
}

// A5 on level 3 with fan-in from A1..A3 (level 2, D = 10, 20, 30) and A0
// (level 1, D = 40), fan-out to A6, A7 (level 4, D = 5, 6).
inline forge::HyperGraph a5_structure() {
  return forge::HyperGraph(
      {vtx("A0", 1), vtx("A1", 2), vtx("A2", 2), vtx("A3", 2), vtx("A5", 3), vtx("A6", 4), vtx("A7", 4)},
      {{"A1", "A5", 10}, {"A2", "A5", 20}, {"A3", "A5", 30}, {"A0", "A5", 40}, {"A5", "A6", 5}, {"A5", "A7", 6}});
}

inline const std::vector<std::vector<std::uint64_t>>& fig14b_rows() {
  static const std::vector<std::vector<std::uint64_t>> rows{
      {0, 150, 185, 20, 0, 30}, {150, 0, 100, 20, 45, 0}, {185, 100, 0, 10, 15, 10},
      {20, 20, 10, 0, 19, 15},  {0, 45, 15, 19, 0, 34},   {30, 0, 10, 15, 34, 0}};
  return rows;
}

// Core c is vertex "c<c>" on level c + 1 with one edge per nonzero pair.
inline forge::HyperGraph fig14b_graph() {
  const auto& m = fig14b_rows();
  std::vector<forge::HyperVertex> vs;
  std::vector<forge::HyperEdge> es;
  for (std::size_t i = 0; i < m.size(); ++i) vs.push_back(vtx("c" + std::to_string(i), static_cast<int>(i) + 1));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i][j] > 0) es.push_back({"c" + std::to_string(i), "c" + std::to_string(j), m[i][j]});
  return forge::HyperGraph(vs, es);
}

// One core per vertex, in canonical vertex order.
inline forge::CoreTypePlan identity_plan(const forge::HyperGraph& g) {
  forge::CoreTypePlan p;
  p.k = static_cast<int>(g.vertices().size());
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    p.units.push_back(g.vertices()[i].id);
    p.assignment.push_back(static_cast<int>(i));
  }
  p.elbow_selected = false;
  return p;
}

// Five-level matrix pipeline with level ALFU sets {matmul}, {matadd},
// {mattrans}, {matadd2, matmul2}, {matinv}.
inline forge::HyperGraph case_study_graph() {
  return forge::HyperGraph({vtx("mm", 1, "matmul", 16), vtx("ma", 2, "matadd", 16), vtx("mt", 3, "mattrans", 16),
                            vtx("ma2", 4, "matadd2", 16), vtx("mm2", 4, "matmul2", 16), vtx("mi", 5, "matinv", 16)},
                           {{"mm", "ma", 2048},
                            {"mm", "mt", 2048},
                            {"ma", "mt", 2048},
                            {"mt", "ma2", 2048},
                            {"mt", "mm2", 2048},
                            {"ma", "ma2", 2048},
                            {"ma2", "mi", 2048},
                            {"mm2", "mi", 2048}});
}

inline forge::HyperGraph chain(int levels, std::uint64_t bytes, std::string algo = "gp_op", std::int64_t size = 1) {
  std::vector<forge::HyperVertex> vs;
  std::vector<forge::HyperEdge> es;
  for (int l = 1; l <= levels; ++l) {
    vs.push_back(vtx("v" + std::to_string(l), l, algo, size));
    if (l > 1) es.push_back({"v" + std::to_string(l - 1), "v" + std::to_string(l), bytes});
  }
  return forge::HyperGraph(vs, es);
}

}  // namespace fixtures
