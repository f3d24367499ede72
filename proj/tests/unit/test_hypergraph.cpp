#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "forge/error.hpp"
#include "forge/hypergraph.hpp"
#include "fuzz.hpp"

using namespace forge;
using fixtures::vtx;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("construction validates invariants") {
  CHECK(kind_of([] { HyperGraph({}, {}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("a", 2)}, {}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("b", 3)}, {}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("b", 2)}, {{"b", "a", 1}}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("b", 1)}, {{"a", "b", 1}}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("b", 2)}, {{"a", "c", 1}}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("b", 2)}, {{"a", "b", 0}}); }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] {
          HyperGraph({vtx("a", 1), vtx("b", 2), vtx("c", 2)}, {{"a", "b", 1}, {"a", "c", 1}}, {{"a", {0.7, 0.7}}});
        }) == ErrorKind::InvalidGraph);
  CHECK(kind_of([] { HyperGraph({vtx("a", 1), vtx("b", 2)}, {{"a", "b", 1}}, {{"a", {1.0}}}); }) ==
        ErrorKind::InvalidGraph);
}

TEST_CASE("canonical order is independent of input order") {
  const HyperGraph a({vtx("z", 2), vtx("y", 1), vtx("x", 2)}, {{"y", "z", 3}, {"y", "x", 4}});
  const HyperGraph b({vtx("x", 2), vtx("z", 2), vtx("y", 1)}, {{"y", "x", 4}, {"y", "z", 3}});
  CHECK(a == b);
  CHECK(a.vertices()[0].id == "y");
  CHECK(a.edges()[0].dst == "x");
}

TEST_CASE("json round trip") {
  const auto g = fixtures::case_study_graph().with_control({{"mm", {0.25, 0.75}}});
  CHECK(graph_from_json(to_json(g)) == g);
  CHECK(kind_of([] { graph_from_json(nlohmann::json::parse(R"({"vertices": 3})")); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("depth index examples") {
  const auto g = fixtures::a5_structure();
  CHECK(depth_index(g, "A1", "A5") == 1);
  CHECK(depth_index(g, "A0", "A5") == 2);
  CHECK(depth_index(g, "A5", "A6") == 1);
  CHECK(kind_of([&] { depth_index(g, "A6", "A5"); }) == ErrorKind::NoSuchEdge);
}

TEST_CASE("edge weight examples") {
  const HyperGraph g({vtx("a", 1), vtx("b", 2), vtx("c", 3)}, {{"b", "c", 100}, {"a", "c", 40}, {"a", "b", 1}});
  CHECK(edge_weight(g, HyperEdge{"b", "c", 100}) == 100);
  CHECK(edge_weight(g, HyperEdge{"a", "c", 40}) == 80);
  CHECK(edge_weight(g, HyperEdge{"a", "b", 1}) == 1);
  CHECK(kind_of([&] { edge_weight(g, HyperEdge{"a", "b", 2}); }) == ErrorKind::NoSuchEdge);
}

TEST_CASE("external complexity of the A5 structure") {
  const auto g = fixtures::a5_structure();
  CHECK(cef_in(g, "A5") == 140);
  CHECK(cef_out(g, "A5") == 11);
  CHECK(cef_in(g, "A0") == 0);
  CHECK(cef_out(g, "A6") == 0);
  const auto c = vertex_complexity(g, AlgoBank::builtin(), "A5", InternalMode::FanIn);
  CHECK(c.ce == 151);
  CHECK(c.ci == 2);
  CHECK(c.c_total == 153);
  CHECK(kind_of([&] { cef_in(g, "nope"); }) == ErrorKind::NoSuchVertex);
}

TEST_CASE("vertex complexity examples") {
  const auto bank = AlgoBank::builtin();
  const HyperGraph iso({vtx("a", 1)}, {});
  const auto c = vertex_complexity(iso, bank, "a", InternalMode::FanIn);
  CHECK(c.cef_in == 0);
  CHECK(c.cef_out == 0);
  CHECK(c.ci == 2);
  CHECK(c.ce == 0);
  CHECK(c.c_total == 2);

  const HyperGraph src({vtx("m", 1, "matmul", 2), vtx("s", 2)}, {{"m", "s", 32}});
  CHECK(vertex_complexity(src, bank, "m", InternalMode::FanIn).ce == 32);
  CHECK(vertex_complexity(src, bank, "m", InternalMode::FanOut).ci == 16);

  const HyperGraph three({vtx("a", 1), vtx("b", 2), vtx("c", 3)}, {});
  CHECK(graph_complexity_vector(three, bank, InternalMode::FanIn) == std::vector<double>{2, 2, 2});
  CHECK(graph_complexity_vector(iso, bank, InternalMode::FanIn).size() == 1);
}

TEST_CASE("graph complexity vector equals per-vertex recomputation") {
  std::mt19937_64 rng(11);
  const auto bank = AlgoBank::builtin();
  for (int t = 0; t < 50; ++t) {
    const auto g = fuzz::random_graph(rng, 40);
    const auto vec = graph_complexity_vector(g, bank, InternalMode::FanIn);
    for (std::size_t i = 0; i < g.vertices().size(); ++i) {
      const auto& v = g.vertices()[i];
      double ext = 0;
      for (const auto& e : g.edges()) {
        if (e.src != v.id && e.dst != v.id) continue;
        ext += static_cast<double>(e.bytes) * std::abs(g.vertex(e.src).level - g.vertex(e.dst).level);
      }
      CHECK(vec[i] == ext + bank.lookup(v.algo).internal_fanin(v.size));
    }
  }
}

TEST_CASE("intensity classes") {
  CHECK(classify_intensity(3, 1000000, 2, 1000) == IntensityClass::Intense);
  CHECK(classify_intensity(3, 10, 2, 1000) == IntensityClass::MediumDeepSmall);
  CHECK(classify_intensity(1, 5000, 2, 1000) == IntensityClass::MediumShallowLarge);
  CHECK(classify_intensity(1, 10, 2, 1000) == IntensityClass::Low);
  CHECK(kind_of([] { classify_intensity(1, 1, 0, 1); }) == ErrorKind::InvalidArgument);
}
