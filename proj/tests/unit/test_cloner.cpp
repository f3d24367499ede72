#include "doctest.h"
#include "fixtures.hpp"
#include "forge/cloner.hpp"
#include "forge/error.hpp"
#include "forge/generator.hpp"

using namespace forge;

namespace {

ErrorKind scan_error(std::string_view text) {
  try {
    scan_program(text, AlgoBank::builtin());
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

ComplexityProfile with_matrix(ComplexityProfile p, const std::map<std::pair<int, int>, double>& cells) {
  for (auto& row : p.communication_matrix) std::fill(row.begin(), row.end(), 0.0);
  for (const auto& [ij, w] : cells)
    p.communication_matrix[static_cast<std::size_t>(ij.first - 1)][static_cast<std::size_t>(ij.second - 1)] = w;
  return p;
}

}  // namespace

TEST_CASE("straight-line program is a chain") {
  const auto g = scan_program("input a [bytes=16]\nb = gp_op(a)\nc = gp_op(b) [bytes=32]\n", AlgoBank::builtin());
  REQUIRE(g.num_levels() == 2);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0].src == "b");
  CHECK(g.edges()[0].dst == "c");
  CHECK(g.edges()[0].bytes == 8);
}

TEST_CASE("diamond def-use") {
  const auto g = scan_program(R"(
    input x
    p = gp_op(x) [bytes=100]
    l = gp_op(p) [bytes=10]
    r = gp_op(p) [bytes=20]
    j = gp_op(l, r)
  )",
                              AlgoBank::builtin());
  CHECK(g.num_levels() == 3);
  CHECK(g.in_edges(g.index_of("j")).size() == 2);
  CHECK(cef_in(g, "j") == 30);
  CHECK(cef_out(g, "p") == 200);
}

TEST_CASE("levels follow the longest def-use chain") {
  const auto g = scan_program("input x\na = gp_op(x)\nb = gp_op(a)\nc = gp_op(a, b)\n", AlgoBank::builtin());
  CHECK(g.vertex("c").level == 3);
  CHECK(depth_index(g, "a", "c") == 2);
}

TEST_CASE("branches attach control vectors") {
  const auto g = scan_program(R"(
    input x
    p = gp_op(x)
    l = gp_op(p)
    r = gp_op(p)
    branch(p) { probs: 0.25, 0.75 } -> l, r
  )",
                              AlgoBank::builtin());
  REQUIRE(g.control().size() == 1);
  CHECK(g.control()[0].vertex == "p");
  CHECK(g.control()[0].probs == std::vector<double>{0.25, 0.75});
}

TEST_CASE("scanner errors") {
  CHECK(scan_error("input x\ny = gp_op(z)\n") == ErrorKind::UseBeforeDef);
  CHECK(scan_error("input x\ny = nosuch(x)\n") == ErrorKind::UnknownAlgorithm);
  CHECK(scan_error("input x\ny = gp_op(x\n") == ErrorKind::SyntaxError);
  CHECK(scan_error("input x\ny = gp_op(x) [color=3]\n") == ErrorKind::SyntaxError);
  CHECK(scan_error("# nothing\n") == ErrorKind::SyntaxError);
  CHECK(scan_error("input x\np = gp_op(x)\nl = gp_op(p)\nr = gp_op(p)\nbranch(p) { probs: 0.5, 0.5 } -> l\n") ==
        ErrorKind::BranchMismatch);
  CHECK(scan_error("input x\np = gp_op(x)\nl = gp_op(p)\nr = gp_op(p)\nbranch(p) { probs: 0.6, 0.6 } -> l, r\n") ==
        ErrorKind::BranchMismatch);
  try {
    scan_program("input x\ny = gp_op(x) $\n", AlgoBank::builtin());
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 14);
  }
}

TEST_CASE("unit statistics") {
  const auto four = fixtures::chain(4, 1);
  const auto s = unit_statistics(four);
  CHECK(s.at("gp_op").mean == 1.0);
  CHECK(s.at("gp_op").variance == 0.0);

  const HyperGraph g({fixtures::vtx("a", 1, "matmul"), fixtures::vtx("b", 1, "matmul"), fixtures::vtx("c", 2),
                      fixtures::vtx("d", 3), fixtures::vtx("e", 4)},
                     {});
  const auto t = unit_statistics(g);
  CHECK(t.at("matmul").mean == 0.5);
  CHECK(t.at("matmul").variance == 0.75);
}

TEST_CASE("extracted profiles hide vertex identities") {
  const auto p = extract_profile(fixtures::case_study_graph(), AlgoBank::builtin());
  const auto doc = to_json(p).dump();
  for (const char* id : {"\"mm\"", "\"ma2\"", "\"mi\""}) CHECK(doc.find(id) == std::string::npos);
  CHECK(p.computation_table[3].alfus == std::vector<std::string>{"matadd2", "matmul2"});
  CHECK(p.cell(1, 3) == 4096);
}

TEST_CASE("chain clone round trip") {
  const auto bank = AlgoBank::builtin();
  const auto src = fixtures::chain(5, 64, "matmul", 6);
  const auto target = extract_profile(src, bank);
  CloneOptions o;
  o.seed = 3;
  const auto clone = synthesize_clone(target, bank, o);
  const auto diff = compare_profiles(extract_profile(clone, bank), target, 0.05);
  CHECK(diff.within);
  for (const auto& v : clone.vertices()) CHECK(v.id.rfind("C", 0) == 0);
}

TEST_CASE("zero matrix and single-op levels give disjoint per-level vertices") {
  const auto bank = AlgoBank::builtin();
  const HyperGraph g({fixtures::vtx("a", 1), fixtures::vtx("b", 2), fixtures::vtx("c", 3)}, {});
  const auto clone = synthesize_clone(extract_profile(g, bank), bank, {});
  CHECK(clone.vertices().size() == 3);
  CHECK(clone.edges().empty());
}

TEST_CASE("case-study cell (1,3) lands within ten percent") {
  const auto bank = AlgoBank::builtin();
  const auto target = with_matrix(extract_profile(fixtures::case_study_graph(), bank),
                                  {{{1, 2}, 240}, {{1, 3}, 560}, {{1, 4}, 456}, {{1, 5}, 20}, {{2, 3}, 256},
                                   {{2, 4}, 45}, {{3, 4}, 500}});
  CloneOptions o;
  o.tolerance = 0.10;
  const auto p = extract_profile(synthesize_clone(target, bank, o), bank);
  CHECK(p.cell(1, 3) >= 504);
  CHECK(p.cell(1, 3) <= 616);
}

TEST_CASE("infeasible targets") {
  const auto bank = AlgoBank::builtin();
  const auto base = extract_profile(fixtures::case_study_graph(), bank);
  auto kind = [&](const ComplexityProfile& p) {
    try {
      synthesize_clone(p, bank, {});
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;
  };
  CHECK(kind(with_matrix(base, {{{3, 2}, 356}})) == ErrorKind::InfeasibleTarget);
  auto tiny = base;
  tiny.computation_table[0].complexity = 0.5;  // below one 1x1 matmul
  CHECK(kind(tiny) == ErrorKind::InfeasibleTarget);
  // Odd weight at even depth cannot be split into whole bytes.
  CHECK(kind(with_matrix(base, {{{1, 3}, 1}})) == ErrorKind::InfeasibleTarget);
  auto unknown = base;
  unknown.computation_table[0].alfus = {"nosuch"};
  CHECK(kind(unknown) == ErrorKind::UnknownAlgorithm);
}

TEST_CASE("clones avoid the structure of their source") {
  const auto bank = AlgoBank::builtin();
  WorkloadSpec s;
  s.num_levels = DistributionSpec::constant(5);
  s.nodes_per_level = DistributionSpec::uniform_int(2, 4);
  s.in_degree = DistributionSpec::uniform_int(1, 2);
  s.out_degree = DistributionSpec::uniform_int(1, 3);
  s.algo_mix = {{"matmul", 1}, {"matadd", 1}};
  s.size = DistributionSpec::uniform_int(2, 8);
  s.bytes = DistributionSpec::uniform_int(100, 400);
  s.seed = 5;
  const auto g = generate(s, bank).graph;
  CloneOptions o;
  o.seed = 1;
  o.sources = std::span<const HyperGraph>(&g, 1);
  const auto clone = synthesize_clone(extract_profile(g, bank), bank, o);
  CHECK(structure_hash(clone) != structure_hash(g));
  CHECK(structure_hash(g) == structure_hash(graph_from_json(to_json(g))));
}

TEST_CASE("compare_profiles reports the worst location") {
  const auto bank = AlgoBank::builtin();
  const auto a = extract_profile(fixtures::chain(3, 100), bank);
  auto b = a;
  b.communication_matrix[0][1] = 120;
  const auto d = compare_profiles(b, a, 0.05);
  CHECK_FALSE(d.within);
  CHECK(d.worst_location == "cell (1,2)");
  CHECK(d.worst_cell_error == doctest::Approx(0.2));
  CHECK(compare_profiles(b, a, 0.25).within);
}
