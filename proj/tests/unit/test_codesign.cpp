#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "forge/codesign.hpp"
#include "forge/error.hpp"
#include "oracles.hpp"

using namespace forge;
using fixtures::vtx;

namespace {

using Rows = std::vector<std::vector<std::uint64_t>>;

SquareMatrix<std::uint64_t> mat(const Rows& rows) { return SquareMatrix<std::uint64_t>::from_rows(rows); }

AffinityMatrix planted(const std::vector<int>& block_of, double within, double across) {
  AffinityMatrix a;
  const auto n = block_of.size();
  a.bytes = SquareMatrix<double>(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a.units.push_back("u" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a.bytes(i, j) = block_of[i] == block_of[j] ? within : across;
  }
  return a;
}

}  // namespace

TEST_CASE("affinity examples") {
  const HyperGraph one({vtx("u", 1), vtx("v", 2)}, {{"u", "v", 100}});
  const auto a = build_affinity(one);
  CHECK(a.bytes(0, 1) == 100);
  CHECK(a.bytes(1, 0) == 100);

  const HyperGraph par({vtx("u", 1), vtx("v", 2)}, {{"u", "v", 30}, {"u", "v", 40}});
  CHECK(build_affinity(par).bytes(0, 1) == 70);

  const HyperGraph none({vtx("u", 1), vtx("v", 2)}, {});
  CHECK(build_affinity(none).bytes == SquareMatrix<double>(2, 0.0));
}

TEST_CASE("elbow selection") {
  CHECK(select_elbow({100, 40, 5, 4, 3}) == 3);
  CHECK(select_elbow({100, 10, 9, 8}) == 2);
  CHECK(select_elbow({0, 0, 0}) == 1);
  CHECK(select_elbow({10}) == 1);
  CHECK(select_elbow({10, 2}) == 2);
}

TEST_CASE("planted three-block affinity is recovered") {
  std::vector<int> block_of;
  for (int i = 0; i < 12; ++i) block_of.push_back(i % 3);
  ClusterOptions o;
  o.k_max = 6;
  o.seed = 2;
  const auto plan = cluster_cores(planted(block_of, 1000, 1), o);
  CHECK(plan.k == 3);
  for (std::size_t i = 0; i < block_of.size(); ++i)
    for (std::size_t j = 0; j < block_of.size(); ++j)
      CHECK((plan.assignment[i] == plan.assignment[j]) == (block_of[i] == block_of[j]));
}

TEST_CASE("wcss curve is non-increasing and has k_max rows") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    AffinityMatrix a;
    const std::size_t n = 15;
    a.bytes = SquareMatrix<double>(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      a.units.push_back("u" + std::to_string(i));
      for (std::size_t j = 0; j < i; ++j) a.bytes(i, j) = a.bytes(j, i) = static_cast<double>(rng() % 500);
    }
    ClusterOptions o;
    o.k_max = 8;
    o.seed = static_cast<std::uint64_t>(t);
    const auto plan = cluster_cores(a, o);
    REQUIRE(plan.wcss_curve.size() == 8);
    for (std::size_t k = 0; k < plan.wcss_curve.size(); ++k) {
      CHECK(plan.wcss_curve[k].first == static_cast<int>(k) + 1);
      if (k > 0) CHECK(plan.wcss_curve[k].second <= plan.wcss_curve[k - 1].second + 1e-9);
    }
  }
}

TEST_CASE("identical rows and k_max one give a single cluster") {
  AffinityMatrix a;
  a.units = {"a", "b", "c"};
  a.bytes = SquareMatrix<double>(3, 5.0);
  ClusterOptions o;
  o.k_max = 3;
  const auto flat = cluster_cores(a, o);
  CHECK(flat.k == 1);
  CHECK(flat.degenerate);

  const auto blocks = planted({0, 0, 1, 1}, 1000, 1);
  o.k_max = 1;
  const auto single = cluster_cores(blocks, o);
  CHECK(single.k == 1);
  CHECK(single.assignment == std::vector<int>{0, 0, 0, 0});

  o.k_max = 4;
  o.forced_k = 2;
  const auto forced = cluster_cores(blocks, o);
  CHECK(forced.k == 2);
  CHECK_FALSE(forced.elbow_selected);
  o.forced_k = 5;
  CHECK_THROWS_AS(cluster_cores(blocks, o), Error);
}

TEST_CASE("inter-core matrix examples") {
  const HyperGraph g({vtx("a", 1), vtx("b", 2)}, {{"a", "b", 150}});
  CoreTypePlan same;
  same.k = 1;
  same.units = {"a", "b"};
  same.assignment = {0, 0};
  const auto m1 = inter_core_matrix(g, same);
  CHECK(m1.bytes == SquareMatrix<std::uint64_t>(1, 0));
  CHECK(m1.intra == std::vector<std::uint64_t>{150});

  auto split = same;
  split.k = 2;
  split.assignment = {0, 1};
  CHECK(inter_core_matrix(g, split).bytes(0, 1) == 150);

  auto partial = same;
  partial.units = {"a"};
  partial.assignment = {0};
  try {
    inter_core_matrix(g, partial);
    FAIL("expected CoverageMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoverageMismatch);
  }
}

TEST_CASE("the constructed graph reproduces the published grid") {
  const auto g = fixtures::fig14b_graph();
  CHECK(inter_core_matrix(g, fixtures::identity_plan(g)).bytes.rows() == fixtures::fig14b_rows());
}

TEST_CASE("partitioning the published grid") {
  const auto m = mat(fixtures::fig14b_rows());
  const auto parts = partition_matrix(m, 1.5);
  REQUIRE_FALSE(parts.empty());
  CHECK(parts.front() == std::vector<int>{0, 1, 2});
  CHECK(parts.front() == oracle::densest_block(fixtures::fig14b_rows()));
  CHECK(mean_nonzero_entry(m) == doctest::Approx(653.0 * 2 / 26));
  CHECK(block_density(m, {0, 1, 2}) == doctest::Approx(870.0 / 9));
}

TEST_CASE("partitions cover every core exactly once") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 9;
    Rows rows(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) rows[i][j] = rows[j][i] = (rng() % 3 == 0) ? 0 : rng() % 300;
    const double thresh = 0.25 + static_cast<double>(rng() % 8) * 0.25;
    const auto parts = partition_matrix(mat(rows), thresh);
    std::vector<int> seen(n, 0);
    for (const auto& p : parts)
      for (int c : p) ++seen[static_cast<std::size_t>(c)];
    for (int s : seen) CHECK(s == 1);
    // Grown blocks (beyond their seed pair) respect the density floor.
    double mean = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rows[i][j]) mean += static_cast<double>(rows[i][j]), ++cnt;
    mean = cnt ? mean / cnt : 0;
    for (const auto& p : parts)
      if (p.size() > 2) CHECK(oracle::density(rows, p) >= thresh * mean - 1e-9);
  }
}

TEST_CASE("zero and uniform matrices") {
  const auto zero = partition_matrix(mat(Rows(4, std::vector<std::uint64_t>(4, 0))), 1.5);
  CHECK(zero == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});

  Rows uniform(5, std::vector<std::uint64_t>(5, 7));
  for (std::size_t i = 0; i < 5; ++i) uniform[i][i] = 0;
  const auto parts = partition_matrix(mat(uniform), 0.5);
  CHECK(parts == std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});
}

TEST_CASE("mesh sizing") {
  const auto m = mat(fixtures::fig14b_rows());
  const auto plan = size_mesh({{0, 1, 2}, {3}}, m, 50);
  CHECK(plan.partitions[0].bytes == 435);
  CHECK(plan.partitions[0].switches == 9);
  CHECK(plan.partitions[0].rows == 3);
  CHECK(plan.partitions[0].cols == 3);
  CHECK(plan.partitions[1].switches == 1);

  Rows r{{0, 300}, {300, 0}};
  const auto six = size_mesh({{0, 1}}, mat(r), 50);
  CHECK(six.partitions[0].switches == 6);
  CHECK(six.partitions[0].rows == 2);
  CHECK(six.partitions[0].cols == 3);
  CHECK_THROWS_AS(size_mesh({{0, 1}}, mat(r), 0), Error);
}

TEST_CASE("codesign json round trip") {
  CodesignOptions o;
  o.cluster.k_max = 6;
  o.switch_bytes = 50;
  const auto r = run_codesign(fixtures::fig14b_graph(), o);
  const auto back = codesign_from_json(to_json(r));
  CHECK(to_json(back) == to_json(r));
  CHECK(r.plan.wcss_curve.size() == 6);
  const auto csv = inter_core_csv(r.cores);
  CHECK(csv.rfind("core,core0", 0) == 0);
}
