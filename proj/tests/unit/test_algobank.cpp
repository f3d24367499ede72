#include "doctest.h"
#include "forge/algobank.hpp"
#include "forge/error.hpp"
#include "oracles.hpp"

using namespace forge;

TEST_CASE("builtin repertoire and classes") {
  const auto bank = AlgoBank::builtin();
  for (const char* id : {"matmul", "matadd", "mattrans", "matinv", "matmul2", "matadd2", "lud", "mst", "tsp", "sort",
                         "gp_op"})
    CHECK(bank.contains(id));
  CHECK(bank.lookup("matmul").algo_class == AlgoClass::Numeric);
  CHECK(bank.lookup("mst").algo_class == AlgoClass::SemiNumeric);
  CHECK(bank.lookup("tsp").algo_class == AlgoClass::SemiNumeric);
  CHECK(bank.lookup("sort").algo_class == AlgoClass::NonNumeric);
  CHECK_THROWS_AS(bank.lookup("no_such"), Error);
  try {
    bank.lookup("no_such");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownAlgorithm);
  }
}

TEST_CASE("eval_cost examples") {
  const auto bank = AlgoBank::builtin();
  CHECK(eval_cost(bank.lookup("matmul"), 1) == 1);
  CHECK(eval_cost(bank.lookup("matmul"), 10) == 1900);
  CHECK(eval_cost(bank.lookup("matadd"), 8) == 64);
  CHECK(eval_cost(bank.lookup("gp_op"), 1) == 1);
  CHECK_THROWS_AS(eval_cost(bank.lookup("matmul"), 0), Error);
}

TEST_CASE("op counts, fan-in and fan-out match traced naive algorithms") {
  const auto bank = AlgoBank::builtin();
  for (int n = 1; n <= 24; ++n) {
    CAPTURE(n);
    const auto mm = oracle::trace_matmul(n);
    for (const char* id : {"matmul", "matmul2"}) {
      const auto& e = bank.lookup(id);
      CHECK(e.compute_cost(n) == mm.ops());
      CHECK(e.internal_fanin(n) == mm.fanin());
      CHECK(e.internal_fanout(n) == mm.fanout());
    }
    const auto ma = oracle::trace_matadd(n);
    CHECK(bank.lookup("matadd").compute_cost(n) == ma.ops());
    CHECK(bank.lookup("matadd").internal_fanin(n) == ma.fanin());
    CHECK(bank.lookup("matadd").internal_fanout(n) == ma.fanout());
    const auto mt = oracle::trace_mattrans(n);
    CHECK(bank.lookup("mattrans").compute_cost(n) == mt.ops());
    CHECK(bank.lookup("mattrans").internal_fanin(n) == mt.fanin());
    CHECK(bank.lookup("mattrans").internal_fanout(n) == mt.fanout());
    const auto el = oracle::trace_elimination(n);
    for (const char* id : {"lud", "matinv"}) {
      const auto& e = bank.lookup(id);
      CHECK(e.compute_cost(n) == el.ops());
      CHECK(e.internal_fanin(n) == el.fanin());
      CHECK(e.internal_fanout(n) == el.fanout());
    }
  }
}

TEST_CASE("merge sort cost equals counted element moves") {
  const auto& e = AlgoBank::builtin().lookup("sort");
  for (int n = 1; n <= 64; ++n) {
    CAPTURE(n);
    CHECK(e.compute_cost(n) == oracle::mergesort_moves(n));
  }
}

TEST_CASE("internal fan-in examples") {
  const auto bank = AlgoBank::builtin();
  CHECK(bank.lookup("matadd").internal_fanin(4) == 32);
  CHECK(bank.lookup("gp_op").internal_fanin(1) == 2);
  CHECK(bank.lookup("mattrans").internal_fanin(3) == 9);
}

TEST_CASE("costs are non-decreasing and max_size_within inverts them") {
  const auto bank = AlgoBank::builtin();
  for (const auto& [id, e] : bank.entries()) {
    CAPTURE(id);
    for (int n = 1; n < 200; ++n) CHECK(e.compute_cost(n) <= e.compute_cost(n + 1));
  }
  const auto& mm = bank.lookup("matmul");
  CHECK(max_size_within(mm, 1900) == 10);
  CHECK(max_size_within(mm, 1899) == 9);
  CHECK(max_size_within(mm, 0.5) == 0);
  CHECK(max_size_within(bank.lookup("mattrans"), 0, 1000) == 1000);
}

TEST_CASE("bank files overlay the built-ins") {
  const auto doc = nlohmann::json::parse(R"({
    "cubic": {"class": "numeric", "cost_kind": "polynomial", "params": {"cost": [1, 0, 0, 2]}},
    "matmul": {"class": "general-purpose", "cost_kind": "scalar"}
  })");
  const auto bank = AlgoBank::from_json(doc);
  CHECK(bank.lookup("cubic").compute_cost(3) == 55);
  CHECK(bank.lookup("matmul").compute_cost(10) == 1);
  CHECK(bank.contains("matadd"));
  CHECK(AlgoBank::from_json(bank.to_json()).to_json() == bank.to_json());
  CHECK_THROWS_AS(AlgoBank::from_json(nlohmann::json::parse(R"({"x": {"class": "odd", "cost_kind": "scalar"}})")),
                  Error);
  CHECK_THROWS_AS(
      AlgoBank::from_json(nlohmann::json::parse(R"({"x": {"class": "numeric", "cost_kind": "polynomial"}})")), Error);
}

TEST_CASE("output bytes by shape") {
  const auto bank = AlgoBank::builtin();
  CHECK(bank.lookup("matmul").output_bytes(4) == 128);
  CHECK(bank.lookup("sort").output_bytes(10) == 80);
  CHECK(bank.lookup("gp_op").output_bytes(1) == 8);
}
