#include "forge/algobank.hpp"

#include <bit>
#include <cmath>
#include <fstream>

#include "forge/error.hpp"

namespace forge {

std::string_view to_string(AlgoClass c) {
  switch (c) {
    case AlgoClass::Numeric: return "numeric";
    case AlgoClass::SemiNumeric: return "semi-numeric";
    case AlgoClass::NonNumeric: return "non-numeric";
    case AlgoClass::GeneralPurpose: return "general-purpose";
  }
  return "?";
}

std::string_view to_string(CostKind k) {
  switch (k) {
    case CostKind::Matmul: return "matmul";
    case CostKind::Matadd: return "matadd";
    case CostKind::Mattrans: return "mattrans";
    case CostKind::Elimination: return "elimination";
    case CostKind::Prim: return "prim";
    case CostKind::Nearest: return "nearest";
    case CostKind::MergeSort: return "mergesort";
    case CostKind::Scalar: return "scalar";
    case CostKind::Loop: return "loop";
    case CostKind::Polynomial: return "polynomial";
  }
  return "?";
}

namespace {

AlgoClass parse_class(const std::string& s) {
  if (s == "numeric") return AlgoClass::Numeric;
  if (s == "semi-numeric") return AlgoClass::SemiNumeric;
  if (s == "non-numeric") return AlgoClass::NonNumeric;
  if (s == "general-purpose") return AlgoClass::GeneralPurpose;
  throw Error(ErrorKind::SchemaMismatch, "unknown algorithm class '" + s + "'");
}

CostKind parse_kind(const std::string& s) {
  for (auto k : {CostKind::Matmul, CostKind::Matadd, CostKind::Mattrans, CostKind::Elimination,
                 CostKind::Prim, CostKind::Nearest, CostKind::MergeSort, CostKind::Scalar,
                 CostKind::Loop, CostKind::Polynomial}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::SchemaMismatch, "unknown cost_kind '" + s + "'");
}

double ceil_log2(std::int64_t n) {
  if (n <= 1) return 0.0;
  return static_cast<double>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
}

double poly(const nlohmann::json& coeffs, double n) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + it->get<double>();
  return acc;
}

double elimination_ops(double n) {
  return n * (n - 1.0) / 2.0 + (n - 1.0) * n * (2.0 * n - 1.0) / 3.0;
}

// Sum over elimination steps with m = n-1 .. 1 rows below the pivot: the
// pivot feeds m divisions, each multiplier feeds m updates and each pivot-row
// element feeds m updates. Broadcasts only count when m >= 2.
double elimination_fanout(double n) {
  double acc = 0.0;
  for (double m = 2.0; m <= n - 1.0; m += 1.0) acc += m + 2.0 * m * m;
  return acc;
}

double indexed_vars(const AlgoEntry& e) { return e.params.value("indexed_vars", 1.0); }

}  // namespace

double AlgoEntry::compute_cost(std::int64_t size) const {
  const auto n = static_cast<double>(size);
  switch (cost_kind) {
    case CostKind::Matmul: return 2.0 * n * n * n - n * n;
    case CostKind::Matadd: return n * n;
    case CostKind::Mattrans: return 0.0;
    case CostKind::Elimination: return elimination_ops(n);
    case CostKind::Prim:
    case CostKind::Nearest: return n * n;
    case CostKind::MergeSort: return n * ceil_log2(size);
    case CostKind::Scalar: return 1.0;
    case CostKind::Loop: return n * indexed_vars(*this);
    case CostKind::Polynomial: return poly(params.at("cost"), n);
  }
  return 0.0;
}

double AlgoEntry::internal_fanin(std::int64_t size) const {
  const auto n = static_cast<double>(size);
  switch (cost_kind) {
    case CostKind::Matmul:
    case CostKind::Matadd:
    case CostKind::Elimination:
    case CostKind::Prim:
    case CostKind::Nearest:
    case CostKind::Scalar:
    case CostKind::Loop: return 2.0 * compute_cost(size);
    case CostKind::Mattrans: return n * n;
    case CostKind::MergeSort: return compute_cost(size);
    case CostKind::Polynomial: return poly(params.value("fanin", nlohmann::json::array()), n);
  }
  return 0.0;
}

double AlgoEntry::internal_fanout(std::int64_t size) const {
  const auto n = static_cast<double>(size);
  switch (cost_kind) {
    // Every input element feeds n products.
    case CostKind::Matmul: return size >= 2 ? 2.0 * n * n * n : 0.0;
    case CostKind::Matadd:
    case CostKind::Mattrans:
    case CostKind::MergeSort:
    case CostKind::Scalar: return 0.0;
    case CostKind::Elimination: return elimination_fanout(n);
    // The vertex/city chosen in a round feeds n key or distance updates.
    case CostKind::Prim:
    case CostKind::Nearest: return size >= 2 ? n * n : 0.0;
    // a and b feed every indexed variable's address function.
    case CostKind::Loop: {
      const double vars = indexed_vars(*this);
      return vars >= 2.0 ? 2.0 * n * vars : 0.0;
    }
    case CostKind::Polynomial: return poly(params.value("fanout", nlohmann::json::array()), n);
  }
  return 0.0;
}

std::uint64_t AlgoEntry::output_bytes(std::int64_t size) const {
  const auto n = static_cast<std::uint64_t>(size < 1 ? 1 : size);
  std::uint64_t elems = 1;
  switch (cost_kind) {
    case CostKind::Matmul:
    case CostKind::Matadd:
    case CostKind::Mattrans:
    case CostKind::Elimination: elems = n * n; break;
    case CostKind::Prim:
    case CostKind::Nearest:
    case CostKind::MergeSort: elems = n; break;
    case CostKind::Scalar: elems = 1; break;
    case CostKind::Loop: elems = n * static_cast<std::uint64_t>(indexed_vars(*this)); break;
    case CostKind::Polynomial: {
      const double v = poly(params.value("output", nlohmann::json::array({1.0})), static_cast<double>(n));
      elems = static_cast<std::uint64_t>(std::llround(v));
      break;
    }
  }
  const std::uint64_t bytes = elems * elem_bytes;
  return bytes < 1 ? 1 : bytes;
}

void AlgoEntry::validate() const {
  if (id.empty()) throw Error(ErrorKind::SchemaMismatch, "algorithm id must be non-empty");
  if (elem_bytes < 1) throw Error(ErrorKind::SchemaMismatch, id + ": elem_bytes must be >= 1");
  if (cost_kind == CostKind::Polynomial) {
    if (!params.contains("cost") || !params["cost"].is_array())
      throw Error(ErrorKind::SchemaMismatch, id + ": polynomial entry needs params.cost array");
    for (const char* key : {"cost", "fanin", "fanout", "output"}) {
      if (!params.contains(key)) continue;
      for (const auto& c : params[key]) {
        if (!c.is_number() || c.get<double>() < 0.0)
          throw Error(ErrorKind::SchemaMismatch, id + ": polynomial coefficients must be >= 0");
      }
    }
  }
  if (cost_kind == CostKind::Loop && indexed_vars(*this) < 1.0)
    throw Error(ErrorKind::SchemaMismatch, id + ": loop entry needs indexed_vars >= 1");
}

double eval_cost(const AlgoEntry& entry, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidSize, "size must be >= 1, got " + std::to_string(n));
  return entry.compute_cost(n);
}

std::int64_t max_size_within(const AlgoEntry& entry, double budget, std::int64_t n_cap) {
  if (entry.compute_cost(1) > budget) return 0;
  std::int64_t lo = 1, hi = n_cap;
  if (entry.compute_cost(hi) <= budget) return hi;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (entry.compute_cost(mid) <= budget) lo = mid;
    else hi = mid;
  }
  return lo;
}

// ---------------------------------------------------------------------------

AlgoBank AlgoBank::builtin() {
  AlgoBank bank;
  const auto add = [&](std::string id, AlgoClass c, CostKind k, nlohmann::json params = nlohmann::json::object()) {
    bank.insert(AlgoEntry{std::move(id), c, k, std::move(params), 8});
  };
  add("matmul", AlgoClass::Numeric, CostKind::Matmul);
  add("matmul2", AlgoClass::Numeric, CostKind::Matmul);
  add("matadd", AlgoClass::Numeric, CostKind::Matadd);
  add("matadd2", AlgoClass::Numeric, CostKind::Matadd);
  add("mattrans", AlgoClass::Numeric, CostKind::Mattrans);
  add("matinv", AlgoClass::Numeric, CostKind::Elimination);
  add("lud", AlgoClass::Numeric, CostKind::Elimination);
  add("mst", AlgoClass::SemiNumeric, CostKind::Prim);
  add("tsp", AlgoClass::SemiNumeric, CostKind::Nearest);
  add("sort", AlgoClass::NonNumeric, CostKind::MergeSort);
  add("gp_op", AlgoClass::GeneralPurpose, CostKind::Scalar);
  // Loop models carrying locality of reference (see locality.hpp).
  add("loop_stream", AlgoClass::GeneralPurpose, CostKind::Loop,
      {{"start", {{"kind", "constant"}, {"params", {0}}}},
       {"step", {{"kind", "constant"}, {"params", {1}}}},
       {"end", {{"kind", "constant"}, {"params", {1 << 20}}}},
       {"indexed_vars", 2},
       {"block_words", 8}});
  add("loop_random", AlgoClass::GeneralPurpose, CostKind::Loop,
      {{"start", {{"kind", "uniform_int"}, {"params", {0, 4096}}}},
       {"step", {{"kind", "normal"}, {"params", {1, 16}}}},
       {"end", {{"kind", "constant"}, {"params", {1 << 20}}}},
       {"indexed_vars", 2},
       {"block_words", 8}});
  return bank;
}

AlgoBank AlgoBank::from_json(const nlohmann::json& doc, AlgoBank base) {
  if (!doc.is_object()) throw Error(ErrorKind::SchemaMismatch, "bank file must be a JSON object");
  for (const auto& [id, body] : doc.items()) {
    if (!body.is_object()) throw Error(ErrorKind::SchemaMismatch, "bank entry '" + id + "' must be an object");
    AlgoEntry e;
    e.id = id;
    e.algo_class = parse_class(body.at("class").get<std::string>());
    e.cost_kind = parse_kind(body.at("cost_kind").get<std::string>());
    e.params = body.value("params", nlohmann::json::object());
    e.elem_bytes = body.value("elem_bytes", std::uint64_t{8});
    e.validate();
    base.entries_[id] = std::move(e);
  }
  return base;
}

AlgoBank AlgoBank::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open bank file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, path.string() + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json AlgoBank::to_json() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [id, e] : entries_) {
    doc[id] = {{"class", to_string(e.algo_class)},
               {"cost_kind", to_string(e.cost_kind)},
               {"params", e.params},
               {"elem_bytes", e.elem_bytes}};
  }
  return doc;
}

const AlgoEntry& AlgoBank::lookup(std::string_view id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw Error(ErrorKind::UnknownAlgorithm, "unknown algorithm '" + std::string(id) + "'");
  return it->second;
}

bool AlgoBank::contains(std::string_view id) const { return entries_.find(id) != entries_.end(); }

void AlgoBank::insert(AlgoEntry entry) {
  entry.validate();
  if (entries_.contains(entry.id))
    throw Error(ErrorKind::InvalidArgument, "duplicate algorithm id '" + entry.id + "'");
  auto id = entry.id;
  entries_.emplace(std::move(id), std::move(entry));
}

std::vector<std::string> AlgoBank::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

}  // namespace forge
