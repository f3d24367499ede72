#include "forge/cloner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "forge/error.hpp"
#include "forge/generator.hpp"
#include "forge/random.hpp"

namespace forge {

// ---------------------------------------------------------------------------
// WPPL-lite scanner

namespace {

struct Token {
  enum Kind { Name, Number, Punct, End } kind = End;
  std::string text;
  std::size_t col = 0;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const { throw SyntaxError(line_no_, at.col, msg); }

  Token expect_punct(std::string_view p) {
    if (current_.kind != Token::Punct || current_.text != p)
      fail(current_, "expected '" + std::string(p) + "'" + found());
    return take();
  }

  Token expect_name() {
    if (current_.kind != Token::Name) fail(current_, "expected a name" + found());
    return take();
  }

  Token expect_number() {
    if (current_.kind != Token::Number) fail(current_, "expected a number" + found());
    return take();
  }

  bool accept_punct(std::string_view p) {
    if (current_.kind == Token::Punct && current_.text == p) {
      advance();
      return true;
    }
    return false;
  }

  void expect_end() {
    if (current_.kind != Token::End) fail(current_, "unexpected trailing input" + found());
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string found() const {
    return current_.kind == Token::End ? " at end of line" : ", found '" + current_.text + "'";
  }

  void advance() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    current_ = Token{};
    current_.col = pos_ + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      current_.kind = Token::End;
      return;
    }
    const char c = line_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_' || line_[pos_] == '.'))
        ++pos_;
      current_.kind = Token::Name;
      current_.text = std::string(line_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const auto start = pos_;
      while (pos_ < line_.size() &&
             (std::isdigit(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '.' || line_[pos_] == 'e' ||
              line_[pos_] == 'E' ||
              ((line_[pos_] == '-' || line_[pos_] == '+') && (line_[pos_ - 1] == 'e' || line_[pos_ - 1] == 'E'))))
        ++pos_;
      current_.kind = Token::Number;
      current_.text = std::string(line_.substr(start, pos_ - start));
      return;
    }
    if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
      current_.kind = Token::Punct;
      current_.text = "->";
      pos_ += 2;
      return;
    }
    if (std::string_view("=(),[]{}:").find(c) != std::string_view::npos) {
      current_.kind = Token::Punct;
      current_.text = std::string(1, c);
      ++pos_;
      return;
    }
    throw SyntaxError(line_no_, pos_ + 1, std::string("unexpected character '") + c + "'");
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  Token current_;
};

std::int64_t parse_int(LineLexer& lx, const Token& t) {
  std::int64_t v = 0;
  for (char c : t.text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) lx.fail(t, "expected a positive integer, found '" + t.text + "'");
    v = v * 10 + (c - '0');
    if (v > (std::int64_t{1} << 50)) lx.fail(t, "integer out of range");
  }
  if (v < 1) lx.fail(t, "expected a positive integer, found '" + t.text + "'");
  return v;
}

struct Attrs {
  std::optional<std::int64_t> bytes;
  std::optional<std::int64_t> size;
};

Attrs parse_attrs(LineLexer& lx) {
  Attrs a;
  if (!lx.accept_punct("[")) return a;
  do {
    const Token key = lx.expect_name();
    lx.expect_punct("=");
    const Token value = lx.expect_number();
    const auto v = parse_int(lx, value);
    if (key.text == "bytes") a.bytes = v;
    else if (key.text == "size") a.size = v;
    else lx.fail(key, "unknown attribute '" + key.text + "'");
  } while (lx.accept_punct(","));
  lx.expect_punct("]");
  return a;
}

struct Definition {
  bool is_input = false;
  std::uint64_t bytes = 8;
  int level = 0;  // inputs sit at level 0
  std::size_t line = 0;
};

struct PendingBranch {
  std::string vertex;
  std::vector<double> probs;
  std::vector<std::string> labels;
  std::size_t line = 0;
  std::size_t col = 0;
};

// Smallest n whose output fills `bytes`.
std::int64_t size_for_bytes(const AlgoEntry& e, std::uint64_t bytes) {
  std::int64_t lo = 1, hi = 1 << 20;
  if (e.output_bytes(hi) < bytes) return hi;
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (e.output_bytes(mid) >= bytes) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

}  // namespace

HyperGraph scan_program(std::string_view text, const AlgoBank& bank) {
  std::map<std::string, Definition, std::less<>> defs;
  std::vector<HyperVertex> vertices;
  std::vector<HyperEdge> edges;
  std::vector<PendingBranch> branches;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    ++line_no;

    LineLexer lx(line, line_no);
    if (lx.peek().kind == Token::End) continue;
    const Token head = lx.expect_name();

    if (head.text == "input" && lx.peek().kind == Token::Name) {
      const Token name = lx.take();
      const Attrs attrs = parse_attrs(lx);
      lx.expect_end();
      if (defs.contains(name.text)) lx.fail(name, "'" + name.text + "' is already defined");
      defs[name.text] = {true, static_cast<std::uint64_t>(attrs.bytes.value_or(8)), 0, line_no};
      continue;
    }

    if (head.text == "branch" && lx.peek().kind == Token::Punct && lx.peek().text == "(") {
      PendingBranch br;
      br.line = line_no;
      br.col = head.col;
      lx.expect_punct("(");
      br.vertex = lx.expect_name().text;
      lx.expect_punct(")");
      lx.expect_punct("{");
      const Token kw = lx.expect_name();
      if (kw.text != "probs") lx.fail(kw, "expected 'probs'");
      lx.expect_punct(":");
      do {
        const Token num = lx.expect_number();
        try {
          br.probs.push_back(std::stod(num.text));
        } catch (const std::exception&) {
          lx.fail(num, "malformed number '" + num.text + "'");
        }
      } while (lx.accept_punct(","));
      lx.expect_punct("}");
      lx.expect_punct("->");
      do br.labels.push_back(lx.expect_name().text);
      while (lx.accept_punct(","));
      lx.expect_end();
      branches.push_back(std::move(br));
      continue;
    }

    // assignment
    lx.expect_punct("=");
    const Token op = lx.expect_name();
    lx.expect_punct("(");
    std::vector<Token> args;
    if (!lx.accept_punct(")")) {
      do args.push_back(lx.expect_name());
      while (lx.accept_punct(","));
      lx.expect_punct(")");
    }
    const Attrs attrs = parse_attrs(lx);
    lx.expect_end();

    if (defs.contains(head.text)) lx.fail(head, "'" + head.text + "' is already defined");
    if (!bank.contains(op.text))
      throw Error(ErrorKind::UnknownAlgorithm, "line " + std::to_string(line_no) + ", col " + std::to_string(op.col) +
                                                   ": unknown algorithm '" + op.text + "'");
    const auto& entry = bank.lookup(op.text);

    int level = 1;
    for (const auto& a : args) {
      const auto it = defs.find(a.text);
      if (it == defs.end())
        throw Error(ErrorKind::UseBeforeDef, "line " + std::to_string(line_no) + ", col " + std::to_string(a.col) +
                                                 ": '" + a.text + "' used before definition");
      level = std::max(level, it->second.level + 1);
    }

    std::int64_t size = 1;
    if (attrs.size) size = *attrs.size;
    else if (attrs.bytes) size = size_for_bytes(entry, static_cast<std::uint64_t>(*attrs.bytes));
    const std::uint64_t bytes = attrs.bytes ? static_cast<std::uint64_t>(*attrs.bytes) : entry.output_bytes(size);

    for (const auto& a : args) {
      const auto& d = defs.at(a.text);
      if (!d.is_input) edges.push_back({a.text, head.text, d.bytes});
    }
    defs[head.text] = {false, bytes, level, line_no};
    vertices.push_back({head.text, level, op.text, size});
  }

  if (vertices.empty()) throw SyntaxError(line_no, 1, "program defines no operations");
  HyperGraph graph(std::move(vertices), std::move(edges));

  std::vector<ControlFlowVector> control;
  for (const auto& br : branches) {
    const auto where = "line " + std::to_string(br.line) + ": ";
    const auto v = graph.find(br.vertex);
    if (!v) {
      if (defs.contains(br.vertex)) throw Error(ErrorKind::BranchMismatch, where + "cannot branch on input '" + br.vertex + "'");
      throw Error(ErrorKind::UseBeforeDef, where + "branch on undefined '" + br.vertex + "'");
    }
    if (br.probs.size() != br.labels.size())
      throw Error(ErrorKind::BranchMismatch, where + "branch has " + std::to_string(br.probs.size()) +
                                                 " probabilities for " + std::to_string(br.labels.size()) + " targets");
    const auto& outs = graph.out_edges(*v);
    std::vector<std::string> consumers;
    for (auto k : outs) consumers.push_back(graph.edges()[k].dst);
    std::vector<double> probs(outs.size(), 0.0);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < br.labels.size(); ++i) {
      const auto& label = br.labels[i];
      if (!defs.contains(label)) throw Error(ErrorKind::UseBeforeDef, where + "branch target '" + label + "' is undefined");
      if (!seen.insert(label).second) throw Error(ErrorKind::BranchMismatch, where + "duplicate branch target '" + label + "'");
      const auto hit = std::find(consumers.begin(), consumers.end(), label);
      if (hit == consumers.end())
        throw Error(ErrorKind::BranchMismatch, where + "'" + label + "' does not consume '" + br.vertex + "'");
      if (std::count(consumers.begin(), consumers.end(), label) != 1)
        throw Error(ErrorKind::BranchMismatch, where + "'" + label + "' consumes '" + br.vertex + "' more than once");
      probs[static_cast<std::size_t>(hit - consumers.begin())] = br.probs[i];
    }
    if (seen.size() != consumers.size())
      throw Error(ErrorKind::BranchMismatch, where + "branch must list every consumer of '" + br.vertex + "'");
    double sum = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BranchMismatch, where + "probability outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw Error(ErrorKind::BranchMismatch, where + "probabilities do not sum to 1");
    for (auto& p : probs) p /= sum;
    control.push_back({br.vertex, std::move(probs)});
  }
  if (!control.empty()) graph = graph.with_control(std::move(control));
  return graph;
}

// ---------------------------------------------------------------------------

std::map<std::string, UnitStats> unit_statistics(const HyperGraph& g) {
  const auto L = static_cast<std::size_t>(g.num_levels());
  std::map<std::string, std::vector<double>> counts;
  for (const auto& v : g.vertices()) {
    auto& c = counts[v.algo];
    if (c.empty()) c.assign(L, 0.0);
    c[static_cast<std::size_t>(v.level - 1)] += 1.0;
  }
  std::map<std::string, UnitStats> out;
  for (const auto& [id, c] : counts) {
    double mean = 0.0;
    for (double x : c) mean += x;
    mean /= static_cast<double>(L);
    double var = 0.0;
    for (double x : c) var += (x - mean) * (x - mean);
    var /= static_cast<double>(L);
    out[id] = {mean, var};
  }
  return out;
}

ComplexityProfile extract_profile(const HyperGraph& g, const AlgoBank& bank) {
  ComplexityProfile p = profile(g, bank);
  p.unit_stats = unit_statistics(g);
  return p;
}

std::uint64_t structure_hash(const HyperGraph& g) {
  std::ostringstream os;
  for (const auto& level : g.levels()) {
    std::vector<std::pair<std::size_t, std::size_t>> degrees;
    for (auto v : level) degrees.emplace_back(g.in_edges(v).size(), g.out_edges(v).size());
    std::sort(degrees.begin(), degrees.end());
    for (const auto& [i, o] : degrees) os << i << ',' << o << ';';
    os << '|';
  }
  return fnv1a64(os.str());
}

// ---------------------------------------------------------------------------
// Clone synthesis

namespace {

bool row_within(double got, double target, double tol) { return std::abs(got - target) <= tol * target + 1e-9; }

bool cell_within(double got, double target, double tol) {
  if (target == 0.0) return std::abs(got) <= 1.0;
  return std::abs(got - target) <= tol * target + 1e-9;
}

[[noreturn]] void infeasible_level(int level, const std::string& why) {
  throw Error(ErrorKind::InfeasibleTarget, "level " + std::to_string(level) + ": " + why);
}

[[noreturn]] void infeasible_cell(int from, int to, const std::string& why) {
  throw Error(ErrorKind::InfeasibleTarget, "cell (" + std::to_string(from) + "," + std::to_string(to) + "): " + why);
}

constexpr std::size_t kMaxVerticesPerLevel = 4096;
constexpr std::int64_t kSizeCap = 1 << 16;
constexpr double kMaxExactTarget = 4e6;

struct Unit {
  std::string algo;
  std::int64_t size;
};

// Exact fallback: unbounded knapsack over integer costs on top of the
// mandatory one-vertex-per-ALFU base, minimizing vertex count.
std::optional<std::vector<Unit>> exact_fill(const std::vector<const AlgoEntry*>& entries, double base, double target,
                                            double tol) {
  if (target > kMaxExactTarget) return std::nullopt;
  const auto upper = static_cast<std::int64_t>(std::floor(target * (1.0 + tol) - base + 1e-9));
  if (upper < 0) return std::nullopt;
  struct Item {
    std::int64_t cost;
    std::size_t entry;
    std::int64_t size;
  };
  std::vector<Item> items;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    double last = -1.0;
    for (std::int64_t n = 1; n <= kSizeCap; ++n) {
      const double c = entries[e]->compute_cost(n);
      if (c > static_cast<double>(upper)) break;
      if (c != std::floor(c)) return std::nullopt;
      if (c > 0.0 && c != last) items.push_back({static_cast<std::int64_t>(c), e, n});
      last = c;
      if (c == entries[e]->compute_cost(n + 1) && c == entries[e]->compute_cost(kSizeCap)) break;
    }
  }
  constexpr auto kUnreached = std::numeric_limits<std::uint32_t>::max();
  const auto span = static_cast<std::size_t>(upper) + 1;
  std::vector<std::uint32_t> count(span, kUnreached);
  std::vector<std::uint32_t> via(span, 0);
  count[0] = 0;
  for (std::size_t t = 1; t < span; ++t) {
    for (std::uint32_t i = 0; i < items.size(); ++i) {
      const auto c = static_cast<std::size_t>(items[i].cost);
      if (c > t || count[t - c] == kUnreached) continue;
      if (count[t - c] + 1 < count[t]) {
        count[t] = count[t - c] + 1;
        via[t] = i;
      }
    }
  }
  std::optional<std::size_t> best;
  for (std::size_t t = 0; t < span; ++t) {
    if (count[t] == kUnreached || !row_within(base + static_cast<double>(t), target, tol)) continue;
    if (!best || std::abs(base + static_cast<double>(t) - target) < std::abs(base + static_cast<double>(*best) - target))
      best = t;
  }
  if (!best) return std::nullopt;
  std::vector<Unit> out;
  for (std::size_t t = *best; t > 0;) {
    const auto& item = items[via[t]];
    out.push_back({entries[item.entry]->id, item.size});
    t -= static_cast<std::size_t>(item.cost);
  }
  return out;
}

std::vector<Unit> fill_level(const TableRow& row, const AlgoBank& bank, double tol, Rng& rng) {
  std::vector<const AlgoEntry*> entries;
  for (const auto& id : row.alfus) entries.push_back(&bank.lookup(id));

  std::vector<Unit> units;
  double sum = 0.0;
  // One vertex per listed ALFU, in a seed-dependent order.
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
  for (auto e : order) {
    units.push_back({entries[e]->id, 1});
    sum += entries[e]->compute_cost(1);
  }
  const double base = sum;
  if (sum > row.complexity * (1.0 + tol) + 1e-9)
    infeasible_level(row.level, "one vertex per ALFU already costs " + std::to_string(sum));

  // Randomized greedy: pick an ALFU weighted by the largest cost that still
  // fits, then a size between half that cost and the fit.
  while (!row_within(sum, row.complexity, tol) && units.size() < kMaxVerticesPerLevel) {
    const double remaining = row.complexity - sum;
    std::vector<double> weights(entries.size(), 0.0);
    std::vector<std::int64_t> fit(entries.size(), 0);
    for (std::size_t e = 0; e < entries.size(); ++e) {
      fit[e] = max_size_within(*entries[e], remaining, kSizeCap);
      if (fit[e] >= 1) weights[e] = entries[e]->compute_cost(fit[e]);
    }
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w <= 0.0; })) break;
    const auto e = rng.weighted_index(weights);
    const double top = entries[e]->compute_cost(fit[e]);
    std::int64_t n = 1;
    if (entries[e]->compute_cost(1) < top) {
      const auto lo = std::max<std::int64_t>(1, max_size_within(*entries[e], top / 2.0, kSizeCap));
      n = rng.uniform_int(lo, fit[e]);
    }
    units.push_back({entries[e]->id, n});
    sum += entries[e]->compute_cost(n);
  }
  if (row_within(sum, row.complexity, tol)) return units;

  if (auto extra = exact_fill(entries, base, row.complexity, tol)) {
    units.resize(entries.size());
    units.insert(units.end(), extra->begin(), extra->end());
    return units;
  }
  infeasible_level(row.level, "no vertex assignment reaches " + std::to_string(row.complexity) + " within tolerance");
}

HyperGraph build_clone(const ComplexityProfile& target, const AlgoBank& bank, double tol, Rng& rng) {
  const int L = target.num_levels();
  std::vector<HyperVertex> vertices;
  std::vector<std::vector<std::string>> level_ids(static_cast<std::size_t>(L));
  for (const auto& row : target.computation_table) {
    Rng level_rng = rng.fork("level/" + std::to_string(row.level));
    const auto units = fill_level(row, bank, tol, level_rng);
    for (std::size_t k = 0; k < units.size(); ++k) {
      char id[48];
      std::snprintf(id, sizeof id, "C%03d_%04zu", row.level, k);
      vertices.push_back({id, row.level, units[k].algo, units[k].size});
      level_ids[static_cast<std::size_t>(row.level - 1)].push_back(id);
    }
  }

  std::vector<HyperEdge> edges;
  for (int i = 1; i <= L; ++i) {
    for (int j = i + 1; j <= L; ++j) {
      const double w = target.cell(i, j);
      if (w == 0.0) continue;
      Rng cell_rng = rng.fork("cell/" + std::to_string(i) + "/" + std::to_string(j));
      const auto depth = static_cast<double>(j - i);
      const auto total = std::max<std::int64_t>(1, std::llround(w / depth));
      if (!cell_within(depth * static_cast<double>(total), w, tol))
        infeasible_cell(i, j, "weight " + std::to_string(w) + " is not reachable at depth " + std::to_string(j - i));
      const auto& srcs = level_ids[static_cast<std::size_t>(i - 1)];
      const auto& dsts = level_ids[static_cast<std::size_t>(j - 1)];
      const auto pairs = static_cast<std::int64_t>(srcs.size() * dsts.size());
      const auto count = cell_rng.uniform_int(1, std::min<std::int64_t>({total, pairs + 1, 6}));
      const auto each = total / count;
      for (std::int64_t k = 0; k < count; ++k) {
        const auto bytes = k + 1 == count ? total - each * (count - 1) : each;
        const auto& s = srcs[static_cast<std::size_t>(cell_rng.uniform_int(0, static_cast<std::int64_t>(srcs.size()) - 1))];
        const auto& d = dsts[static_cast<std::size_t>(cell_rng.uniform_int(0, static_cast<std::int64_t>(dsts.size()) - 1))];
        edges.push_back({s, d, static_cast<std::uint64_t>(bytes)});
      }
    }
  }
  return HyperGraph(std::move(vertices), std::move(edges));
}

}  // namespace

ProfileDiff compare_profiles(const ComplexityProfile& got, const ComplexityProfile& target, double tolerance) {
  ProfileDiff diff;
  if (got.num_levels() != target.num_levels()) {
    diff.within = false;
    diff.worst_location = "level count";
    return diff;
  }
  const auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / b; };
  for (std::size_t l = 0; l < target.computation_table.size(); ++l) {
    const auto& t = target.computation_table[l];
    const auto& g = got.computation_table[l];
    const double err = rel(g.complexity, t.complexity);
    if (err > diff.worst_row_error) diff.worst_row_error = err;
    if (!row_within(g.complexity, t.complexity, tolerance) || g.alfus != t.alfus) {
      diff.within = false;
      diff.worst_location = "level " + std::to_string(t.level);
    }
  }
  const auto L = static_cast<int>(target.num_levels());
  for (int i = 1; i <= L; ++i) {
    for (int j = 1; j <= L; ++j) {
      const double err = rel(got.cell(i, j), target.cell(i, j));
      if (err > diff.worst_cell_error) diff.worst_cell_error = err;
      if (!cell_within(got.cell(i, j), target.cell(i, j), tolerance)) {
        diff.within = false;
        diff.worst_location = "cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  }
  return diff;
}

HyperGraph synthesize_clone(const ComplexityProfile& target, const AlgoBank& bank, const CloneOptions& options) {
  target.validate();
  if (!(options.tolerance >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be >= 0");
  const int L = target.num_levels();
  for (const auto& row : target.computation_table) {
    if (row.alfus.empty()) infeasible_level(row.level, "no ALFU listed");
    for (const auto& id : row.alfus) bank.lookup(id);
  }
  for (int i = 1; i <= L; ++i) {
    for (int j = 1; j <= i; ++j) {
      if (target.cell(i, j) != 0.0)
        infeasible_cell(i, j, "communication against level order cannot be realized by forward edges");
    }
  }

  std::set<std::uint64_t> taken;
  for (const auto& s : options.sources) taken.insert(structure_hash(s));

  Rng root(options.seed, "clone");
  std::optional<HyperGraph> clone;
  for (int attempt = 0; attempt < std::max(1, options.max_attempts); ++attempt) {
    Rng rng = root.fork("attempt/" + std::to_string(attempt));
    clone = build_clone(target, bank, options.tolerance, rng);
    if (!taken.contains(structure_hash(*clone))) break;
  }

  const auto diff = compare_profiles(extract_profile(*clone, bank), target, options.tolerance);
  if (!diff.within) throw Error(ErrorKind::InfeasibleTarget, diff.worst_location + ": clone misses the target");
  return *clone;
}

}  // namespace forge
