#include "forge/codesign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "forge/csv.hpp"
#include "forge/error.hpp"
#include "forge/random.hpp"

namespace forge {

AffinityMatrix build_affinity(const HyperGraph& g) {
  AffinityMatrix a;
  for (const auto& v : g.vertices()) a.units.push_back(v.id);
  a.bytes = SquareMatrix<double>(a.units.size(), 0.0);
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto s = g.src_index(k);
    const auto d = g.dst_index(k);
    const auto b = static_cast<double>(g.edges()[k].bytes);
    a.bytes(s, d) += b;
    a.bytes(d, s) += b;
  }
  return a;
}

// ---------------------------------------------------------------------------
// k-means

namespace {

using Points = std::vector<std::vector<double>>;

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

struct Clustering {
  std::vector<int> assignment;
  Points centers;
  double wcss = std::numeric_limits<double>::infinity();
};

std::size_t nearest(const Points& centers, const std::vector<double>& p, double* dist = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = sq_dist(centers[c], p);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist) *dist = best_d;
  return best;
}

Points plus_plus_seed(const Points& pts, std::size_t k, Rng& rng) {
  Points centers;
  centers.push_back(pts[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pts.size()) - 1))]);
  std::vector<double> d2(pts.size());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      nearest(centers, pts[i], &d2[i]);
      total += d2[i];
    }
    if (total <= 0.0) {
      centers.push_back(pts[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pts.size()) - 1))]);
    } else {
      centers.push_back(pts[rng.weighted_index(d2)]);
    }
  }
  return centers;
}

Clustering lloyd(const Points& pts, Points centers, int max_iterations, double tolerance) {
  const std::size_t k = centers.size();
  const std::size_t dim = pts.front().size();
  Clustering out;
  out.assignment.assign(pts.size(), 0);
  for (int it = 0; it < max_iterations; ++it) {
    for (std::size_t i = 0; i < pts.size(); ++i) out.assignment[i] = static_cast<int>(nearest(centers, pts[i]));
    Points next(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto c = static_cast<std::size_t>(out.assignment[i]);
      ++counts[c];
      for (std::size_t j = 0; j < dim; ++j) next[c][j] += pts[i][j];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        next[c] = centers[c];  // empty cluster keeps its center
        continue;
      }
      for (auto& x : next[c]) x /= static_cast<double>(counts[c]);
      shift = std::max(shift, sq_dist(next[c], centers[c]));
    }
    centers = std::move(next);
    if (shift <= tolerance) break;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) out.assignment[i] = static_cast<int>(nearest(centers, pts[i]));
  out.wcss = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.wcss += sq_dist(pts[i], centers[static_cast<std::size_t>(out.assignment[i])]);
  out.centers = std::move(centers);
  return out;
}

// Renumbers clusters by first appearance so equal partitions compare equal.
std::vector<int> canonical_labels(const std::vector<int>& assignment) {
  std::map<int, int> relabel;
  std::vector<int> out;
  for (int a : assignment) {
    auto [it, _] = relabel.try_emplace(a, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

int select_elbow(const std::vector<double>& wcss) {
  const auto n = wcss.size();
  if (n <= 1 || wcss[0] <= 0.0) return 1;
  if (n == 2) return wcss[1] < wcss[0] ? 2 : 1;
  int best = 1;
  double best_d2 = 0.0;
  for (std::size_t k = 2; k + 1 <= n; ++k) {
    // second difference around k (1-based): w(k-1) - 2 w(k) + w(k+1)
    const double d2 = wcss[k - 2] - 2.0 * wcss[k - 1] + wcss[k];
    if (d2 > best_d2) {
      best_d2 = d2;
      best = static_cast<int>(k);
    }
  }
  return best;
}

CoreTypePlan cluster_cores(const AffinityMatrix& a, const ClusterOptions& options) {
  const std::size_t n = a.units.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "affinity matrix is empty");
  if (options.k_max < 1 || static_cast<std::size_t>(options.k_max) > n)
    throw Error(ErrorKind::InvalidArgument, "k_max must lie in 1.." + std::to_string(n));
  if (options.forced_k && (*options.forced_k < 1 || *options.forced_k > options.k_max))
    throw Error(ErrorKind::InvalidArgument, "forced k must lie in 1..k_max");

  Points pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(a.bytes.row(i));

  CoreTypePlan plan;
  plan.units = a.units;
  plan.degenerate = std::all_of(pts.begin(), pts.end(), [&](const auto& p) { return p == pts.front(); });

  std::vector<Clustering> best_per_k;
  for (int k = 1; k <= options.k_max; ++k) {
    Rng rng(options.seed, "kmeans/k" + std::to_string(k));
    Clustering best;
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
      auto run = lloyd(pts, plus_plus_seed(pts, static_cast<std::size_t>(k), rng), options.max_iterations,
                       options.tolerance);
      if (run.wcss < best.wcss) best = std::move(run);
    }
    // Extending the best (k-1) solution by its worst-served point keeps the
    // curve non-increasing.
    if (k > 1) {
      Points centers = best_per_k.back().centers;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        double d;
        nearest(centers, pts[i], &d);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centers.push_back(pts[far]);
      auto run = lloyd(pts, std::move(centers), options.max_iterations, options.tolerance);
      if (run.wcss < best.wcss) best = std::move(run);
    }
    plan.wcss_curve.emplace_back(k, best.wcss);
    best_per_k.push_back(std::move(best));
  }

  std::vector<double> curve;
  for (const auto& [_, w] : plan.wcss_curve) curve.push_back(w);
  if (options.forced_k) {
    plan.k = *options.forced_k;
    plan.elbow_selected = false;
  } else {
    plan.k = plan.degenerate ? 1 : select_elbow(curve);
  }
  plan.assignment = canonical_labels(best_per_k[static_cast<std::size_t>(plan.k - 1)].assignment);
  // Lloyd can leave a cluster empty; report the number actually used.
  plan.k = *std::max_element(plan.assignment.begin(), plan.assignment.end()) + 1;
  return plan;
}

// ---------------------------------------------------------------------------

InterCoreMatrix inter_core_matrix(const HyperGraph& g, const CoreTypePlan& plan) {
  if (plan.units.size() != plan.assignment.size())
    throw Error(ErrorKind::CoverageMismatch, "plan assignment does not match its unit list");
  std::map<std::string, int, std::less<>> core_of;
  for (std::size_t i = 0; i < plan.units.size(); ++i) {
    if (plan.assignment[i] < 0 || plan.assignment[i] >= plan.k)
      throw Error(ErrorKind::CoverageMismatch, "unit '" + plan.units[i] + "' assigned outside 0..k-1");
    if (!core_of.emplace(plan.units[i], plan.assignment[i]).second)
      throw Error(ErrorKind::CoverageMismatch, "unit '" + plan.units[i] + "' assigned twice");
  }
  if (core_of.size() != g.vertices().size())
    throw Error(ErrorKind::CoverageMismatch, "plan covers " + std::to_string(core_of.size()) + " units, graph has " +
                                                 std::to_string(g.vertices().size()));
  std::vector<int> core(g.vertices().size());
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    const auto it = core_of.find(g.vertices()[v].id);
    if (it == core_of.end())
      throw Error(ErrorKind::CoverageMismatch, "vertex '" + g.vertices()[v].id + "' has no core type");
    core[v] = it->second;
  }

  InterCoreMatrix out;
  const auto k = static_cast<std::size_t>(plan.k);
  out.bytes = SquareMatrix<std::uint64_t>(k, 0);
  out.intra.assign(k, 0);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto a = static_cast<std::size_t>(core[g.src_index(e)]);
    const auto b = static_cast<std::size_t>(core[g.dst_index(e)]);
    const auto bytes = g.edges()[e].bytes;
    if (a == b) {
      out.intra[a] += bytes;
    } else {
      out.bytes(a, b) += bytes;
      out.bytes(b, a) += bytes;
    }
  }
  return out;
}

double mean_nonzero_entry(const SquareMatrix<std::uint64_t>& m) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m(i, j) != 0) {
        sum += static_cast<double>(m(i, j));
        ++count;
      }
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

double block_density(const SquareMatrix<std::uint64_t>& m, const std::vector<int>& block) {
  if (block.empty()) return 0.0;
  double sum = 0.0;
  for (int i : block) {
    for (int j : block) sum += static_cast<double>(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  }
  const auto n = static_cast<double>(block.size());
  return sum / (n * n);
}

std::vector<std::vector<int>> partition_matrix(const SquareMatrix<std::uint64_t>& m, double density_thresh) {
  const auto n = m.size();
  const double floor = density_thresh * mean_nonzero_entry(m);
  std::vector<bool> free(n, true);
  std::vector<std::vector<int>> parts;

  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> seed;
    std::uint64_t heaviest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (free[i] && free[j] && m(i, j) > heaviest) {
          heaviest = m(i, j);
          seed = {i, j};
        }
      }
    }
    if (!seed) break;
    std::vector<int> block{static_cast<int>(seed->first), static_cast<int>(seed->second)};
    free[seed->first] = free[seed->second] = false;
    for (;;) {
      std::optional<std::size_t> pick;
      std::uint64_t gain = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!free[c]) continue;
        std::uint64_t added = 0;
        for (int s : block) added += m(c, static_cast<std::size_t>(s));
        if (!pick || added > gain) {
          pick = c;
          gain = added;
        }
      }
      if (!pick || gain == 0) break;
      auto grown = block;
      grown.push_back(static_cast<int>(*pick));
      if (block_density(m, grown) < floor) break;
      block = std::move(grown);
      free[*pick] = false;
    }
    std::sort(block.begin(), block.end());
    parts.push_back(std::move(block));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (free[i]) parts.push_back({static_cast<int>(i)});
  }
  return parts;
}

MeshPlan size_mesh(const std::vector<std::vector<int>>& partitions, const SquareMatrix<std::uint64_t>& m,
                   std::uint64_t switch_bytes) {
  if (switch_bytes < 1) throw Error(ErrorKind::InvalidArgument, "switch bytes must be >= 1");
  MeshPlan plan;
  plan.switch_bytes = switch_bytes;
  for (const auto& cores : partitions) {
    MeshPartition p;
    p.cores = cores;
    for (std::size_t a = 0; a < cores.size(); ++a) {
      for (std::size_t b = a + 1; b < cores.size(); ++b)
        p.bytes += m(static_cast<std::size_t>(cores[a]), static_cast<std::size_t>(cores[b]));
    }
    p.switches = std::max<std::uint64_t>(1, (p.bytes + switch_bytes - 1) / switch_bytes);
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(p.switches)));
    while (r * r > p.switches) --r;
    while ((r + 1) * (r + 1) <= p.switches) ++r;
    p.rows = r;
    p.cols = (p.switches + r - 1) / r;
    plan.partitions.push_back(std::move(p));
  }
  return plan;
}

CodesignResult run_codesign(const HyperGraph& g, const CodesignOptions& options) {
  CodesignResult r;
  const auto affinity = build_affinity(g);
  ClusterOptions cluster = options.cluster;
  cluster.k_max = std::min<int>(cluster.k_max, static_cast<int>(affinity.units.size()));
  r.plan = cluster_cores(affinity, cluster);
  r.cores = inter_core_matrix(g, r.plan);
  r.partitions = partition_matrix(r.cores.bytes, options.density_thresh);
  r.mesh = size_mesh(r.partitions, r.cores.bytes, options.switch_bytes);
  return r;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const CodesignResult& r) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [k, w] : r.plan.wcss_curve) curve.push_back({{"k", k}, {"wcss", w}});
  nlohmann::json mesh = nlohmann::json::array();
  for (const auto& p : r.mesh.partitions) {
    mesh.push_back({{"cores", p.cores},
                    {"bytes", p.bytes},
                    {"switches", p.switches},
                    {"rows", p.rows},
                    {"cols", p.cols}});
  }
  return {{"k", r.plan.k},
          {"elbow_selected", r.plan.elbow_selected},
          {"degenerate", r.plan.degenerate},
          {"units", r.plan.units},
          {"assignment", r.plan.assignment},
          {"wcss_curve", curve},
          {"inter_core", {{"bytes", r.cores.bytes.rows()}, {"intra", r.cores.intra}}},
          {"partitions", r.partitions},
          {"mesh", {{"switch_bytes", r.mesh.switch_bytes}, {"partitions", mesh}}}};
}

CodesignResult codesign_from_json(const nlohmann::json& doc) {
  CodesignResult r;
  try {
    r.plan.k = doc.at("k").get<int>();
    r.plan.elbow_selected = doc.at("elbow_selected").get<bool>();
    r.plan.degenerate = doc.at("degenerate").get<bool>();
    r.plan.units = doc.at("units").get<std::vector<std::string>>();
    r.plan.assignment = doc.at("assignment").get<std::vector<int>>();
    for (const auto& row : doc.at("wcss_curve"))
      r.plan.wcss_curve.emplace_back(row.at("k").get<int>(), row.at("wcss").get<double>());
    r.cores.bytes =
        SquareMatrix<std::uint64_t>::from_rows(doc.at("inter_core").at("bytes").get<std::vector<std::vector<std::uint64_t>>>());
    r.cores.intra = doc.at("inter_core").at("intra").get<std::vector<std::uint64_t>>();
    r.partitions = doc.at("partitions").get<std::vector<std::vector<int>>>();
    r.mesh.switch_bytes = doc.at("mesh").at("switch_bytes").get<std::uint64_t>();
    for (const auto& p : doc.at("mesh").at("partitions")) {
      r.mesh.partitions.push_back({p.at("cores").get<std::vector<int>>(), p.at("bytes").get<std::uint64_t>(),
                                   p.at("switches").get<std::uint64_t>(), p.at("rows").get<std::uint64_t>(),
                                   p.at("cols").get<std::uint64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("codesign plan: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::SchemaMismatch, std::string("codesign plan: ") + e.what());
  }
  return r;
}

std::string inter_core_csv(const InterCoreMatrix& m) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m.bytes.size(); ++i) labels.push_back("core" + std::to_string(i));
  return csv::grid(m.bytes.rows(), labels, "core");
}

}  // namespace forge
