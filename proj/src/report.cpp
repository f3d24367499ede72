#include "forge/report.hpp"

#include <cmath>

#include "forge/control_flow.hpp"
#include "forge/csv.hpp"
#include "forge/error.hpp"
#include "forge/io.hpp"

namespace forge {

namespace {

std::size_t bin_of(double v) {
  if (v < 1.0) return 0;
  return static_cast<std::size_t>(std::floor(std::log2(v))) + 1;
}

std::string histogram_csv(const std::vector<std::uint64_t>& counts) {
  std::string out = csv::record({"bin_lo", "bin_hi", "count"});
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double lo = b == 0 ? 0.0 : std::ldexp(1.0, static_cast<int>(b) - 1);
    const double hi = std::ldexp(1.0, static_cast<int>(b));
    out += csv::record({csv::number(lo), csv::number(hi), std::to_string(counts[b])});
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> log2_histogram(const std::vector<double>& values, std::size_t min_bins) {
  std::size_t bins = std::max<std::size_t>(min_bins, 1);
  for (double v : values) bins = std::max(bins, bin_of(v) + 1);
  std::vector<std::uint64_t> counts(bins, 0);
  for (double v : values) ++counts[bin_of(v)];
  return counts;
}

std::map<std::string, std::string> build_report(const ReportInputs& in, const AlgoBank& bank) {
  std::map<std::string, std::string> files;
  nlohmann::json summary = nlohmann::json::object();

  if (in.graph) {
    const auto& g = *in.graph;
    const auto complexity = graph_complexity_vector(g, bank, InternalMode::FanIn);
    std::vector<double> weights;
    std::map<IntensityClass, std::uint64_t> classes{{IntensityClass::Intense, 0},
                                                    {IntensityClass::MediumDeepSmall, 0},
                                                    {IntensityClass::MediumShallowLarge, 0},
                                                    {IntensityClass::Low, 0}};
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
      weights.push_back(edge_weight(g, k));
      ++classes[classify_intensity(g, k, in.depth_thresh, in.bytes_thresh)];
    }
    // Shared binning so the two histograms line up column for column.
    const auto bins = std::max(log2_histogram(complexity, 1).size(), log2_histogram(weights, 1).size());
    files["complexity_histogram.csv"] = histogram_csv(log2_histogram(complexity, bins));
    files["communication_histogram.csv"] = histogram_csv(log2_histogram(weights, bins));

    std::string intensity = csv::record({"class", "case", "count"});
    const char* cases[] = {"I", "II", "III", "IV"};
    int c = 0;
    for (const auto& [cls, n] : classes)
      intensity += csv::record({std::string(to_string(cls)), cases[c++], std::to_string(n)});
    files["intensity.csv"] = intensity;

    double total = 0.0;
    for (double x : complexity) total += x;
    double weight_total = 0.0;
    for (double w : weights) weight_total += w;
    double entropy = 0.0;
    for (const auto& cv : g.control()) entropy += entropy_bits(cv.probs);
    std::size_t branch_points = 0;
    for (std::size_t v = 0; v < g.vertices().size(); ++v) branch_points += g.out_edges(v).size() > 1;

    nlohmann::json intensity_counts = nlohmann::json::object();
    for (const auto& [cls, n] : classes) intensity_counts[std::string(to_string(cls))] = n;
    summary["graph"] = {{"vertices", g.vertices().size()},
                        {"edges", g.edges().size()},
                        {"levels", g.num_levels()},
                        {"total_complexity", total},
                        {"total_edge_weight", weight_total},
                        {"branch_points", branch_points},
                        {"control_vectors", g.control().size()},
                        {"control_entropy_bits", entropy},
                        {"intensity", intensity_counts},
                        {"depth_thresh", in.depth_thresh},
                        {"bytes_thresh", in.bytes_thresh}};
  }

  if (in.plan) {
    std::string wcss = csv::record({"k", "wcss"});
    for (const auto& [k, w] : in.plan->plan.wcss_curve) wcss += csv::record({std::to_string(k), csv::number(w)});
    files["wcss.csv"] = wcss;
    std::uint64_t switches = 0;
    for (const auto& p : in.plan->mesh.partitions) switches += p.switches;
    summary["plan"] = {{"k", in.plan->plan.k},
                       {"partitions", in.plan->partitions.size()},
                       {"switches", switches}};
  }

  if (in.reuse) {
    std::string reuse = csv::record({"distance", "count"});
    for (const auto& [d, n] : in.reuse->finite) reuse += csv::record({std::to_string(d), std::to_string(n)});
    reuse += csv::record({"inf", std::to_string(in.reuse->cold)});
    files["reuse.csv"] = reuse;
    summary["reuse"] = {{"references", in.reuse->total()},
                        {"cold", in.reuse->cold},
                        {"mean_finite_distance", in.reuse->mean_finite()}};
  }

  if (files.empty()) throw Error(ErrorKind::InvalidArgument, "report needs a graph, plan or trace");
  files["summary.json"] = io::dump(summary);
  return files;
}

}  // namespace forge
