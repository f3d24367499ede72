#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "forge/algobank.hpp"
#include "forge/codesign.hpp"
#include "forge/hypergraph.hpp"
#include "forge/locality.hpp"

namespace forge {

struct ReportInputs {
  const HyperGraph* graph = nullptr;
  const CodesignResult* plan = nullptr;
  const ReuseHistogram* reuse = nullptr;
  std::int64_t depth_thresh = kDefaultDepthThreshold;
  std::uint64_t bytes_thresh = kDefaultBytesThreshold;
};

// Plot-ready files keyed by file name: complexity_histogram.csv,
// communication_histogram.csv, intensity.csv and summary.json for a graph,
// wcss.csv for a plan, reuse.csv for a trace histogram.
std::map<std::string, std::string> build_report(const ReportInputs& in, const AlgoBank& bank);

// Histogram bins: [0, 1) then [2^k, 2^(k+1)). Returns counts per bin.
std::vector<std::uint64_t> log2_histogram(const std::vector<double>& values, std::size_t min_bins);

}  // namespace forge
