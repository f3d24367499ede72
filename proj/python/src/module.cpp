#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "forge/algobank.hpp"
#include "forge/cloner.hpp"
#include "forge/codesign.hpp"
#include "forge/control_flow.hpp"
#include "forge/error.hpp"
#include "forge/generator.hpp"
#include "forge/hypergraph.hpp"
#include "forge/locality.hpp"
#include "forge/profile.hpp"

namespace py = pybind11;
using nlohmann::json;

// Documents cross the boundary as JSON text; the Python package decodes them.
namespace {

forge::AlgoBank bank_of(const std::optional<std::string>& bank) {
  return bank ? forge::AlgoBank::from_json(json::parse(*bank)) : forge::AlgoBank::builtin();
}

forge::HyperGraph graph_of(const std::string& text) { return forge::graph_from_json(json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_forge, m) {
  m.doc() = "Compiled core of the forge workload toolkit.";

  static py::exception<forge::Error> forge_error(m, "ForgeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const forge::Error& e) {
      py::tuple args = py::make_tuple(std::string(forge::to_string(e.kind())), e.what());
      PyErr_SetObject(forge_error.ptr(), args.ptr());
    } catch (const json::exception& e) {
      py::tuple args = py::make_tuple("SchemaMismatch", e.what());
      PyErr_SetObject(forge_error.ptr(), args.ptr());
    }
  });

  m.def("builtin_bank", [] { return forge::AlgoBank::builtin().to_json().dump(); });

  m.def(
      "eval_cost",
      [](const std::string& algo, std::int64_t n, std::optional<std::string> bank) {
        return forge::eval_cost(bank_of(bank).lookup(algo), n);
      },
      py::arg("algo"), py::arg("n"), py::arg("bank") = py::none());

  m.def(
      "generate",
      [](const std::string& spec, std::optional<std::uint64_t> seed, std::optional<std::string> bank) {
        auto s = forge::workload_spec_from_json(json::parse(spec));
        if (seed) s.seed = *seed;
        return forge::to_json(forge::generate(s, bank_of(bank)).graph).dump();
      },
      py::arg("spec"), py::arg("seed") = py::none(), py::arg("bank") = py::none());

  m.def(
      "profile",
      [](const std::string& graph, std::optional<std::string> bank) {
        return forge::to_json(forge::profile(graph_of(graph), bank_of(bank))).dump();
      },
      py::arg("graph"), py::arg("bank") = py::none());

  m.def(
      "extract_profile",
      [](const std::string& graph, std::optional<std::string> bank) {
        return forge::to_json(forge::extract_profile(graph_of(graph), bank_of(bank))).dump();
      },
      py::arg("graph"), py::arg("bank") = py::none());

  m.def(
      "scan_program",
      [](const std::string& text, std::optional<std::string> bank) {
        return forge::to_json(forge::scan_program(text, bank_of(bank))).dump();
      },
      py::arg("text"), py::arg("bank") = py::none());

  m.def(
      "synthesize_clone",
      [](const std::string& profile, std::uint64_t seed, double tol, std::vector<std::string> sources,
         std::optional<std::string> bank) {
        std::vector<forge::HyperGraph> src;
        for (const auto& s : sources) src.push_back(graph_of(s));
        forge::CloneOptions o;
        o.seed = seed;
        o.tolerance = tol;
        o.sources = src;
        return forge::to_json(forge::synthesize_clone(forge::profile_from_json(json::parse(profile)), bank_of(bank), o))
            .dump();
      },
      py::arg("profile"), py::arg("seed") = 0, py::arg("tol") = 0.05, py::arg("sources") = std::vector<std::string>{},
      py::arg("bank") = py::none());

  m.def("structure_hash", [](const std::string& graph) { return forge::structure_hash(graph_of(graph)); });

  m.def("cef_in", [](const std::string& graph, const std::string& v) { return forge::cef_in(graph_of(graph), v); });
  m.def("cef_out", [](const std::string& graph, const std::string& v) { return forge::cef_out(graph_of(graph), v); });
  m.def("depth_index", [](const std::string& graph, const std::string& src, const std::string& dst) {
    return forge::depth_index(graph_of(graph), src, dst);
  });
  m.def("control_complexity", [](const std::string& graph) { return forge::control_complexity(graph_of(graph)); });

  m.def("resolve_path", [](const std::vector<double>& probs) { return forge::resolve_path(probs); });
  m.def(
      "sample_control_vector",
      [](std::size_t n, const std::string& dist, std::uint64_t seed, const std::string& stream) {
        forge::Rng rng(seed, stream);
        return forge::sample_control_vector(n, json::parse(dist).get<forge::DistributionSpec>(), rng);
      },
      py::arg("n"), py::arg("dist"), py::arg("seed"), py::arg("stream") = "control");

  m.def(
      "run_codesign",
      [](const std::string& graph, int k_max, std::uint64_t seed, double density, std::uint64_t switch_bytes,
         std::optional<int> k) {
        forge::CodesignOptions o;
        o.cluster.k_max = k_max;
        o.cluster.seed = seed;
        o.cluster.forced_k = k;
        o.density_thresh = density;
        o.switch_bytes = switch_bytes;
        return forge::to_json(forge::run_codesign(graph_of(graph), o)).dump();
      },
      py::arg("graph"), py::arg("k_max") = 10, py::arg("seed") = 0, py::arg("density") = 1.5,
      py::arg("switch_bytes") = 64, py::arg("k") = py::none());

  m.def("partition_matrix", [](const std::vector<std::vector<std::uint64_t>>& rows, double thresh) {
    return forge::partition_matrix(forge::SquareMatrix<std::uint64_t>::from_rows(rows), thresh);
  });

  m.def("size_mesh", [](const std::vector<std::vector<int>>& parts, const std::vector<std::vector<std::uint64_t>>& rows,
                        std::uint64_t switch_bytes) {
    const auto plan = forge::size_mesh(parts, forge::SquareMatrix<std::uint64_t>::from_rows(rows), switch_bytes);
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>> out;
    for (const auto& p : plan.partitions) out.emplace_back(p.bytes, p.switches, p.rows, p.cols);
    return out;
  });

  m.def(
      "generate_trace",
      [](const std::string& model, std::uint64_t seed) {
        return forge::generate_trace(forge::loop_model_from_json(json::parse(model)), seed);
      },
      py::arg("model"), py::arg("seed") = 0);

  m.def("reuse_distance_histogram", [](const std::vector<std::uint64_t>& trace, std::uint64_t block_words) {
    return forge::to_json(forge::reuse_distance_histogram(trace, block_words)).dump();
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, std::optional<std::string> algobank) {
        std::ostringstream out, err;
        forge::cli::Environment env;
        env.algobank = algobank;
        const int rc = forge::cli::run(args, out, err, env);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"), py::arg("algobank") = py::none());
}
