#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "forge/algobank.hpp"
#include "forge/cloner.hpp"
#include "forge/codesign.hpp"
#include "forge/error.hpp"
#include "forge/generator.hpp"
#include "forge/io.hpp"
#include "forge/locality.hpp"
#include "forge/profile.hpp"
#include "forge/report.hpp"

namespace forge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct FileHash {
  std::string path;
  std::string sha256;
};

// Bookkeeping for one invocation: every file read or written goes through
// here so the manifest can list it with its content hash.
class Session {
 public:
  Session(std::vector<std::string> argv, std::ostream& out) : argv_(std::move(argv)), out_(out) {}

  std::string read(const std::string& path) {
    auto text = io::read_text(path);
    inputs_.push_back({path, io::sha256_hex(text)});
    return text;
  }

  json read_json(const std::string& path) {
    const auto text = read(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaMismatch, path + ": " + e.what());
    }
  }

  // Empty path means stdout.
  void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
      out_ << content;
      return;
    }
    io::write_text(path, content);
    outputs_.push_back({path, io::sha256_hex(content)});
  }

  void load_bank(const std::string& path) {
    bank_path_ = path;
    bank_ = AlgoBank::from_json(read_json(path));
  }

  const AlgoBank& bank() const { return bank_; }
  void set_command(std::string c) { command_ = std::move(c); }
  void set_seed(std::uint64_t s) { seed_ = s; }
  void set_manifest_path(std::string p) { manifest_path_ = std::move(p); }

  void write_manifest() {
    if (outputs_.empty()) return;
    const auto path = manifest_path_.empty() ? outputs_.front().path + ".manifest.json" : manifest_path_;
    auto files = [](const std::vector<FileHash>& list) {
      json arr = json::array();
      for (const auto& f : list) arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
      return arr;
    };
    json doc = {{"tool", "forge"},
                {"version", FORGE_VERSION},
                {"command", command_},
                {"argv", argv_},
                {"seed", seed_ ? json(*seed_) : json(nullptr)},
                {"algobank", bank_path_.empty() ? json("builtin") : json(bank_path_)},
                {"inputs", files(inputs_)},
                {"outputs", files(outputs_)}};
    io::write_text(path, io::dump(doc));
  }

 private:
  std::vector<std::string> argv_;
  std::ostream& out_;
  AlgoBank bank_ = AlgoBank::builtin();
  std::string bank_path_;
  std::string command_;
  std::optional<std::uint64_t> seed_;
  std::string manifest_path_;
  std::vector<FileHash> inputs_;
  std::vector<FileHash> outputs_;
};

std::string dir_file(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  static const std::regex re(R"((\d+)\.\.(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw CLI::ValidationError("--seeds", "expected A..B, got '" + text + "'");
  const auto a = std::stoull(m[1].str());
  const auto b = std::stoull(m[2].str());
  if (a > b) throw CLI::ValidationError("--seeds", "empty range '" + text + "'");
  return {a, b};
}

// Generates every seed in [first, last] on up to `jobs` threads; results
// are indexed by seed offset so output does not depend on scheduling.
std::vector<Generated> generate_batch(const WorkloadSpec& spec, const AlgoBank& bank, std::uint64_t first,
                                      std::uint64_t last, unsigned jobs) {
  const std::size_t n = static_cast<std::size_t>(last - first + 1);
  std::vector<std::optional<Generated>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        WorkloadSpec s = spec;
        s.seed = first + i;
        slots[i] = generate(s, bank);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::vector<Generated> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

CodesignOptions codesign_options(int kmax, std::uint64_t seed, std::optional<int> k, double density,
                                 std::uint64_t switch_bytes) {
  CodesignOptions o;
  o.cluster.k_max = kmax;
  o.cluster.seed = seed;
  o.cluster.forced_k = k;
  o.density_thresh = density;
  o.switch_bytes = switch_bytes;
  return o;
}

void emit_report(Session& s, const std::string& out_dir, const ReportInputs& in) {
  const auto files = build_report(in, s.bank());
  if (out_dir.empty()) {
    s.emit("", files.at("summary.json"));
    return;
  }
  for (const auto& [name, content] : files) s.emit(dir_file(out_dir, name), content);
}

int replay(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  const auto manifest = io::read_json(manifest_path);
  std::vector<std::string> argv;
  Environment env;
  std::vector<FileHash> inputs, outputs;
  try {
    argv = manifest.at("argv").get<std::vector<std::string>>();
    if (const auto& b = manifest.at("algobank"); b != "builtin") env.algobank = b.get<std::string>();
    for (const auto& f : manifest.at("inputs")) inputs.push_back({f.at("path"), f.at("sha256")});
    for (const auto& f : manifest.at("outputs")) outputs.push_back({f.at("path"), f.at("sha256")});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, manifest_path + ": " + e.what());
  }
  if (argv.empty() || argv.front() == "replay") throw Error(ErrorKind::SchemaMismatch, "manifest has no command");

  for (const auto& f : inputs) {
    if (io::sha256_hex(io::read_text(f.path)) != f.sha256)
      throw Error(ErrorKind::ReplayMismatch, "input changed since the recorded run: " + f.path);
  }
  std::ostringstream sink;
  if (const int rc = run(argv, sink, err, env); rc != 0) return rc;

  json rows = json::array();
  bool all = true;
  for (const auto& f : outputs) {
    const auto actual = io::sha256_hex(io::read_text(f.path));
    all = all && actual == f.sha256;
    rows.push_back({{"path", f.path}, {"expected", f.sha256}, {"actual", actual}, {"match", actual == f.sha256}});
  }
  out << io::dump({{"command", argv.front()}, {"outputs", rows}, {"identical", all}});
  if (!all) throw Error(ErrorKind::ReplayMismatch, "replayed outputs differ from the manifest");
  return 0;
}

void report_error(std::ostream& err, const Error& e) {
  json doc = {{"error", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
    doc["line"] = se->line();
    doc["column"] = se->column();
  }
  err << doc.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Synthesize, quantify and clone graph workloads; size heterogeneous core meshes.", "forge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("forge ") + FORGE_VERSION);
  std::string bank_path;
  app.add_option("--bank", bank_path, "ALGOBANK JSON overlaid on the built-ins (default: $FORGE_ALGOBANK)");

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a workload graph from a spec");
  std::string gen_spec, gen_out, gen_verify, gen_seeds;
  std::optional<std::uint64_t> gen_seed;
  double gen_tol = 0.15;
  unsigned gen_jobs = std::max(1u, std::thread::hardware_concurrency());
  gen->add_option("--spec", gen_spec, "WorkloadSpec JSON")->required();
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "Top-level seed (overrides the spec's)");
  gen->add_option("--seeds", gen_seeds, "Batch range A..B; --out names a directory")->excludes(gen_seed_opt);
  gen->add_option("--out", gen_out, "Output graph (directory with --seeds)");
  gen->add_option("--verify", gen_verify, "Write a conformance report here");
  gen->add_option("--tol", gen_tol, "Relative tolerance on means")->check(CLI::PositiveNumber);
  gen->add_option("--jobs", gen_jobs, "Worker threads for --seeds")->check(CLI::PositiveNumber);

  // profile
  auto* prof = app.add_subcommand("profile", "Level table and communication matrix of a graph");
  std::string prof_in, prof_out, prof_table, prof_matrix;
  prof->add_option("graph", prof_in, "Graph JSON")->required();
  prof->add_option("--out", prof_out, "Profile JSON");
  prof->add_option("--table-csv", prof_table, "Computation table as CSV");
  prof->add_option("--matrix-csv", prof_matrix, "Communication matrix as CSV");

  // scan
  auto* scan = app.add_subcommand("scan", "Parse a WPPL-lite program into a graph");
  std::string scan_in, scan_out;
  scan->add_option("program", scan_in, "WPPL-lite source")->required();
  scan->add_option("--out", scan_out, "Graph JSON");

  // extract
  auto* extract = app.add_subcommand("extract", "Extract the cloning profile of a graph");
  std::string ext_in, ext_out;
  extract->add_option("graph", ext_in, "Graph JSON")->required();
  extract->add_option("--out", ext_out, "Profile JSON");

  // clone
  auto* clone = app.add_subcommand("clone", "Synthesize a graph matching a profile");
  std::string clone_in, clone_out;
  std::vector<std::string> clone_sources;
  std::uint64_t clone_seed = 0;
  double clone_tol = 0.05;
  int clone_attempts = 16;
  clone->add_option("profile", clone_in, "Profile JSON")->required();
  clone->add_option("--seed", clone_seed, "Seed");
  clone->add_option("--tol", clone_tol, "Relative tolerance per row and cell")->check(CLI::PositiveNumber);
  clone->add_option("--source", clone_sources, "Graphs the clone must not structurally match");
  clone->add_option("--attempts", clone_attempts, "Re-seed attempts on a structural collision")
      ->check(CLI::PositiveNumber);
  clone->add_option("--out", clone_out, "Graph JSON");

  // codesign
  auto* cod = app.add_subcommand("codesign", "Core types, inter-core matrix, partitions and mesh sizes");
  std::string cod_in, cod_out, cod_csv;
  int cod_kmax = 10;
  std::uint64_t cod_switch = 64, cod_seed = 0;
  double cod_density = 1.5;
  std::optional<int> cod_k;
  cod->add_option("graph", cod_in, "Graph JSON")->required();
  cod->add_option("--kmax", cod_kmax, "Largest k tried")->check(CLI::PositiveNumber);
  cod->add_option("--k", cod_k, "Fixed number of core types (skips the elbow)")->check(CLI::PositiveNumber);
  cod->add_option("--switch-bytes", cod_switch, "Bytes one switch carries")->check(CLI::PositiveNumber);
  cod->add_option("--density", cod_density, "Partition density threshold")->check(CLI::PositiveNumber);
  cod->add_option("--seed", cod_seed, "Clustering seed");
  cod->add_option("--out", cod_out, "Plan JSON");
  cod->add_option("--csv", cod_csv, "Inter-core matrix as CSV");

  // trace
  auto* trace = app.add_subcommand("trace", "Address trace and reuse distances of a loop model");
  std::string trace_algo, trace_model, trace_out;
  std::int64_t trace_size = 1024;
  std::uint64_t trace_seed = 0;
  std::optional<std::uint64_t> trace_block;
  bool trace_summary = false;
  auto* algo_opt = trace->add_option("--algo", trace_algo, "Loop entry of the bank");
  trace->add_option("--size", trace_size, "Iteration bound for --algo")->check(CLI::PositiveNumber);
  trace->add_option("--model", trace_model, "LoopModel JSON")->excludes(algo_opt);
  trace->add_option("--seed", trace_seed, "Seed");
  trace->add_option("--block", trace_block, "Block size in words for reuse distances")->check(CLI::PositiveNumber);
  trace->add_flag("--summary-only", trace_summary, "Omit the address list");
  trace->add_option("--out", trace_out, "Trace JSON");

  // report
  auto* rep = app.add_subcommand("report", "Plot-ready CSV/JSON summaries");
  std::string rep_graph, rep_plan, rep_trace, rep_dir;
  std::int64_t rep_depth = kDefaultDepthThreshold;
  std::uint64_t rep_bytes = kDefaultBytesThreshold;
  rep->add_option("--graph", rep_graph, "Graph JSON");
  rep->add_option("--plan", rep_plan, "Codesign plan JSON");
  rep->add_option("--trace", rep_trace, "Trace JSON");
  rep->add_option("--depth-thresh", rep_depth, "Depth threshold of the intensity classes");
  rep->add_option("--bytes-thresh", rep_bytes, "Bytes threshold of the intensity classes");
  rep->add_option("--out-dir", rep_dir, "Directory for the bundle (default: summary to stdout)");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "generate, profile, clone, codesign and report in one run");
  std::string pipe_spec, pipe_dir;
  std::uint64_t pipe_seed = 0, pipe_switch = 64;
  double pipe_tol = 0.05, pipe_density = 1.5;
  int pipe_kmax = 10;
  pipe->add_option("--spec", pipe_spec, "WorkloadSpec JSON")->required();
  pipe->add_option("--seed", pipe_seed, "Top-level seed")->required();
  pipe->add_option("--out-dir", pipe_dir, "Output directory")->required();
  pipe->add_option("--tol", pipe_tol, "Clone tolerance")->check(CLI::PositiveNumber);
  pipe->add_option("--kmax", pipe_kmax, "Largest k tried")->check(CLI::PositiveNumber);
  pipe->add_option("--switch-bytes", pipe_switch, "Bytes one switch carries")->check(CLI::PositiveNumber);
  pipe->add_option("--density", pipe_density, "Partition density threshold")->check(CLI::PositiveNumber);

  // replay
  auto* rep_cmd = app.add_subcommand("replay", "Re-run a manifest and compare output hashes");
  std::string replay_in;
  rep_cmd->add_option("manifest", replay_in, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (trace->parsed() && trace_algo.empty() && trace_model.empty())
      throw CLI::RequiredError("trace needs --algo or --model");
    if (rep->parsed() && rep_graph.empty() && rep_plan.empty() && rep_trace.empty())
      throw CLI::RequiredError("report needs --graph, --plan or --trace");
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int rc = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return rc == 0 ? 0 : 2;
  }

  try {
    if (rep_cmd->parsed()) return replay(replay_in, out, err);

    Session s(args, out);
    if (!bank_path.empty())
      s.load_bank(bank_path);
    else if (env.algobank && !env.algobank->empty())
      s.load_bank(*env.algobank);
    const auto& bank = s.bank();

    if (gen->parsed()) {
      s.set_command("generate");
      auto spec = workload_spec_from_json(s.read_json(gen_spec));
      if (!gen_seeds.empty()) {
        const auto [a, b] = parse_seed_range(gen_seeds);
        if (gen_out.empty()) throw Error(ErrorKind::InvalidArgument, "--seeds needs --out DIR");
        spec.seed = a;
        s.set_seed(a);
        const auto runs = generate_batch(spec, bank, a, b, gen_jobs);
        for (std::size_t i = 0; i < runs.size(); ++i)
          s.emit(dir_file(gen_out, "graph_" + std::to_string(a + i) + ".json"), io::dump(to_json(runs[i].graph)));
        if (!gen_verify.empty()) s.emit(gen_verify, io::dump(to_json(verify_against_spec(runs, spec, gen_tol))));
        s.set_manifest_path(dir_file(gen_out, "manifest.json"));
      } else {
        if (gen_seed) spec.seed = *gen_seed;
        s.set_seed(spec.seed);
        const auto result = generate(spec, bank);
        s.emit(gen_out, io::dump(to_json(result.graph)));
        if (!gen_verify.empty())
          s.emit(gen_verify, io::dump(to_json(verify_against_spec(result.graph, spec, gen_tol, &result.log))));
      }
    } else if (prof->parsed()) {
      s.set_command("profile");
      const auto p = profile(graph_from_json(s.read_json(prof_in)), bank);
      if (!prof_out.empty() || (prof_table.empty() && prof_matrix.empty())) s.emit(prof_out, io::dump(to_json(p)));
      if (!prof_table.empty()) s.emit(prof_table, table_csv(p));
      if (!prof_matrix.empty()) s.emit(prof_matrix, matrix_csv(p));
    } else if (scan->parsed()) {
      s.set_command("scan");
      s.emit(scan_out, io::dump(to_json(scan_program(s.read(scan_in), bank))));
    } else if (extract->parsed()) {
      s.set_command("extract");
      s.emit(ext_out, io::dump(to_json(extract_profile(graph_from_json(s.read_json(ext_in)), bank))));
    } else if (clone->parsed()) {
      s.set_command("clone");
      s.set_seed(clone_seed);
      const auto target = profile_from_json(s.read_json(clone_in));
      std::vector<HyperGraph> sources;
      for (const auto& path : clone_sources) sources.push_back(graph_from_json(s.read_json(path)));
      CloneOptions o;
      o.seed = clone_seed;
      o.tolerance = clone_tol;
      o.sources = sources;
      o.max_attempts = clone_attempts;
      s.emit(clone_out, io::dump(to_json(synthesize_clone(target, bank, o))));
    } else if (cod->parsed()) {
      s.set_command("codesign");
      s.set_seed(cod_seed);
      const auto g = graph_from_json(s.read_json(cod_in));
      const auto r = run_codesign(g, codesign_options(cod_kmax, cod_seed, cod_k, cod_density, cod_switch));
      s.emit(cod_out, io::dump(to_json(r)));
      if (!cod_csv.empty()) s.emit(cod_csv, inter_core_csv(r.cores));
    } else if (trace->parsed()) {
      s.set_command("trace");
      s.set_seed(trace_seed);
      const auto model = trace_model.empty() ? loop_model_from_entry(bank.lookup(trace_algo), trace_size)
                                             : loop_model_from_json(s.read_json(trace_model));
      model.validate();
      const auto block = trace_block.value_or(static_cast<std::uint64_t>(model.block_words));
      const auto addrs = generate_trace(model, trace_seed);
      json doc = {{"model", to_json(model)},
                  {"seed", trace_seed},
                  {"block_words", block},
                  {"references", addrs.size()},
                  {"reuse", to_json(reuse_distance_histogram(addrs, block))}};
      if (!trace_summary) doc["addresses"] = addrs;
      s.emit(trace_out, io::dump(doc));
    } else if (rep->parsed()) {
      s.set_command("report");
      std::optional<HyperGraph> g;
      std::optional<CodesignResult> plan;
      std::optional<ReuseHistogram> reuse;
      if (!rep_graph.empty()) g = graph_from_json(s.read_json(rep_graph));
      if (!rep_plan.empty()) plan = codesign_from_json(s.read_json(rep_plan));
      if (!rep_trace.empty()) {
        const auto doc = s.read_json(rep_trace);
        if (!doc.contains("reuse")) throw Error(ErrorKind::SchemaMismatch, rep_trace + ": missing 'reuse'");
        reuse = reuse_histogram_from_json(doc["reuse"]);
      }
      ReportInputs in;
      in.graph = g ? &*g : nullptr;
      in.plan = plan ? &*plan : nullptr;
      in.reuse = reuse ? &*reuse : nullptr;
      in.depth_thresh = rep_depth;
      in.bytes_thresh = rep_bytes;
      emit_report(s, rep_dir, in);
      if (!rep_dir.empty()) s.set_manifest_path(dir_file(rep_dir, "manifest.json"));
    } else if (pipe->parsed()) {
      s.set_command("pipeline");
      s.set_seed(pipe_seed);
      auto spec = workload_spec_from_json(s.read_json(pipe_spec));
      spec.seed = pipe_seed;
      const auto result = generate(spec, bank);
      const auto& g = result.graph;
      s.emit(dir_file(pipe_dir, "graph.json"), io::dump(to_json(g)));
      s.emit(dir_file(pipe_dir, "conformance.json"),
             io::dump(to_json(verify_against_spec(g, spec, 0.15, &result.log))));
      const auto target = extract_profile(g, bank);
      s.emit(dir_file(pipe_dir, "profile.json"), io::dump(to_json(target)));

      CloneOptions o;
      o.seed = derive_seed(pipe_seed, "pipeline/clone");
      o.tolerance = pipe_tol;
      o.sources = std::span<const HyperGraph>(&g, 1);
      const auto cloned = synthesize_clone(target, bank, o);
      s.emit(dir_file(pipe_dir, "clone.json"), io::dump(to_json(cloned)));
      s.emit(dir_file(pipe_dir, "clone_profile.json"), io::dump(to_json(extract_profile(cloned, bank))));

      const auto plan = run_codesign(
          g, codesign_options(pipe_kmax, derive_seed(pipe_seed, "pipeline/codesign"), std::nullopt, pipe_density,
                              pipe_switch));
      s.emit(dir_file(pipe_dir, "plan.json"), io::dump(to_json(plan)));
      s.emit(dir_file(pipe_dir, "inter_core.csv"), inter_core_csv(plan.cores));

      ReportInputs in;
      in.graph = &g;
      in.plan = &plan;
      emit_report(s, dir_file(pipe_dir, "report"), in);
      s.set_manifest_path(dir_file(pipe_dir, "manifest.json"));
    }
    s.write_manifest();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    report_error(err, e);
  } catch (const json::exception& e) {
    report_error(err, Error(ErrorKind::SchemaMismatch, e.what()));
  } catch (const fs::filesystem_error& e) {
    report_error(err, Error(ErrorKind::IoError, e.what()));
  }
  return 1;
}

}  // namespace forge::cli
