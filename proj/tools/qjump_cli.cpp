// Copyright 2026 The Qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qjump command-line front end. Every file written here is a function of the
// flags and --seed only; wall-clock columns appear only with --wall-time.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qjump/analysis.hpp"
#include "qjump/cost_model.hpp"
#include "qjump/csv.hpp"
#include "qjump/errors.hpp"
#include "qjump/instance_io.hpp"
#include "qjump/ising.hpp"
#include "qjump/local_search.hpp"
#include "qjump/orchestrator.hpp"
#include "qjump/params.hpp"
#include "qjump/pipeline.hpp"
#include "qjump/rng.hpp"
#include "qjump/sampler.hpp"
#include "qjump/sim_anneal.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace qjump;

namespace {

using Clock = std::chrono::steady_clock;

struct Global {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string params_file;
  bool wall_time = false;
  Clock::time_point start = Clock::now();

  InfParams params() const {
    return params_file.empty() ? InfParams::load_default() : InfParams::load(params_file);
  }
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

// Output goes to a file when a path is given, stdout otherwise. Files are
// written in one piece so a failed command never leaves half a CSV behind.
class Sink {
 public:
  explicit Sink(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty() || path_ == "-") {
      std::cout << buffer_.str() << std::flush;
      return;
    }
    if (fs::path(path_).has_parent_path()) fs::create_directories(fs::path(path_).parent_path());
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw InputError("cannot write " + path_);
    out << buffer_.str();
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

std::vector<int> parse_mask(const std::string& text) {
  // "16-23,30" style lists.
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dash));
        const int hi = std::stoi(part.substr(dash + 1));
        if (hi < lo) throw InputError("mask range " + part + " is reversed");
        for (int i = lo; i <= hi; ++i) out.push_back(i);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const InputError*>(&e)) throw;
      throw InputError("cannot parse mask entry '" + part + "'");
    }
  }
  return out;
}

std::string instance_id(std::size_t i) {
  char id[32];
  std::snprintf(id, sizeof id, "inst-%04zu", i);
  return id;
}

IsingInstance with_id(const IsingInstance& inst, const std::string& id) {
  InstanceMetadata meta = inst.metadata();
  meta.id = id;
  return IsingInstance(inst.size(), {inst.edges().begin(), inst.edges().end()},
                       {inst.fields().begin(), inst.fields().end()}, meta);
}

// Random state at exactly `hd` flips from `from`.
Bitstring at_distance(const Bitstring& from, int hd, std::uint64_t seed) {
  const int n = static_cast<int>(from.size());
  if (hd < 0 || hd > n) throw InputError("warm-start distance outside [0, n]");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Bitstring out = from;
  for (int i = 0; i < hd; ++i) out.flip(order[i]);
  return out;
}

Bitstring random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  Bitstring s(n);
  for (int j = 0; j < n; ++j) s.set(j, rng() & 1);
  return s;
}

Bitstring parse_state(const std::string& text, int n, const char* what) {
  Bitstring s = Bitstring::parse(text);
  if (static_cast<int>(s.size()) != n) {
    throw InputError(std::string(what) + " has " + std::to_string(s.size()) + " bits, instance has " +
                     std::to_string(n));
  }
  return s;
}

struct InstanceOpts {
  std::string path;
  void add(CLI::App* app) {
    app->add_option("-i,--instance", path, "instance JSON file")->required()->check(CLI::ExistingFile);
  }
  IsingInstance load() const { return load_instance(path); }
};

struct SamplerOpts {
  int L = 2;
  int Q = 20;
  double alpha = 0.5;
  int M = 20;
  int iterations = 12;
  std::string mixer = "warm-start";
  void add(CLI::App* app, bool loop) {
    app->add_option("--L", L, "sampler layers kept")->check(CLI::PositiveNumber);
    app->add_option("--Q", Q, "depth of the source ansatz")->check(CLI::PositiveNumber);
    app->add_option("--alpha", alpha, "mixing coefficient")->check(CLI::Range(0.0, 1.0));
    app->add_option("--mixer", mixer)->check(CLI::IsMember({"warm-start", "transverse"}));
    if (loop) {
      app->add_option("--M", M, "samples per iteration")->check(CLI::PositiveNumber);
      app->add_option("--iterations", iterations)->check(CLI::PositiveNumber);
    }
  }
  SamplerConfig config() const {
    SamplerConfig c;
    c.L = L;
    c.Q = Q;
    c.alpha = alpha;
    c.M = M;
    c.mixer = mixer == "transverse" ? MixerKind::transverse : MixerKind::warm_start;
    return c;
  }
};

// Warm start chosen explicitly, at a fixed distance from the ground state, or
// at random.
struct WarmStartOpts {
  std::string bits;
  int hd = -1;
  void add(CLI::App* app) {
    auto* b = app->add_option("--s-circ", bits, "warm-start bitstring, bit 0 first");
    app->add_option("--s-circ-hd", hd, "random warm start at this distance from the ground state")
        ->excludes(b);
  }
  Bitstring resolve(const IsingInstance& inst, const GroundState& ground, std::uint64_t seed) const {
    if (!bits.empty()) return parse_state(bits, inst.size(), "--s-circ");
    if (hd >= 0) return at_distance(ground.minimizers.front(), hd, derive_seed(seed, 7));
    return random_state(inst.size(), derive_seed(seed, 7));
  }
};

std::vector<std::string> with_wall(std::vector<std::string> cols, bool wall) {
  if (wall) cols.push_back("wall_ms");
  return cols;
}

void write_runs(CsvWriter& w, const BenchmarkRun& b) {
  for (const auto& r : b.runs) {
    w.row({b.instance_id, b.algorithm, static_cast<long long>(r.run), r.e_best,
           static_cast<long long>(r.hit), r.model_ns, r.acceptance, r.n_ls, r.eta,
           r.best.to_string()});
  }
}

json trace_json(const QjumpTrace& trace, const IsingInstance& inst, const SamplerConfig& cfg,
                int iterations, std::uint64_t seed) {
  json j;
  j["format"] = "qjump-trace";
  j["version"] = 1;
  j["instance"] = inst.metadata().id;
  j["config"] = {{"L", cfg.L},
                 {"Q", cfg.Q},
                 {"alpha", cfg.alpha},
                 {"M", cfg.M},
                 {"iterations", iterations},
                 {"backend", cfg.backend == Backend::statevector ? "statevector" : "classical"},
                 {"eta", cfg.eta},
                 {"mixer", cfg.mixer == MixerKind::warm_start ? "warm-start" : "transverse"},
                 {"seed", seed}};
  j["iterations"] = json::array();
  for (const auto& it : trace.iterations) {
    j["iterations"].push_back({{"s_circ", it.s_circ.to_string()},
                               {"alpha", it.alpha},
                               {"best", it.best.to_string()},
                               {"e_best", it.e_best},
                               {"n_ls", it.n_ls},
                               {"flips", it.flips}});
  }
  j["best"] = trace.best.to_string();
  j["e_best"] = trace.e_best;
  j["mean_n_ls"] = trace.mean_n_ls();
  j["mean_flip_ratio"] = trace.mean_flip_ratio();
  return j;
}

// ---- generate -------------------------------------------------------------

struct GenerateCmd {
  int L = 3;
  std::string mask = "16-23";
  int regular_n = 0;
  int degree = 4;
  double sigma_j = 2.0;
  double sigma_h = 1.0;
  int count = 1;
  std::string out_dir = "instances";
  std::string manifest;

  void add(CLI::App& app, const Global& g) {
    auto* c = app.add_subcommand("generate", "write random instances");
    c->add_option("--L", L, "rotated-lattice size")->check(CLI::PositiveNumber);
    c->add_option("--mask", mask, "removed sites, e.g. 16-23 (empty keeps all)");
    c->add_option("--regular-n", regular_n, "random regular graph on this many sites instead");
    c->add_option("--degree", degree, "degree for --regular-n")->check(CLI::PositiveNumber);
    c->add_option("--sigma-j", sigma_j, "coupling standard deviation");
    c->add_option("--sigma-h", sigma_h, "field standard deviation");
    c->add_option("--count", count)->check(CLI::PositiveNumber);
    c->add_option("--out-dir", out_dir);
    c->add_option("--manifest", manifest, "manifest CSV path (default stdout)");
    c->callback([this, &g] { run(g); });
  }

  void run(const Global& g) {
    const LatticeSpec spec{L, parse_mask(mask)};
    std::vector<IsingInstance> made(count);
    parallel_for(count, g.jobs, [&](std::size_t i) {
      const std::uint64_t s = derive_seed(g.seed, i);
      made[i] = with_id(regular_n > 0 ? generate_regular_instance(regular_n, degree, s, sigma_j, sigma_h)
                                      : generate_lattice_instance(spec, s, sigma_j, sigma_h),
                        instance_id(i));
    });
    fs::create_directories(out_dir);
    Sink sink(manifest);
    CsvWriter w(sink.stream(), "generate", {"id", "file", "seed", "n", "edges"});
    for (std::size_t i = 0; i < made.size(); ++i) {
      const std::string file = made[i].metadata().id + ".json";
      save_instance(made[i], fs::path(out_dir) / file);
      w.row({made[i].metadata().id, file, std::to_string(*made[i].metadata().seed),
             static_cast<long long>(made[i].size()), static_cast<long long>(made[i].edges().size())});
    }
    sink.commit();
  }
};

// ---- filter ---------------------------------------------------------------

struct FilterCmd {
  FilterConfig cfg;
  std::string mask = "16-23";
  std::string out_dir = "filtered";

  void add(CLI::App& app, const Global& g) {
    auto* c = app.add_subcommand("filter", "generate instances and keep the hardest");
    c->add_option("--count", cfg.count)->check(CLI::PositiveNumber);
    c->add_option("--L", cfg.spec.L)->check(CLI::PositiveNumber);
    c->add_option("--mask", mask);
    c->add_option("--sa-sweeps", cfg.sa.sweeps)->check(CLI::PositiveNumber);
    c->add_option("--sa-runs", cfg.sa_runs)->check(CLI::PositiveNumber);
    c->add_option("--keep-tts", cfg.keep_tts)->check(CLI::PositiveNumber);
    c->add_option("--keep-cjump", cfg.keep_cjump)->check(CLI::PositiveNumber);
    c->add_option("--cjump-eta", cfg.cjump.eta)->check(CLI::Range(0.0, 1.0));
    c->add_option("--cjump-M", cfg.cjump.M)->check(CLI::PositiveNumber);
    c->add_option("--cjump-iterations", cfg.cjump_iterations)->check(CLI::PositiveNumber);
    c->add_option("--cjump-runs", cfg.cjump_runs)->check(CLI::PositiveNumber);
    c->add_option("--out-dir", out_dir);
    c->callback([this, &g] { run(g); });
  }

  void run(const Global& g) {
    cfg.spec.mask = parse_mask(mask);
    cfg.seed = g.seed;
    cfg.jobs = g.jobs;
    const FilterResult res = filter_instances(cfg);
    fs::create_directories(out_dir);
    Sink sink((fs::path(out_dir) / "ranking.csv").string());
    CsvWriter w(sink.stream(), "filter",
                {"id", "seed", "n", "e_g", "certified", "sa_p_s", "sa_tts_s", "sa_tts_infinite",
                 "stage1", "cjump_p_s", "stage2", "rank"});
    for (const auto& r : res.records) {
      w.row({r.instance.metadata().id, std::to_string(r.seed),
             static_cast<long long>(r.instance.size()), r.ground.energy,
             static_cast<long long>(r.certified), r.sa_p_s, r.sa_tts.seconds,
             static_cast<long long>(r.sa_tts.infinite), static_cast<long long>(r.stage1),
             r.cjump_p_s, static_cast<long long>(r.stage2), static_cast<long long>(r.rank)});
    }
    for (int i : res.selected) {
      const auto& inst = res.records[i].instance;
      save_instance(inst, fs::path(out_dir) / (inst.metadata().id + ".json"));
    }
    sink.commit();
  }
};

// ---- solve / tts ----------------------------------------------------------

struct AlgoOpts {
  InstanceOpts instance;
  SamplerOpts sampler;
  int runs = 1;
  int sweeps = 700;
  std::string schedule = "linear-beta";
  double eta = 0.3;
  std::string initial;

  void add_sa(CLI::App* c) {
    c->add_option("--sweeps", sweeps)->check(CLI::PositiveNumber);
    c->add_option("--schedule", schedule)->check(CLI::IsMember({"geometric", "linear", "linear-beta"}));
  }
  void add_loop(CLI::App* c) {
    sampler.add(c, true);
    c->add_option("--eta", eta, "flip probability for the classical backend")
        ->check(CLI::Range(0.0, 1.0));
  }

  BenchmarkRun bench(const std::string& algo, const Global& g, const IsingInstance& inst,
                     const GroundState& ground) const {
    const CostModel cost = CostModel::for_size(inst.size());
    if (algo == "sa") {
      SaBench sa;
      sa.sweeps = sweeps;
      sa.schedule = parse_schedule(schedule);
      return sa_benchmark(inst, ground, sa, runs, g.seed, g.jobs);
    }
    if (algo == "qaoa") return qaoa_baseline(inst, g.params(), ground, sampler.Q, runs, g.seed, cost, g.jobs);
    return qjump_benchmark(inst, algo == "qjump" ? g.params() : InfParams{}, ground,
                           loop_config(algo), sampler.iterations, runs, g.seed, cost, g.jobs);
  }

  SamplerConfig loop_config(const std::string& algo) const {
    SamplerConfig c = sampler.config();
    if (algo == "cjump") {
      c.backend = Backend::classical_random;
      c.eta = eta;
    }
    return c;
  }
};

struct SolveCmd {
  AlgoOpts opts;
  std::string out;
  std::string trace;
  bool truth_by_sa = false;

  void add(CLI::App& app, const Global& g) {
    auto* solve = app.add_subcommand("solve", "run one algorithm on an instance");
    solve->require_subcommand(1);
    for (const std::string algo : {"sa", "qjump", "qaoa", "cjump"}) {
      auto* c = solve->add_subcommand(algo);
      opts.instance.add(c);
      c->add_option("--runs,--restarts", opts.runs, "independent runs")->check(CLI::PositiveNumber);
      c->add_option("-o,--out", out, "per-run CSV (default stdout)");
      if (algo == "sa") {
        opts.add_sa(c);
      } else if (algo == "qaoa") {
        c->add_option("--Q", opts.sampler.Q, "ansatz depth")->check(CLI::PositiveNumber);
      } else {
        opts.add_loop(c);
        c->add_option("--initial", opts.initial, "first warm start (default random)");
        c->add_option("--trace", trace, "JSON trace of run 0");
      }
      c->callback([this, &g, algo] { run(g, algo); });
    }
  }

  void run(const Global& g, const std::string& algo) {
    const IsingInstance inst = opts.instance.load();
    const GroundTruth truth = ground_truth(inst, derive_seed(g.seed, 99));
    Sink sink(out);
    CsvWriter w(sink.stream(), "solve",
                {"instance", "algorithm", "run", "e_best", "hit", "model_ns", "acceptance", "n_ls",
                 "eta", "best"});
    if (!opts.initial.empty()) {
      // A fixed first warm start only makes sense for a single traced run.
      const SamplerConfig cfg = opts.loop_config(algo);
      const QjumpSolver solver(inst, algo == "qjump" ? g.params() : InfParams{}, cfg);
      const QjumpTrace t = solver.run(opts.sampler.iterations, derive_seed(g.seed, 1),
                                      parse_state(opts.initial, inst.size(), "--initial"));
      w.row({inst.metadata().id, algo == "qjump" ? "qjump" : "classical-jump", 0LL, t.e_best,
             static_cast<long long>(truth.ground.is_ground(t.e_best)), 0.0, 0.0, t.mean_n_ls(),
             t.mean_flip_ratio(), t.best.to_string()});
      write_trace(t, inst, cfg, g);
    } else {
      const BenchmarkRun b = opts.bench(algo, g, inst, truth.ground);
      write_runs(w, b);
      if (!trace.empty()) {
        const SamplerConfig cfg = opts.loop_config(algo);
        const QjumpSolver solver(inst, algo == "qjump" ? g.params() : InfParams{}, cfg);
        write_trace(solver.run(opts.sampler.iterations, derive_seed(g.seed, 1)), inst, cfg, g);
      }
    }
    sink.commit();
    if (g.wall_time) std::cerr << "wall_ms " << g.elapsed_ms() << '\n';
  }

  void write_trace(const QjumpTrace& t, const IsingInstance& inst, const SamplerConfig& cfg,
                   const Global& g) const {
    if (trace.empty()) return;
    Sink s(trace);
    s.stream() << trace_json(t, inst, cfg, opts.sampler.iterations, g.seed).dump(1) << '\n';
    s.commit();
  }
};

struct TtsCmd {
  AlgoOpts opts;
  std::string algo = "qjump";
  std::string out;

  void add(CLI::App& app, const Global& g) {
    auto* c = app.add_subcommand("tts", "success probability and time to solution");
    opts.instance.add(c);
    c->add_option("--algorithm", algo)->check(CLI::IsMember({"sa", "qjump", "qaoa", "cjump"}));
    c->add_option("--runs", opts.runs)->check(CLI::PositiveNumber);
    c->add_option("-o,--out", out);
    opts.add_sa(c);
    opts.add_loop(c);
    c->callback([this, &g] { run(g); });
  }

  void run(const Global& g) {
    const IsingInstance inst = opts.instance.load();
    const GroundTruth truth = ground_truth(inst, derive_seed(g.seed, 99));
    const BenchmarkRun b = opts.bench(algo, g, inst, truth.ground);
    std::string config;
    for (const auto& [k, v] : b.config) config += (config.empty() ? "" : ";") + k + "=" + v;
    Sink sink(out);
    CsvWriter w(sink.stream(), "tts",
                with_wall({"instance", "algorithm", "runs", "hits", "p_s", "t_r_ns", "tts_s",
                           "tts_infinite", "e_g", "certified", "config"},
                          g.wall_time));
    const long long hits = std::count_if(b.runs.begin(), b.runs.end(), [](const auto& r) { return r.hit; });
    std::vector<CsvWriter::Cell> row{b.instance_id, b.algorithm, static_cast<long long>(b.runs.size()),
                                     hits, b.p_s, b.t_r_ns, b.tts.seconds,
                                     static_cast<long long>(b.tts.infinite), truth.ground.energy,
                                     static_cast<long long>(truth.certified), config};
    if (g.wall_time) row.emplace_back(g.elapsed_ms());
    w.row(row);
    sink.commit();
  }
};

// ---- compare --------------------------------------------------------------

struct CompareCmd {
  InstanceOpts instance;
  CompareConfig cfg;
  std::string out;
  std::string grid_out;
  std::string curve_out;

  void add(CLI::App& app, const Global& g) {
    auto* c = app.add_subcommand("compare", "fixed model-time budget comparison");
    instance.add(c);
    c->add_option("--budget-ms", cfg.budget_ms)->check(CLI::NonNegativeNumber);
    c->add_option("--L", cfg.L)->check(CLI::PositiveNumber);
    c->add_option("--Q", cfg.Q)->check(CLI::PositiveNumber);
    c->add_option("--alpha", cfg.alpha)->check(CLI::Range(0.0, 1.0));
    c->add_option("--M", cfg.M)->check(CLI::PositiveNumber);
    c->add_option("--iterations", cfg.iterations)->check(CLI::PositiveNumber);
    c->add_option("--cjump-eta", cfg.cjump_eta)->check(CLI::Range(0.0, 1.0));
    c->add_option("--qaoa-Q", cfg.qaoa_Q)->check(CLI::PositiveNumber);
    c->add_option("--sa-sweeps", cfg.sa.sweeps)->check(CLI::PositiveNumber);
    c->add_option("-o,--out", out, "per-algorithm summary CSV");
    c->add_option("--grid", grid_out, "occurrence grid CSV");
    c->add_option("--curve", curve_out, "solutions per Hamming-distance box CSV");
    c->callback([this, &g] { run(g); });
  }

  void run(const Global& g) {
    const IsingInstance inst = instance.load();
    const GroundTruth truth = ground_truth(inst, derive_seed(g.seed, 99));
    cfg.seed = g.seed;
    const auto results =
        fixed_budget_comparison(inst, g.params(), truth.ground, cfg, CostModel::for_size(inst.size()));
    Sink sink(out);
    CsvWriter w(sink.stream(), "compare",
                with_wall({"instance", "algorithm", "runs", "used_ms", "hits", "p_s", "zero_runs"},
                          g.wall_time));
    for (const auto& r : results) {
      if (r.zero_runs) std::cerr << "warning: budget below one " << r.algorithm << " run\n";
      const long long hits = std::count_if(r.runs.begin(), r.runs.end(), [](const auto& x) { return x.hit; });
      const double p = r.runs.empty() ? 0.0 : static_cast<double>(hits) / r.runs.size();
      std::vector<CsvWriter::Cell> row{inst.metadata().id, r.algorithm,
                                       static_cast<long long>(r.runs.size()), r.used_ns * 1e-6, hits, p,
                                       static_cast<long long>(r.zero_runs)};
      if (g.wall_time) row.emplace_back(g.elapsed_ms());
      w.row(row);
    }
    sink.commit();
    if (!grid_out.empty()) {
      Sink s(grid_out);
      CsvWriter gw(s.stream(), "compare-grid", {"algorithm", "energy_box", "hd_box", "count"});
      for (const auto& r : results) {
        for (const auto& [key, m] : r.grid.cells) {
          gw.row({r.algorithm, static_cast<long long>(key.first), static_cast<long long>(key.second), m});
        }
      }
      s.commit();
    }
    if (!curve_out.empty()) {
      Sink s(curve_out);
      CsvWriter cw(s.stream(), "compare-curve", {"algorithm", "hd_box", "hd_lo", "count"});
      for (const auto& r : results) {
        int top = -1;
        for (const auto& [key, m] : r.grid.cells) top = std::max(top, key.second);
        for (int b = 0; b <= top; ++b) {
          cw.row({r.algorithm, static_cast<long long>(b),
                  static_cast<long long>(b * r.grid.options.box_hd), r.grid.marginal_hd(b)});
        }
      }
      s.commit();
    }
  }
};

// ---- analyze --------------------------------------------------------------

// Exact output distribution of the sampler (or of classical random flips at
// the sampler's mean flip ratio) after local search.
struct Landscape {
  IsingInstance inst;
  GroundTruth truth;
  Bitstring s_circ;
  std::vector<double> energies;
  std::vector<double> quantum;    // after local search
  std::vector<double> classical;  // after local search, matched eta
  double eta = 0.0;
};

struct LandscapeOpts {
  InstanceOpts instance;
  SamplerOpts sampler;
  WarmStartOpts warm;
  bool raw = false;
  double box_e = 0.01;
  int box_hd = 2;

  void add(CLI::App* c) {
    instance.add(c);
    sampler.add(c, false);
    warm.add(c);
    c->add_flag("--raw", raw, "skip local search on the sampled states");
    c->add_option("--box-e", box_e, "grid box width in 1 - R")->check(CLI::PositiveNumber);
    c->add_option("--box-hd", box_hd, "grid box width in Hamming distance")->check(CLI::PositiveNumber);
  }

  Landscape build(const Global& g) const {
    Landscape out;
    out.inst = instance.load();
    out.truth = ground_truth(out.inst, derive_seed(g.seed, 99));
    out.s_circ = warm.resolve(out.inst, out.truth.ground, g.seed);
    SamplerConfig cfg = sampler.config();
    const QjumpSolver solver(out.inst, g.params(), cfg);
    const auto probs = solver.distribution(out.s_circ, sampler.alpha);
    out.eta = exact_flip_ratio(probs, out.s_circ);
    const auto classical = classical_flip_distribution(out.s_circ, out.eta);
    out.energies.assign(solver.energies().begin(), solver.energies().end());
    if (raw) {
      out.quantum = probs;
      out.classical = classical;
    } else {
      const auto basins = basin_map(out.inst);
      out.quantum = after_local_search(probs, basins);
      out.classical = after_local_search(classical, basins);
    }
    return out;
  }
  GridOptions grid() const { return {box_e, box_hd}; }
};

struct AnalyzeCmd {
  LandscapeOpts land;
  std::string out;
  int max_index = -1;
  bool full_energy = false;
  double aspect = 0.0;
  // fxpath / hdprofile / gaussmodel / condmc
  InstanceOpts instance;
  std::string s_x;
  std::optional<double> gamma;
  std::optional<double> beta;
  int Q = 1;
  int layer = 1;
  double gamma_lo = -1.0, gamma_hi = 1.0;
  int steps = 201;
  std::string curve;
  WarmStartOpts warm;
  double alpha = 0.6;
  int samples = 10000;
  int radius = 4;
  std::string samples_out;

  void add(CLI::App& app, const Global& g) {
    auto* a = app.add_subcommand("analyze", "landscape and amplitude analyses");
    a->require_subcommand(1);

    auto* grid = a->add_subcommand("grid", "occurrence grid of the exact sampler distribution");
    land.add(grid);
    grid->add_option("-o,--out", out);
    grid->callback([this, &g] { run_grid(g); });

    auto* regions = a->add_subcommand("regions", "square-region sums, quantum vs classical");
    land.add(regions);
    regions->add_option("-o,--out", out);
    regions->add_option("--max-index", max_index, "largest region index (default n)");
    regions->add_flag("--full-energy", full_energy, "regions span the whole energy range");
    regions->add_option("--aspect", aspect, "energy extent per region index (default box ratio)");
    regions->callback([this, &g] { run_regions(g); });

    auto* fx = a->add_subcommand("fxpath", "components of a single-layer amplitude");
    add_point(fx);
    fx->callback([this, &g] { run_fxpath(g); });

    auto* hd = a->add_subcommand("hdprofile", "weight of each Hamming shell");
    add_point(hd);
    hd->callback([this, &g] { run_hdprofile(g); });

    auto* gm = a->add_subcommand("gaussmodel", "Gaussian probability model and its peak");
    add_point(gm);
    gm->add_option("--gamma-min", gamma_lo);
    gm->add_option("--gamma-max", gamma_hi);
    gm->add_option("--steps", steps)->check(CLI::Range(2, 1000000));
    gm->add_option("--curve", curve, "model probability over the gamma range");
    gm->callback([this, &g] { run_gaussmodel(g); });

    auto* mc = a->add_subcommand("condmc", "conditional Monte Carlo and local covariance");
    add_point(mc);
    warm.add(mc);
    mc->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
    mc->add_option("--samples", samples)->check(CLI::PositiveNumber);
    mc->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
    mc->add_option("--samples-out", samples_out, "dump the sampled bitstrings");
    mc->callback([this, &g] { run_condmc(g); });
  }

  void add_point(CLI::App* c) {
    instance.add(c);
    c->add_option("--s-x", s_x, "target bitstring (default: a ground state)");
    c->add_option("--gamma", gamma, "cost angle (default: transferred schedule)");
    c->add_option("--beta", beta, "mixer angle (default: transferred schedule)");
    c->add_option("--Q", Q, "depth whose schedule supplies default angles")->check(CLI::PositiveNumber);
    c->add_option("--layer", layer, "layer of that schedule, 1-based")->check(CLI::PositiveNumber);
    c->add_option("-o,--out", out);
  }

  struct Point {
    IsingInstance inst;
    GroundTruth truth;
    Bitstring x;
    double gamma = 0.0;
    double beta = 0.0;
  };

  Point point(const Global& g) const {
    Point p;
    p.inst = instance.load();
    p.truth = ground_truth(p.inst, derive_seed(g.seed, 99));
    p.x = s_x.empty() ? p.truth.ground.minimizers.front() : parse_state(s_x, p.inst.size(), "--s-x");
    if (!gamma || !beta) {
      if (layer > Q) throw InputError("--layer exceeds --Q");
      const ParamSchedule s = build_schedule(g.params(), p.inst, layer, Q);
      p.gamma = s.gammas[layer - 1];
      p.beta = s.betas[layer - 1];
    }
    if (gamma) p.gamma = *gamma;
    if (beta) p.beta = *beta;
    return p;
  }

  void run_grid(const Global& g) {
    const Landscape l = land.build(g);
    Sink sink(out);
    CsvWriter w(sink.stream(), "grid", {"sampler", "energy_box", "hd_box", "mass"});
    for (const auto& [name, dist] : {std::pair{"quantum", &l.quantum}, std::pair{"classical", &l.classical}}) {
      const OccurrenceGrid grid = occurrence_grid(*dist, l.energies, l.truth.ground, land.grid());
      for (const auto& [key, m] : grid.cells) {
        w.row({name, static_cast<long long>(key.first), static_cast<long long>(key.second), m});
      }
    }
    sink.commit();
  }

  void run_regions(const Global& g) {
    const Landscape l = land.build(g);
    const int top = max_index < 0 ? l.inst.size() : max_index;
    const RegionOptions ro{full_energy, aspect};
    const auto q = square_region_sums(occurrence_grid(l.quantum, l.energies, l.truth.ground, land.grid()), top, ro);
    const auto c = square_region_sums(occurrence_grid(l.classical, l.energies, l.truth.ground, land.grid()), top, ro);
    const int effective = effective_jump_index(l.truth.ground.distance(l.s_circ));
    Sink sink(out);
    CsvWriter w(sink.stream(), "regions", {"index", "quantum", "classical", "eta", "effective"});
    for (int d = 0; d <= top; ++d) {
      w.row({static_cast<long long>(d), q[d], c[d], l.eta, static_cast<long long>(d == effective)});
    }
    sink.commit();
  }

  void run_fxpath(const Global& g) {
    const Point p = point(g);
    const auto dec = decompose_fx(p.inst, p.x, p.gamma, p.beta);
    Sink sink(out);
    CsvWriter w(sink.stream(), "fxpath", {"d", "energy", "index", "re", "im", "path_re", "path_im"});
    Complex path{};
    for (const auto& c : dec.components) {
      path += c.value;
      w.row({static_cast<long long>(c.d), c.energy, static_cast<long long>(c.index), c.value.real(),
             c.value.imag(), path.real(), path.imag()});
    }
    sink.commit();
  }

  void run_hdprofile(const Global& g) {
    const Point p = point(g);
    Sink sink(out);
    CsvWriter w(sink.stream(), "hdprofile", {"d", "count", "weight", "product"});
    for (const auto& r : hd_contribution_profile(p.inst, p.x, p.beta)) {
      w.row({static_cast<long long>(r.d), static_cast<long long>(r.count), r.weight, r.product});
    }
    sink.commit();
  }

  void run_gaussmodel(const Global& g) {
    const Point p = point(g);
    const GaussianModel m = fit_gaussian_model(p.inst, p.x, p.beta);
    Sink sink(out);
    CsvWriter w(sink.stream(), "gaussmodel", {"sigma_e", "cov", "gamma_star", "peak", "beta"});
    w.row({m.sigma_e, m.cov, gamma_star(m), gaussian_peak(m), p.beta});
    sink.commit();
    if (!curve.empty()) {
      Sink s(curve);
      CsvWriter cw(s.stream(), "gaussmodel-curve", {"gamma", "prob"});
      for (int i = 0; i < steps; ++i) {
        const double gm = gamma_lo + (gamma_hi - gamma_lo) * i / (steps - 1);
        cw.row({gm, gaussian_prob(m, gm)});
      }
      s.commit();
    }
  }

  void run_condmc(const Global& g) {
    const Point p = point(g);
    const Bitstring s_circ = warm.resolve(p.inst, p.truth.ground, g.seed);
    const auto ys = conditional_mc_sample(p.inst, p.x, s_circ, reference_theta(alpha), p.beta, samples,
                                          derive_seed(g.seed, 21));
    LocalCovarianceOptions lo;
    lo.radius = radius;
    lo.seed = derive_seed(g.seed, 22);
    Sink sink(out);
    CsvWriter w(sink.stream(), "condmc", {"d", "count", "mean", "stddev", "stderr"});
    for (const auto& r : local_covariance(p.inst, ys, p.x, lo)) {
      w.row({static_cast<long long>(r.d), static_cast<long long>(r.count), r.mean, r.stddev, r.stderr_});
    }
    sink.commit();
    if (!samples_out.empty()) {
      Sink s(samples_out);
      CsvWriter sw(s.stream(), "condmc-samples", {"sample", "bits", "energy", "d_circ", "d_x"});
      for (std::size_t i = 0; i < ys.size(); ++i) {
        sw.row({static_cast<long long>(i), ys[i].to_string(), energy(p.inst, ys[i]),
                static_cast<long long>(hamming(ys[i], s_circ)), static_cast<long long>(hamming(ys[i], p.x))});
      }
      s.commit();
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qjump: warm-start quantum jump sampler, baselines and analysis"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("-j,--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--params-file", g.params_file, "infinite-size angle table (JSON)")
      ->check(CLI::ExistingFile);
  app.add_flag("--wall-time", g.wall_time, "add wall-clock columns (breaks byte-identical reruns)");

  GenerateCmd generate;
  FilterCmd filter;
  SolveCmd solve;
  TtsCmd tts_cmd;
  CompareCmd compare;
  AnalyzeCmd analyze;
  generate.add(app, g);
  filter.add(app, g);
  solve.add(app, g);
  tts_cmd.add(app, g);
  compare.add(app, g);
  analyze.add(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const DegenerateInstanceError& e) {
    std::cerr << "degenerate instance: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
