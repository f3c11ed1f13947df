// gmrfig: run inverse-temperature sweeps on a Gaussian Markov random field,
// analyse stored snapshots and export Fisher curves.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmrfig/curve.hpp"
#include "gmrfig/errors.hpp"
#include "gmrfig/format.hpp"
#include "gmrfig/sampler.hpp"
#include "gmrfig/snapshot.hpp"
#include "gmrfig/trajectory_io.hpp"
#include "gmrfig/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  int rows = 128;
  int cols = 128;
  double mu0 = 0.0;
  double sigma2_0 = 5.0;
  double beta_min = 0.0;
  double beta_max = 0.5;
  double delta_beta = 0.005;
  std::string mode = "up-then-down";
  std::string sampler = "metropolis";
  std::string proposal = "independent";
  std::optional<double> proposal_std;
  int sweeps_per_step = 1;
  int steps_per_leg = 100;
  bool track_estimates = false;
  std::uint64_t seed = 1;
  std::string out_dir = "run";
  bool dump_snapshots = false;
  int replicas = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

gmrfig::Schedule make_schedule(const RunConfig& c) {
  gmrfig::Schedule s;
  s.beta_min = c.beta_min;
  s.beta_max = c.beta_max;
  s.delta_beta = c.delta_beta;
  s.mode = gmrfig::parse_schedule_mode(c.mode);
  s.hold_steps = c.steps_per_leg;
  s.validate();
  return s;
}

gmrfig::RunOptions make_options(const RunConfig& c) {
  gmrfig::RunOptions o;
  o.sampler = gmrfig::parse_sampler_kind(c.sampler);
  o.proposal = gmrfig::parse_proposal_kind(c.proposal);
  o.proposal_std = c.proposal_std;
  o.sweeps_per_step = c.sweeps_per_step;
  o.track_estimates = c.track_estimates;
  if (o.sweeps_per_step < 1) throw gmrfig::InvalidParameter("sweeps-per-step must be >= 1");
  if (o.proposal_std && !(*o.proposal_std > 0.0)) {
    throw gmrfig::InvalidParameter("proposal-std must be positive");
  }
  return o;
}

void validate(const RunConfig& c) {
  if (c.rows < 3 || c.cols < 3) throw gmrfig::InvalidParameter("lattice must be at least 3x3");
  if (c.replicas < 1) throw gmrfig::InvalidParameter("replicas must be >= 1");
  gmrfig::ModelParams{c.mu0, c.sigma2_0, 0.0, gmrfig::kMooreSupport}.validate();
  make_schedule(c);
  make_options(c);
}

json config_json(const RunConfig& c, std::uint64_t chain_seed) {
  json j;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["mu0"] = c.mu0;
  j["sigma2_0"] = c.sigma2_0;
  j["beta_min"] = c.beta_min;
  j["beta_max"] = c.beta_max;
  j["delta_beta"] = c.delta_beta;
  j["mode"] = c.mode;
  j["sampler"] = c.sampler;
  j["proposal"] = c.proposal;
  j["proposal_std"] = c.proposal_std ? json(*c.proposal_std) : json(nullptr);
  j["sweeps_per_step"] = c.sweeps_per_step;
  j["steps_per_leg"] = c.steps_per_leg;
  j["track_estimates"] = c.track_estimates;
  j["seed"] = c.seed;
  j["chain_seed"] = chain_seed;
  j["dump_snapshots"] = c.dump_snapshots;
  j["replicas"] = c.replicas;
  return j;
}

std::size_t replica_threads(int replicas) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GMRF_INFOGEO_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw UsageError("GMRF_INFOGEO_THREADS must be a positive integer");
    }
    cap = static_cast<std::size_t>(v);
  }
  return std::min(cap, static_cast<std::size_t>(replicas));
}

void run_chain(const RunConfig& c, std::uint64_t chain_seed, const fs::path& dir) {
  fs::create_directories(dir);
  if (c.dump_snapshots) fs::create_directories(dir / "snapshots");

  gmrfig::RunOptions options = make_options(c);
  options.seed = chain_seed;
  if (c.dump_snapshots) {
    options.on_step = [&dir](int iteration, double beta, const gmrfig::Configuration& field) {
      gmrfig::save_snapshot(dir / "snapshots" / ("step_" + std::to_string(iteration) + ".snap"),
                            field, beta);
    };
  }
  const gmrfig::ModelParams params{c.mu0, c.sigma2_0, 0.0, gmrfig::kMooreSupport};
  auto field = gmrfig::new_iid_configuration(c.rows, c.cols, c.mu0, c.sigma2_0, chain_seed);
  const auto records = gmrfig::run_schedule(make_schedule(c), std::move(field), params, options);
  gmrfig::save_trajectory(dir / "trajectory.csv", records);

  const auto degenerate = std::count_if(records.begin(), records.end(),
                                        [](const auto& r) { return r.degenerate; });
  json meta;
  meta["version"] = gmrfig::kVersion;
  meta["config"] = config_json(c, chain_seed);
  meta["records"] = records.size();
  meta["degenerate_records"] = degenerate;
  std::ofstream out(dir / "run_meta.json");
  out << meta.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + (dir / "run_meta.json").string());
}

int cmd_simulate(const RunConfig& c) {
  validate(c);
  const fs::path root(c.out_dir);
  if (c.replicas == 1) {
    run_chain(c, c.seed, root);
    std::cout << "wrote " << (root / "trajectory.csv").string() << '\n';
    return kExitOk;
  }

  const std::size_t workers = replica_threads(c.replicas);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < c.replicas; i = next++) {
        try {
          const std::uint64_t s =
              gmrfig::derive_seed(c.seed, gmrfig::Stream::replica, static_cast<std::uint64_t>(i));
          run_chain(c, s, root / ("replica_" + std::to_string(i)));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  std::cout << "wrote " << c.replicas << " replicas under " << root.string() << '\n';
  return kExitOk;
}

json tensor_json(const gmrfig::FisherTensor& t) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"mumu", num(t.x)}, {"s2s2", num(t.y)}, {"s2b", num(t.w)}, {"bb", num(t.z)}};
}

int cmd_analyze(const std::string& path, bool as_json) {
  gmrfig::Snapshot snap = gmrfig::load_snapshot(path);
  const gmrfig::TrajectoryRecord r = gmrfig::measure_snapshot(snap.config, snap.beta_set);
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  if (as_json) {
    json j;
    j["rows"] = snap.config.rows();
    j["cols"] = snap.config.cols();
    j["beta_set"] = snap.beta_set;
    j["mu_hat"] = num(r.mu_hat);
    j["sigma2_hat"] = num(r.sigma2_hat);
    j["beta_mpl"] = num(r.beta_mpl);
    j["H"] = num(r.entropy);
    j["g1"] = tensor_json(r.g1);
    j["g2"] = tensor_json(r.g2);
    j["upsilon_beta"] = num(r.upsilon_beta);
    j["degenerate"] = r.degenerate;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  auto show = [](double v) { return std::isfinite(v) ? gmrfig::format_g17(v) : "unavailable"; };
  std::cout << "lattice       " << snap.config.rows() << "x" << snap.config.cols() << '\n'
            << "beta_set      " << gmrfig::format_g17(snap.beta_set) << '\n'
            << "mu_hat        " << show(r.mu_hat) << '\n'
            << "sigma2_hat    " << show(r.sigma2_hat) << '\n'
            << "beta_mpl      " << show(r.beta_mpl) << '\n'
            << "H             " << show(r.entropy) << '\n';
  for (const auto* t : {&r.g1, &r.g2}) {
    std::cout << (t->kind == gmrfig::TensorKind::type1 ? "g1" : "g2") << "  mumu=" << show(t->x)
              << " s2s2=" << show(t->y) << " s2b=" << show(t->w) << " bb=" << show(t->z)
              << '\n';
  }
  std::cout << "upsilon_beta  " << show(r.upsilon_beta) << '\n'
            << "status        " << (r.degenerate ? "degenerate" : "ok") << '\n';
  return kExitOk;
}

int cmd_curve(const std::string& trajectory, const std::string& component_name,
              const std::string& format_name, const std::string& out_dir) {
  const auto component = gmrfig::parse_component(component_name);
  const auto format = gmrfig::parse_curve_format(format_name);
  const auto records = gmrfig::load_trajectory(trajectory);
  const auto fwd = gmrfig::build_fisher_curve(records, component, gmrfig::Leg::forward);
  const auto bwd = gmrfig::build_fisher_curve(records, component, gmrfig::Leg::backward);
  const auto [fa, ba] = gmrfig::align_common_grid(fwd, bwd);
  const double gap = gmrfig::hysteresis_gap(fa, ba);

  const fs::path dir = out_dir.empty() ? fs::path(trajectory).parent_path() : fs::path(out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  const std::string stem = "curve_" + component_name;
  const std::string ext = format_name;
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + p.string());
  };
  write(dir / (stem + "_forward." + ext), gmrfig::export_curve(fwd, format));
  write(dir / (stem + "_backward." + ext), gmrfig::export_curve(bwd, format));
  write(dir / "gap.txt", gmrfig::format_g17(gap) + '\n');
  std::cout << component_name << " gap " << gmrfig::format_g17(gap) << " over " << fa.betas.size()
            << " shared beta values\n";
  return kExitOk;
}

// Applies `key=value` lines to options the command line left unset. Keys are
// long option names without the leading dashes; '_' and '-' are interchangeable.
void apply_config_file(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") throw UsageError("config files cannot include other config files");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config file '" + path + "': unknown key '" + item.name + "'");
    if (opt->count() > 0) continue;
    try {
      for (const auto& v : item.inputs) opt->add_result(v);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config file '" + path + "': " + item.name + ": " + e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Markov random field sweeps and Fisher information curves"};
  app.set_version_flag("--version", gmrfig::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  auto* sim = app.add_subcommand("simulate", "run a beta schedule and write trajectory.csv");
  std::string config_file;
  sim->add_option("--config", config_file, "key=value file; flags given on the command line win");
  sim->add_option("--rows", cfg.rows, "lattice rows")->capture_default_str();
  sim->add_option("--cols", cfg.cols, "lattice columns")->capture_default_str();
  sim->add_option("--mu0", cfg.mu0, "initial mean")->capture_default_str();
  sim->add_option("--sigma2", cfg.sigma2_0, "initial variance")->capture_default_str();
  sim->add_option("--beta-min", cfg.beta_min)->capture_default_str();
  sim->add_option("--beta-max", cfg.beta_max)->capture_default_str();
  sim->add_option("--delta-beta", cfg.delta_beta)->capture_default_str();
  sim->add_option("--mode", cfg.mode, "up | down | up-then-down")->capture_default_str();
  sim->add_option("--sampler", cfg.sampler, "metropolis | gibbs")->capture_default_str();
  sim->add_option("--proposal", cfg.proposal, "independent | random-walk")
      ->capture_default_str();
  sim->add_option("--proposal-std", cfg.proposal_std,
                  "random-walk step (default sqrt of the sampler variance)");
  sim->add_option("--sweeps-per-step", cfg.sweeps_per_step)->capture_default_str();
  sim->add_option("--steps-per-leg", cfg.steps_per_leg,
                  "steps per leg when beta-min == beta-max")
      ->capture_default_str();
  sim->add_flag("--track-estimates", cfg.track_estimates,
                "feed each step's mean/variance estimates back into the sampler");
  sim->add_option("--seed", cfg.seed)->capture_default_str();
  sim->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  sim->add_flag("--dump-snapshots", cfg.dump_snapshots, "write snapshots/step_<k>.snap");
  sim->add_option("--replicas", cfg.replicas, "independent chains, one subdirectory each")
      ->capture_default_str();

  std::string snapshot_path;
  bool as_json = false;
  auto* ana = app.add_subcommand("analyze", "estimate everything from one snapshot");
  ana->add_option("snapshot", snapshot_path)->required();
  ana->add_flag("--json", as_json, "print one JSON object");

  std::string trajectory_path, component = "bb", format = "csv", curve_out;
  auto* cur = app.add_subcommand("curve", "export forward/backward Fisher curves and their gap");
  cur->add_option("trajectory", trajectory_path)->required();
  cur->add_option("--component", component, "mumu | s2s2 | s2b | bb")->capture_default_str();
  cur->add_option("--format", format, "csv | json")->capture_default_str();
  cur->add_option("--out", curve_out, "output directory (default: next to the trajectory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim && !config_file.empty()) apply_config_file(*sim, config_file);
    if (*sim) return cmd_simulate(cfg);
    if (*ana) return cmd_analyze(snapshot_path, as_json);
    if (*cur) return cmd_curve(trajectory_path, component, format, curve_out);
  } catch (const gmrfig::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gmrfig::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
