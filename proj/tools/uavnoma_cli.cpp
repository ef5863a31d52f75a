// uavnoma: run single schemes, parameter sweeps and convergence experiments
// for UAV-mounted NOMA-VLC access points and write the results as CSV.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "uavnoma/config_file.hpp"
#include "uavnoma/experiment.hpp"

namespace fs = std::filesystem;
using namespace uavnoma;

namespace {

struct CommonFlags {
  std::string config;
  std::string out = "results";
  std::size_t users = 0;
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t threads = 0;
  bool threads_set = false;
  bool wall_time = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output directory")->capture_default_str();
  cmd->add_option("--users", f.users, "number of users N");
  cmd->add_option("--realizations", f.realizations, "random user layouts per point");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&f](std::uint64_t s) { f.seed = s, f.seed_set = true; }, "master seed");
  cmd->add_option_function<std::size_t>(
      "--threads", [&f](std::size_t t) { f.threads = t, f.threads_set = true; },
      "worker threads (0 = all cores)");
  cmd->add_flag("--wall-time", f.wall_time, "record wall_time_ms (breaks byte-identical reruns)");
}

ExperimentSpec build_spec(const CommonFlags& f) {
  ExperimentSpec spec;
  if (!f.config.empty()) spec = load_experiment_config(f.config, spec);
  if (f.users) spec.num_users = f.users;
  if (f.realizations) spec.num_realizations = f.realizations;
  if (f.seed_set) spec.master_seed = f.seed;
  if (f.threads_set) spec.threads = f.threads;
  if (f.wall_time) spec.record_wall_time = true;
  return spec;
}

void print_summary(const std::vector<SchemeResult>& rows, SweepVariable sweep) {
  std::printf("%-12s %12s %16s %14s %9s\n", "scheme", std::string(to_string(sweep)).c_str(),
              "mean_wsr_bps", "mean_bpshz", "feasible");
  for (const auto& s : summarize(rows))
    std::printf("%-12s %12g %16.6g %14.6g %8.0f%%\n", std::string(to_string(s.scheme)).c_str(),
                s.sweep_value, s.mean_bps, s.mean_bpshz, 100.0 * s.feasible_fraction);
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < csv.size()) {
    const auto comma = csv.find(',', start);
    const auto end = comma == std::string::npos ? csv.size() : comma;
    out.push_back(std::stod(csv.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint UAV placement, user pairing and NOMA power allocation for aerial VLC"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, conv_flags;
  std::vector<std::string> run_schemes, sweep_schemes;
  std::string sweep_var = "pmax";
  std::string sweep_values;
  std::string conv_users = "4,8,12,16,20";

  auto* run = app.add_subcommand("run", "run schemes on random layouts without a sweep");
  add_common(run, run_flags);
  run->add_option("--scheme", run_schemes, "upup, oma, cnoma, fixedp, rclustering (repeatable)");

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter across all schemes");
  add_common(sweep, sweep_flags);
  sweep->add_option("--scheme", sweep_schemes, "restrict to these schemes (repeatable)");
  sweep->add_option("--sweep", sweep_var, "pmax | fov | radius | num_users")->capture_default_str();
  sweep->add_option("--values", sweep_values, "comma-separated values (mW, deg, m or count)");

  auto* conv = app.add_subcommand("convergence", "best-so-far fitness traces of UPUP versus N");
  add_common(conv, conv_flags);
  conv->add_option("--user-counts", conv_users, "comma-separated N values")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ExperimentSpec spec = build_spec(run_flags);
      spec.sweep = SweepVariable::none;
      if (!run_schemes.empty()) {
        spec.schemes.clear();
        for (const auto& s : run_schemes) spec.schemes.push_back(parse_scheme(s));
      }
      fs::create_directories(run_flags.out);
      const auto rows = run_sweep(spec);
      write_results_csv(fs::path(run_flags.out) / "results.csv", spec, rows);
      for (const auto& r : rows)
        if (!r.trace.best_fitness_per_iteration.empty())
          write_convergence(r.trace, fs::path(run_flags.out) /
                                         ("trace_" + std::string(to_string(r.scheme)) + "_r" +
                                          std::to_string(r.realization) + ".csv"));
      print_summary(rows, spec.sweep);
    } else if (sweep->parsed()) {
      ExperimentSpec spec = build_spec(sweep_flags);
      if (sweep->count("--sweep") || spec.sweep == SweepVariable::none)
        spec.sweep = parse_sweep_variable(sweep_var);
      if (!sweep_values.empty()) spec.sweep_values = parse_values(sweep_values);
      if (spec.sweep_values.empty()) {
        switch (spec.sweep) {
          case SweepVariable::pmax: spec.sweep_values = {20, 40, 60, 80, 100}; break;
          case SweepVariable::fov: spec.sweep_values = {40, 45, 50, 55, 60, 65}; break;
          case SweepVariable::radius: spec.sweep_values = {4, 6, 8, 10, 12, 14}; break;
          case SweepVariable::num_users: spec.sweep_values = {4, 8, 12, 16, 20}; break;
          case SweepVariable::none: break;
        }
      }
      if (!sweep_schemes.empty()) {
        spec.schemes.clear();
        for (const auto& s : sweep_schemes) spec.schemes.push_back(parse_scheme(s));
      }
      fs::create_directories(sweep_flags.out);
      const auto rows = run_sweep(spec);
      write_results_csv(fs::path(sweep_flags.out) / "results.csv", spec, rows);
      print_summary(rows, spec.sweep);
    } else if (conv->parsed()) {
      ExperimentSpec spec = build_spec(conv_flags);
      spec.sweep = SweepVariable::num_users;
      spec.sweep_values = parse_values(conv_users);
      spec.schemes = {SchemeId::upup};
      fs::create_directories(conv_flags.out);
      const auto rows = run_sweep(spec);
      write_results_csv(fs::path(conv_flags.out) / "results.csv", spec, rows);
      for (double n : spec.sweep_values) {
        std::vector<SchemeResult> subset;
        for (const auto& r : rows)
          if (r.sweep_value == n) subset.push_back(r);
        OptimizationTrace mean;
        mean.best_fitness_per_iteration = mean_trace(subset);
        write_convergence(mean, fs::path(conv_flags.out) /
                                    ("convergence_N" + std::to_string(static_cast<int>(n)) + ".csv"));
      }
      print_summary(rows, spec.sweep);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
