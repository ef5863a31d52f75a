#include "uavnoma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace uavnoma {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename Enum>
struct Names {
  Enum value;
  std::string_view name;
};

constexpr Names<SchemeId> kSchemeNames[] = {{SchemeId::upup, "upup"},
                                            {SchemeId::oma, "oma"},
                                            {SchemeId::cnoma, "cnoma"},
                                            {SchemeId::fixedp, "fixedp"},
                                            {SchemeId::rclustering, "rclustering"}};
constexpr Names<SweepVariable> kSweepNames[] = {{SweepVariable::none, "none"},
                                                {SweepVariable::pmax, "pmax"},
                                                {SweepVariable::fov, "fov"},
                                                {SweepVariable::radius, "radius"},
                                                {SweepVariable::num_users, "num_users"}};
constexpr Names<AreaPolicy> kAreaNames[] = {{AreaPolicy::automatic, "auto"},
                                            {AreaPolicy::fixed, "fixed"},
                                            {AreaPolicy::scale_with_radius, "scale_with_radius"},
                                            {AreaPolicy::fit_coverage, "fit_coverage"}};

template <typename Enum, std::size_t N>
std::string_view name_of(const Names<Enum> (&table)[N], Enum value) {
  for (const auto& entry : table)
    if (entry.value == value) return entry.name;
  return "?";
}

template <typename Enum, std::size_t N>
Enum parse_name(const Names<Enum> (&table)[N], std::string_view name, const char* what) {
  for (const auto& entry : table)
    if (entry.name == name) return entry.value;
  throw std::invalid_argument(std::string("unknown ") + what + ": " + std::string(name));
}

SchemeResult solve(SchemeId scheme, const JointProblem& problem, const HhoConfig& hho) {
  const auto start = std::chrono::steady_clock::now();
  const SearchSpace space = problem.search_space();
  OptimizationTrace trace =
      optimize(space, hho, [&problem](std::span<const double> x) { return problem.fitness(x); });
  // Penalty optima tend to sit a hair outside the budget constraints; report
  // the restored point when that alone makes it feasible.
  SolutionVector best = problem.decode(trace.best_point);
  auto ev = problem.evaluate(best);
  if (!ev.report.overall_feasible) {
    SolutionVector restored = problem.restore_budgets(best);
    auto restored_ev = problem.evaluate(restored);
    if (restored_ev.report.overall_feasible) {
      best = std::move(restored);
      ev = std::move(restored_ev);
    }
  }
  const auto stop = std::chrono::steady_clock::now();

  SchemeResult r;
  r.scheme = scheme;
  r.weighted_sum_rate_bps = ev.objective_bps;
  r.weighted_sum_rate_bpshz = ev.objective;
  r.penalty = ev.penalty;
  r.feasible = ev.report.overall_feasible;
  r.best = best;
  r.report = ev.report;
  r.clustering = problem.clustering();
  r.uav_fixed = problem.uav_fixed();
  r.trace = std::move(trace);
  r.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

}  // namespace

std::string_view to_string(SchemeId scheme) { return name_of(kSchemeNames, scheme); }
std::string_view to_string(SweepVariable variable) { return name_of(kSweepNames, variable); }
std::string_view to_string(AreaPolicy policy) { return name_of(kAreaNames, policy); }
SchemeId parse_scheme(std::string_view name) { return parse_name(kSchemeNames, name, "scheme"); }
SweepVariable parse_sweep_variable(std::string_view name) {
  return parse_name(kSweepNames, name, "sweep variable");
}
AreaPolicy parse_area_policy(std::string_view name) {
  return parse_name(kAreaNames, name, "area policy");
}

const std::vector<SchemeId>& all_schemes() {
  static const std::vector<SchemeId> schemes = {SchemeId::upup, SchemeId::oma, SchemeId::cnoma,
                                                SchemeId::fixedp, SchemeId::rclustering};
  return schemes;
}

std::vector<double> ExperimentSpec::effective_values() const {
  if (sweep != SweepVariable::none) return sweep_values;
  return {0.0};
}

void ExperimentSpec::validate() const {
  if (schemes.empty()) throw std::invalid_argument("no schemes selected");
  if (num_realizations < 1) throw std::invalid_argument("num_realizations must be >= 1");
  if (sweep != SweepVariable::none && sweep_values.empty())
    throw std::invalid_argument("sweep needs at least one value");
  if (!(uav_altitude_m > 0.0)) throw std::invalid_argument("uav altitude must be positive");
  if (!(area_side_m > 0.0)) throw std::invalid_argument("area side must be positive");
  system.validate();
  vlc.validate();
  hho.validate();
  penalty.validate();
  if (sweep != SweepVariable::num_users && num_users < 2)
    throw std::invalid_argument("num_users must be >= 2");
  for (double v : effective_values()) {
    if (sweep == SweepVariable::num_users && (v < 2.0 || v != std::floor(v)))
      throw std::invalid_argument("num_users sweep values must be integers >= 2");
    if (sweep != SweepVariable::none && sweep != SweepVariable::num_users && !(v > 0.0))
      throw std::invalid_argument("sweep values must be positive");
  }
}

Scenario generate_scenario(std::size_t num_users, double area_side, double altitude,
                           std::uint64_t seed, const SystemConfig& config, const VlcParams& vlc) {
  if (num_users < 2) throw std::invalid_argument("generate_scenario needs num_users >= 2");
  Scenario s;
  s.uav_altitude = altitude;
  s.config = config;
  s.vlc = vlc;
  s.users.reserve(num_users);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t n = 0; n < num_users; ++n) {
    const double ux = unit(rng);
    const double uy = unit(rng);
    s.users.push_back({(ux - 0.5) * area_side, (uy - 0.5) * area_side, 0.0});
  }
  return s;
}

RealizationSeeds derive_seeds(std::uint64_t master_seed, std::size_t realization) {
  RealizationSeeds s;
  s.realization = splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(realization) + 1));
  s.scenario = splitmix64(s.realization + 1);
  s.optimizer = splitmix64(s.realization + 2);
  s.pairing = splitmix64(s.realization + 3);
  s.placement = splitmix64(s.realization + 4);
  return s;
}

SchemeResult run_upup(const Scenario& scenario, const HhoConfig& hho, const PenaltyConfig& penalty) {
  const Position3D centroid = centroid_placement(scenario);
  return solve(SchemeId::upup,
               JointProblem::noma(scenario, sort_and_pair(scenario, centroid), penalty), hho);
}

std::pair<double, double> boundary_placement(double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const double a = angle(rng);
  double x = radius * std::cos(a);
  double y = radius * std::sin(a);
  while (x * x + y * y > radius * radius) {
    x = std::nextafter(x, 0.0);
    y = std::nextafter(y, 0.0);
  }
  return {x, y};
}

SchemeResult run_baseline(SchemeId scheme, const Scenario& scenario, const HhoConfig& hho,
                          std::uint64_t seed, const PenaltyConfig& penalty) {
  switch (scheme) {
    case SchemeId::oma:
      return solve(scheme, JointProblem::oma(scenario, penalty), hho);
    case SchemeId::cnoma:
      return solve(scheme,
                   JointProblem::noma(scenario,
                                      grand_cluster(scenario, centroid_placement(scenario)), penalty),
                   hho);
    case SchemeId::fixedp: {
      const auto [x, y] = boundary_placement(scenario.config.cell_radius_m, seed);
      // The UAV position is known, so pairing uses the gains it actually sees.
      auto problem = JointProblem::noma(scenario, sort_and_pair(scenario, scenario.uav_at(x, y)),
                                        penalty)
                         .with_fixed_uav(x, y);
      return solve(scheme, problem, hho);
    }
    case SchemeId::rclustering:
      return solve(scheme, JointProblem::noma(scenario, random_pairing(scenario, seed), penalty),
                   hho);
    case SchemeId::upup:
      break;
  }
  throw std::invalid_argument("run_baseline: upup is not a baseline");
}

SchemeResult run_scheme(SchemeId scheme, const Scenario& scenario, const HhoConfig& hho,
                        std::uint64_t seed, const PenaltyConfig& penalty) {
  if (scheme == SchemeId::upup) return run_upup(scenario, hho, penalty);
  return run_baseline(scheme, scenario, hho, seed, penalty);
}

namespace {

ExperimentSpec apply_sweep_value(const ExperimentSpec& spec, double value) {
  ExperimentSpec s = spec;
  switch (spec.sweep) {
    case SweepVariable::pmax:
      s.system.max_total_power_w = value * 1e-3;
      break;
    case SweepVariable::fov:
      s.vlc.fov_deg = value;
      break;
    case SweepVariable::radius:
      s.system.cell_radius_m = value;
      break;
    case SweepVariable::num_users:
      s.num_users = static_cast<std::size_t>(value);
      break;
    case SweepVariable::none:
      break;
  }
  return s;
}

}  // namespace

double deployment_side(const ExperimentSpec& spec, double sweep_value) {
  AreaPolicy policy = spec.area_policy;
  if (policy == AreaPolicy::automatic) {
    policy = spec.sweep == SweepVariable::radius ? AreaPolicy::scale_with_radius
             : spec.sweep == SweepVariable::fov  ? AreaPolicy::fit_coverage
                                                 : AreaPolicy::fixed;
  }
  const ExperimentSpec point = apply_sweep_value(spec, sweep_value);
  switch (policy) {
    case AreaPolicy::scale_with_radius:
      return spec.area_side_m * point.system.cell_radius_m / spec.system.cell_radius_m;
    case AreaPolicy::fit_coverage:
      return std::min(spec.area_side_m,
                      std::sqrt(2.0) * coverage_radius(point.vlc, spec.uav_altitude_m));
    case AreaPolicy::fixed:
    case AreaPolicy::automatic:
      break;
  }
  return spec.area_side_m;
}

Scenario scenario_for(const ExperimentSpec& spec, double sweep_value, std::size_t realization) {
  const ExperimentSpec point = apply_sweep_value(spec, sweep_value);
  const RealizationSeeds seeds = derive_seeds(spec.master_seed, realization);
  return generate_scenario(point.num_users, deployment_side(spec, sweep_value),
                           spec.uav_altitude_m, seeds.scenario, point.system, point.vlc);
}

std::vector<SchemeResult> run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<double> values = spec.effective_values();

  struct Task {
    std::size_t value_index;
    std::size_t realization;
    std::size_t scheme_index;
  };
  std::vector<Task> tasks;
  for (std::size_t v = 0; v < values.size(); ++v)
    for (std::size_t r = 0; r < spec.num_realizations; ++r)
      for (std::size_t s = 0; s < spec.schemes.size(); ++s) tasks.push_back({v, r, s});

  std::vector<SchemeResult> rows(tasks.size());
  auto work = [&](const Task& task) {
    const double value = values[task.value_index];
    const RealizationSeeds seeds = derive_seeds(spec.master_seed, task.realization);
    const Scenario scenario = scenario_for(spec, value, task.realization);
    HhoConfig hho = spec.hho;
    hho.rng_seed = seeds.optimizer;
    const SchemeId scheme = spec.schemes[task.scheme_index];
    const std::uint64_t aux = scheme == SchemeId::fixedp ? seeds.placement : seeds.pairing;

    SchemeResult r;
    try {
      r = run_scheme(scheme, scenario, hho, aux, spec.penalty);
    } catch (const std::exception&) {
      r = SchemeResult{};
      r.scheme = scheme;
      r.feasible = false;
    }
    r.realization = task.realization;
    r.sweep_value = value;
    r.seed = seeds.realization;
    return r;
  };

  std::size_t threads = spec.threads == 0 ? std::thread::hardware_concurrency() : spec.threads;
  threads = std::max<std::size_t>(1, std::min(threads, tasks.size()));
  if (threads == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) rows[t] = work(tasks[t]);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < tasks.size(); t = next++) rows[t] = work(tasks[t]);
    });
  pool.clear();
  return rows;
}

bool audit_feasible(const SchemeResult& result, const Scenario& scenario,
                    const PenaltyConfig& penalty) {
  double p = 0.0;
  if (result.scheme == SchemeId::oma) {
    p = JointProblem::oma(scenario, penalty).evaluate(result.best).penalty;
  } else {
    p = uavnoma::penalty(result.best, result.clustering, scenario, penalty);
  }
  if (p != 0.0) return false;
  if (result.scheme != SchemeId::oma && result.clustering.cluster_size == 2) {
    for (std::size_t k = 0; k < result.clustering.num_clusters(); ++k)
      if (!(result.best.powers[2 * k] > result.best.powers[2 * k + 1])) return false;
  }
  return true;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_results_csv(std::ostream& out, const ExperimentSpec& spec,
                       const std::vector<SchemeResult>& rows) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.scheme) << ',' << to_string(spec.sweep) << ','
        << format_double(r.sweep_value) << ',' << r.realization << ',' << r.seed << ','
        << format_double(r.weighted_sum_rate_bps) << ','
        << format_double(r.weighted_sum_rate_bpshz) << ',' << (r.feasible ? "true" : "false")
        << ',' << format_double(r.best.uav_x) << ',' << format_double(r.best.uav_y) << ','
        << format_double(spec.record_wall_time ? r.wall_time_ms : 0.0) << '\n';
  }
}

void write_results_csv(const std::filesystem::path& path, const ExperimentSpec& spec,
                       const std::vector<SchemeResult>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_results_csv(out, spec, rows);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_convergence(std::ostream& out, const std::vector<double>& best_fitness) {
  out << "iteration,best_fitness\n";
  for (std::size_t t = 0; t < best_fitness.size(); ++t)
    out << (t + 1) << ',' << format_double(best_fitness[t]) << '\n';
}

void write_convergence(const OptimizationTrace& trace, const std::filesystem::path& path) {
  if (trace.best_fitness_per_iteration.empty())
    throw std::invalid_argument("write_convergence: empty trace");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_convergence(out, trace.best_fitness_per_iteration);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<SchemeSummary> summarize(const std::vector<SchemeResult>& rows) {
  std::map<std::pair<double, int>, SchemeSummary> acc;
  for (const auto& r : rows) {
    auto& s = acc[{r.sweep_value, static_cast<int>(r.scheme)}];
    s.scheme = r.scheme;
    s.sweep_value = r.sweep_value;
    ++s.runs;
    s.mean_bps += r.weighted_sum_rate_bps;
    s.mean_bpshz += r.weighted_sum_rate_bpshz;
    s.feasible_fraction += r.feasible ? 1.0 : 0.0;
  }
  std::vector<SchemeSummary> out;
  for (auto& [key, s] : acc) {
    const auto n = static_cast<double>(s.runs);
    s.mean_bps /= n;
    s.mean_bpshz /= n;
    s.feasible_fraction /= n;
    out.push_back(s);
  }
  return out;
}

std::vector<double> mean_trace(const std::vector<SchemeResult>& rows) {
  std::vector<double> mean;
  std::size_t count = 0;
  for (const auto& r : rows) {
    const auto& t = r.trace.best_fitness_per_iteration;
    if (t.empty()) continue;
    if (mean.empty()) mean.assign(t.size(), 0.0);
    if (t.size() != mean.size()) throw std::invalid_argument("mean_trace: traces differ in length");
    for (std::size_t i = 0; i < t.size(); ++i) mean[i] += t[i];
    ++count;
  }
  for (double& v : mean) v /= static_cast<double>(count);
  return mean;
}

}  // namespace uavnoma
