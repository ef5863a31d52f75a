// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Sweeps average 100 realizations of the default setup;
// `acceptance <n>` uses n instead (at least 20).

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "uavnoma/experiment.hpp"

using namespace uavnoma;
namespace fs = std::filesystem;

namespace {

std::size_t realizations = 100;
constexpr double kPiRef = 3.14159265358979323846;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// mean bps per (scheme, value)
using Means = std::map<SchemeId, std::map<double, double>>;

Means means_of(const std::vector<SchemeResult>& rows) {
  Means m;
  for (const auto& s : summarize(rows)) m[s.scheme][s.sweep_value] = s.mean_bps;
  return m;
}

// ---------------------------------------------------------------------------
// Independent feasibility oracle. Written from the model definitions only;
// shares no code with the library beyond the data types.

double oracle_gain(const Scenario& s, double ux, double uy, const Position3D& user) {
  const double h = s.uav_altitude;
  const double d2 = (ux - user.x) * (ux - user.x) + (uy - user.y) * (uy - user.y) + h * h;
  const double c = h / std::sqrt(d2);
  const double fov = s.vlc.fov_deg * kPiRef / 180.0;
  if (c < std::cos(fov)) return 0.0;
  const double nu = -std::log(2.0) / std::log(std::cos(s.vlc.semiangle_half_power_deg * kPiRef / 180.0));
  const double q = s.vlc.refractive_index;
  const double g = q * q / (std::sin(fov) * std::sin(fov));
  return s.vlc.detection_area_m2 / d2 * (nu + 1.0) / (2.0 * kPiRef) * std::pow(c, nu) *
         s.vlc.optical_filter_gain * g * c;
}

double oracle_penalty(const SchemeResult& r, const Scenario& s, double mu) {
  const SystemConfig& cfg = s.config;
  const auto& p = r.best.powers;
  double sum_sq = 0.0;
  auto hinge = [&](double v) {
    if (v > 0.0) sum_sq += v * v;
  };
  double total = 0.0, roots = 0.0;
  for (double v : p) total += v, roots += std::sqrt(v);
  hinge(total - cfg.max_total_power_w);
  hinge(roots - std::min(cfg.dc_offset, cfg.peak_intensity - cfg.dc_offset) / cfg.pam_coefficient);
  hinge(r.best.uav_x * r.best.uav_x + r.best.uav_y * r.best.uav_y -
        cfg.cell_radius_m * cfg.cell_radius_m);

  const double n0 = cfg.noise_power_w;
  if (r.scheme == SchemeId::oma) {
    for (std::size_t u = 0; u < p.size(); ++u) {
      const double h = oracle_gain(s, r.best.uav_x, r.best.uav_y, s.users[u]);
      hinge(cfg.qos_min_rate - std::log2(1.0 + h * p[u] / n0));
    }
    return -mu * sum_sq;
  }
  const std::size_t m = r.clustering.cluster_size;
  for (std::size_t k = 0; k < r.clustering.num_clusters(); ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto& user = s.users[r.clustering.members[k * m + i]];
      const double h = oracle_gain(s, r.best.uav_x, r.best.uav_y, user);
      double stronger = 0.0;
      for (std::size_t j = i + 1; j < m; ++j) stronger += p[k * m + j];
      hinge(cfg.qos_min_rate - std::log2(1.0 + h * p[k * m + i] / (n0 + h * stronger)));
      if (i + 1 < m) {
        const auto& next = s.users[r.clustering.members[k * m + i + 1]];
        const double hbar = oracle_gain(s, r.best.uav_x, r.best.uav_y, next) / n0;
        hinge(cfg.min_sic_gap - hbar * (p[k * m + i] - stronger));
      }
    }
  }
  return -mu * sum_sq;
}

struct AuditTally {
  std::size_t flagged = 0;
  std::size_t bad = 0;
};

void audit(const ExperimentSpec& spec, const std::vector<SchemeResult>& rows, AuditTally& tally) {
  for (const auto& r : rows) {
    if (!r.feasible) continue;
    ++tally.flagged;
    const Scenario s = scenario_for(spec, r.sweep_value, r.realization);
    bool ok = oracle_penalty(r, s, spec.penalty.mu) == 0.0;
    if (r.scheme != SchemeId::oma && r.clustering.cluster_size == 2)
      for (std::size_t k = 0; k < r.clustering.num_clusters(); ++k)
        ok = ok && r.best.powers[2 * k] > r.best.powers[2 * k + 1];
    if (!ok) ++tally.bad;
  }
}

// ---------------------------------------------------------------------------

ExperimentSpec sweep_spec(SweepVariable v, std::vector<double> values) {
  ExperimentSpec spec;
  spec.num_realizations = realizations;
  spec.sweep = v;
  spec.sweep_values = std::move(values);
  spec.threads = 0;
  return spec;
}

bool monotone(const std::map<double, double>& series, bool increasing, bool strict) {
  const double* prev = nullptr;
  for (const auto& [x, y] : series) {
    if (prev) {
      const double d = increasing ? y - *prev : *prev - y;
      if (strict ? !(d > 0.0) : !(d >= 0.0)) return false;
    }
    prev = &y;
  }
  return true;
}

std::string series_text(const std::map<double, double>& series) {
  std::ostringstream o;
  o.precision(4);
  for (const auto& [x, y] : series) o << x << ":" << y << " ";
  return o.str();
}

std::string upup_best_everywhere(const Means& m, bool& ok) {
  ok = true;
  std::string where;
  for (const auto& [x, up] : m.at(SchemeId::upup)) {
    for (const auto& [scheme, series] : m) {
      if (scheme == SchemeId::upup) continue;
      if (!(up > series.at(x))) {
        ok = false;
        where += std::string(to_string(scheme)) + ">=upup@" + fmt("%g", x) + " ";
      }
    }
  }
  return where.empty() ? "upup has the highest mean at every point" : where;
}

void criterion_convergence(AuditTally& tally) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentSpec spec = sweep_spec(SweepVariable::num_users, {4, 8, 12, 16, 20});
  spec.schemes = {SchemeId::upup};
  const auto rows = run_sweep(spec);
  const double elapsed = seconds_since(start);
  audit(spec, rows, tally);

  bool every_trace_monotone = true;
  for (const auto& r : rows) {
    const auto& t = r.trace.best_fitness_per_iteration;
    for (std::size_t i = 1; i < t.size(); ++i) every_trace_monotone &= t[i] >= t[i - 1];
  }
  bool plateau = true;
  std::string detail;
  std::map<double, double> final_bps;
  for (double n : spec.sweep_values) {
    std::vector<SchemeResult> subset;
    for (const auto& r : rows)
      if (r.sweep_value == n) subset.push_back(r);
    const auto mean = mean_trace(subset);
    const double at300 = mean[mean.size() - 51], at350 = mean.back();
    const double rel = (at350 - at300) / std::abs(at300);
    plateau &= rel < 0.01;
    detail += "N=" + fmt("%g", n) + " rel " + fmt("%.2e", rel) + "; ";
    double s = 0.0;
    for (const auto& r : subset) s += r.weighted_sum_rate_bps;
    final_bps[n] = s / static_cast<double>(subset.size());
  }
  report(1, "convergence plateau", every_trace_monotone && plateau && elapsed < 600.0,
         detail + (every_trace_monotone ? "all traces monotone" : "NON-MONOTONE trace") +
             fmt(", %.1f s", elapsed));

  const bool decreasing = monotone(final_bps, false, true);
  const double gap_small = final_bps[4] - final_bps[8];
  const double gap_large = final_bps[16] - final_bps[20];
  const bool diminishing = std::abs(gap_large) < std::abs(gap_small) && gap_large > 0 && gap_small > 0;
  report(2, "weighted sum-rate decreases with N", decreasing && diminishing,
         "mean bps " + series_text(final_bps));
}

void criterion_pmax(AuditTally& tally) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentSpec spec = sweep_spec(SweepVariable::pmax, {20, 40, 60, 80, 100});
  const auto rows = run_sweep(spec);
  audit(spec, rows, tally);
  const Means m = means_of(rows);

  std::string detail;
  bool all_monotone = true;
  for (const auto& [scheme, series] : m) {
    if (!monotone(series, true, false)) {
      all_monotone = false;
      detail += std::string(to_string(scheme)) + " not non-decreasing (" + series_text(series) + "); ";
    }
  }
  bool ordered = true;
  for (const auto& [x, up] : m.at(SchemeId::upup)) {
    const double rc = m.at(SchemeId::rclustering).at(x), om = m.at(SchemeId::oma).at(x),
                 cn = m.at(SchemeId::cnoma).at(x), fx = m.at(SchemeId::fixedp).at(x);
    const bool here = up > rc && rc > om && om > cn && up > fx;
    if (!here)
      detail += "order broken at " + fmt("%g mW", x) + " (upup " + fmt("%.4g", up) + ", rclustering " +
                fmt("%.4g", rc) + ", oma " + fmt("%.4g", om) + ", cnoma " + fmt("%.4g", cn) +
                ", fixedp " + fmt("%.4g", fx) + "); ";
    ordered &= here;
  }
  // per (value, realization): does UPUP beat all four baselines?
  std::map<std::pair<double, std::size_t>, std::map<SchemeId, double>> by_run;
  for (const auto& r : rows) by_run[{r.sweep_value, r.realization}][r.scheme] = r.weighted_sum_rate_bps;
  std::size_t wins = 0;
  for (const auto& [key, v] : by_run) {
    bool win = true;
    for (const auto& [scheme, bps] : v)
      if (scheme != SchemeId::upup) win &= v.at(SchemeId::upup) > bps;
    wins += win;
  }
  const double win_rate = static_cast<double>(wins) / static_cast<double>(by_run.size());
  detail += fmt("upup beats all baselines in %.0f%% of runs", 100.0 * win_rate);
  report(3, "P_max sweep trends and ordering", all_monotone && ordered && win_rate >= 0.8,
         detail + fmt(", %.1f s", seconds_since(start)));
}

void criterion_fov(AuditTally& tally) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentSpec spec = sweep_spec(SweepVariable::fov, {40, 45, 50, 55, 60, 65});
  const auto rows = run_sweep(spec);
  audit(spec, rows, tally);
  const Means m = means_of(rows);
  const bool decreasing = monotone(m.at(SchemeId::upup), false, true);
  bool best = false;
  const std::string where = upup_best_everywhere(m, best);
  report(4, "FoV sweep", decreasing && best,
         "upup " + series_text(m.at(SchemeId::upup)) + "; " + where +
             fmt(", %.1f s", seconds_since(start)));
}

void criterion_radius(AuditTally& tally) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentSpec spec = sweep_spec(SweepVariable::radius, {4, 6, 8, 10, 12, 14});
  const auto rows = run_sweep(spec);
  audit(spec, rows, tally);
  const Means m = means_of(rows);
  std::string detail;
  bool all_monotone = true;
  for (const auto& [scheme, series] : m)
    if (!monotone(series, false, false)) {
      all_monotone = false;
      detail += std::string(to_string(scheme)) + " not non-increasing (" + series_text(series) + "); ";
    }
  bool best = false;
  detail += upup_best_everywhere(m, best);
  report(5, "radius sweep", all_monotone && best, detail + fmt(", %.1f s", seconds_since(start)));
}

void criterion_grid_oracle() {
  double worst = 1e300;
  std::string detail;
  bool ok = true;
  for (std::uint64_t inst = 0; inst < 10; ++inst) {
    const Scenario s = generate_scenario(2, 10.0, 3.0, 1000 + inst);
    const Position3D c = centroid_placement(s);
    const auto problem = JointProblem::noma(s, sort_and_pair(s, c)).with_fixed_uav(c.x, c.y);
    HhoConfig hho;
    hho.rng_seed = 77 + inst;
    const auto tr = optimize(problem.search_space(), hho,
                             [&](std::span<const double> x) { return problem.fitness(x); });

    const double pmax = s.config.max_total_power_w;
    double grid_best = -1e300;
    std::vector<double> x(2);
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        x[0] = pmax * i / 199.0;
        x[1] = pmax * j / 199.0;
        grid_best = std::max(grid_best, problem.fitness(x));
      }
    // Both optima are positive rates when the grid holds a feasible point.
    const double ratio = grid_best > 0.0 ? tr.best_fitness / grid_best : 0.0;
    worst = std::min(worst, ratio);
    ok &= grid_best > 0.0 && tr.best_fitness >= 0.95 * grid_best;
  }
  report(6, "HHO versus 200x200 grid on N=2", ok, fmt("worst HHO/grid ratio %.4f over 10 instances", worst));
}

void criterion_closed_forms() {
  int bad = 0;
  std::string which;
  auto check = [&](const char* name, double got, double want) {
    if (!(std::abs(got - want) <= 1e-10 * std::abs(want)) && !(got == 0.0 && want == 0.0)) {
      ++bad;
      which += std::string(name) + " ";
    }
  };
  VlcParams p60;
  p60.fov_deg = 60.0;
  check("lambertian_order", lambertian_order(60.0).nu, 1.0);
  check("lambertian_order", lambertian_order(45.0).nu, 2.0);
  check("radiant_intensity", radiant_intensity({1.0}, kPiRef / 3.0), 1.0 / (2.0 * kPiRef));
  check("radiant_intensity", radiant_intensity({2.0}, kPiRef / 4.0), 3.0 / (4.0 * kPiRef));
  check("concentrator_gain", concentrator_gain(p60, kPiRef / 6.0), 3.0);
  check("concentrator_gain", concentrator_gain(p60, 75.0 * kPiRef / 180.0), 0.0);
  check("channel_gain", channel_gain(p60, {1.0}, {0, 0, 3}, {0, 0, 0}), 1e-4 / 9.0 / kPiRef * 3.0);
  check("channel_gain", channel_gain(p60, {1.0}, {0, 0, 6}, {0, 0, 0}), 1e-4 / 36.0 / kPiRef * 3.0);

  SystemConfig unit;
  unit.noise_power_w = 1.0;
  Clustering c2;
  c2.cluster_size = 2;
  c2.members = {0, 1};
  c2.gains = {1.0, 1.0};
  check("achievable_rate", achievable_rate(c2, {{3.0, 1.0}}, unit, 0, 0), std::log2(2.5));
  check("achievable_rate", achievable_rate(c2, {{3.0, 1.0}}, unit, 0, 1), 1.0);
  check("sic_margins", sic_margins(c2, {{3.0, 1.0}}, unit)[0], 1.0);
  Clustering c3 = c2;
  c3.cluster_size = 3;
  c3.members = {0, 1, 2};
  c3.gains = {1.0, 1.0, 1.0};
  unit.min_sic_gap = 0.5;
  const auto m3 = sic_margins(c3, {{4.0, 2.0, 1.0}}, unit);
  check("sic_margins", m3[0], 0.5);
  check("sic_margins", m3[1], 0.5);
  check("user_weight", user_weight(1, 3), 1.0 / 3.0);
  check("user_weight", user_weight(10, 2), 5.0);

  const SystemConfig cfg;
  const std::vector<double> p{4.0, 9.0};
  const auto slack = optical_intensity_slack(p, cfg);
  const double delta = 3.0 * std::sqrt(5.0) / 5.0;
  check("optical_intensity_slack", slack.dc, 20.0 / delta - 5.0);
  check("optical_intensity_slack", slack.peak, 10.0 / delta - 5.0);

  Scenario s;
  s.users = {{2.0, 0.0, 0.0}, {0.5, 0.0, 0.0}};
  const auto pair = sort_and_pair(s, {0, 0, 3});
  check("penalty", penalty({0.0, 0.0, {0.025, 0.005}}, pair, s, {}), -1e10);
  check("penalty", penalty({0.0, 0.0, {0.01, 0.001}}, pair, s, {}), 0.0);

  report(7, "closed-form values to 1e-10", bad == 0,
         bad == 0 ? "19 hand-evaluated values match" : std::to_string(bad) + " mismatches: " + which);
}

void criterion_determinism() {
  ExperimentSpec spec;
  spec.num_realizations = 2;
  spec.sweep = SweepVariable::pmax;
  spec.sweep_values = {20, 60};
  spec.master_seed = 2024;
  const auto dir = fs::temp_directory_path() / "uavnoma_acceptance";
  fs::create_directories(dir);
  write_results_csv(dir / "a.csv", spec, run_sweep(spec));
  spec.threads = 0;
  write_results_csv(dir / "b.csv", spec, run_sweep(spec));
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
  };
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  fs::remove_all(dir);
  report(9, "byte-identical reruns", !a.empty() && a == b, fmt("%.0f bytes compared", double(a.size())));
}

void criterion_budget() {
  const Scenario s = generate_scenario(20, 10.0, 3.0, derive_seeds(1, 0).scenario);
  HhoConfig hho;
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_upup(s, hho);
  const double elapsed = seconds_since(start);
  const std::size_t pop = r.trace.population_evaluations();
  const bool within = pop + 30 >= 30 * 350 && pop <= 30 * 350 + 30;
  const bool theta = r.trace.evaluations <= 3 * 30 * 350;
  report(10, "evaluation budget and runtime", within && theta && elapsed < 60.0,
         std::to_string(pop) + " population + " + std::to_string(r.trace.dive_evaluations) +
             " dive evaluations" + fmt(", %.2f s", elapsed));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) realizations = std::max<std::size_t>(20, std::stoul(argv[1]));
  std::printf("%zu realizations per sweep point\n", realizations);
  AuditTally tally;
  criterion_convergence(tally);
  criterion_pmax(tally);
  criterion_fov(tally);
  criterion_radius(tally);
  criterion_grid_oracle();
  criterion_closed_forms();
  report(8, "feasibility audit", tally.flagged > 0 && tally.bad == 0,
         std::to_string(tally.flagged) + " feasible rows re-checked, " + std::to_string(tally.bad) +
             " failed");
  criterion_determinism();
  criterion_budget();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
