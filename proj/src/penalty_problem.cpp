#include "uavnoma/penalty_problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavnoma {

void PenaltyConfig::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("penalty factor mu must be positive");
}

std::vector<double> encode(const SolutionVector& solution) {
  std::vector<double> x;
  x.reserve(solution.powers.size() + 2);
  x.push_back(solution.uav_x);
  x.push_back(solution.uav_y);
  x.insert(x.end(), solution.powers.begin(), solution.powers.end());
  return x;
}

SolutionVector decode(std::span<const double> x, std::size_t num_powers) {
  if (x.size() != num_powers + 2)
    throw std::invalid_argument("solution vector length must be N + 2");
  return {x[0], x[1], std::vector<double>(x.begin() + 2, x.end())};
}

double penalty_value(const FeasibilityReport& report, const PenaltyConfig& config) {
  double sq = 0.0;
  auto add = [&sq](double v) {
    if (v > 0.0) sq += v * v;
  };
  add(report.total_power);
  add(report.optical_intensity);
  for (double v : report.sic) add(v);
  for (double v : report.qos) add(v);
  add(report.disc);
  return -config.mu * sq;
}

JointProblem::JointProblem(Scenario scenario, AccessMode mode, Clustering clustering,
                           PenaltyConfig penalty)
    : scenario_(std::move(scenario)),
      mode_(mode),
      clustering_(std::move(clustering)),
      penalty_(penalty) {
  scenario_.validate();
  penalty_.validate();
}

JointProblem JointProblem::noma(const Scenario& scenario, Clustering clustering,
                                PenaltyConfig penalty) {
  clustering.validate(false);
  if (clustering.members.size() != scenario.num_users())
    throw std::invalid_argument("clustering does not match the scenario's user count");
  return JointProblem(scenario, AccessMode::noma, std::move(clustering), penalty);
}

JointProblem JointProblem::oma(const Scenario& scenario, PenaltyConfig penalty) {
  return JointProblem(scenario, AccessMode::oma, Clustering{}, penalty);
}

JointProblem JointProblem::with_fixed_uav(double x, double y) const {
  JointProblem out = *this;
  out.fixed_uav_ = std::make_pair(x, y);
  return out;
}

SearchSpace JointProblem::search_space() const {
  SearchSpace space;
  const double r = scenario_.config.cell_radius_m;
  if (!uav_fixed()) {
    space.lower = {-r, -r};
    space.upper = {r, r};
  }
  space.lower.resize(dimension(), 0.0);
  space.upper.resize(dimension(), scenario_.config.max_total_power_w);
  return space;
}

SolutionVector JointProblem::decode(std::span<const double> x) const {
  if (x.size() != dimension()) throw std::invalid_argument("search vector has the wrong dimension");
  if (!uav_fixed()) return uavnoma::decode(x, num_powers());
  return {fixed_uav_->first, fixed_uav_->second, std::vector<double>(x.begin(), x.end())};
}

JointProblem::Evaluation JointProblem::evaluate(const SolutionVector& solution) const {
  const SystemConfig& cfg = scenario_.config;
  const std::size_t n = num_powers();
  if (solution.powers.size() != n) throw std::invalid_argument("power vector has the wrong size");

  Evaluation ev;
  const auto gains = user_gains(scenario_, scenario_.uav_at(solution.uav_x, solution.uav_y));
  ev.rates.resize(n);

  double total = 0.0;
  for (double p : solution.powers) total += p;
  const IntensitySlack slack = optical_intensity_slack(solution.powers, cfg);

  FeasibilityReport& rep = ev.report;
  rep.total_power = total - cfg.max_total_power_w;
  rep.optical_intensity = -slack.min();
  rep.disc = solution.uav_x * solution.uav_x + solution.uav_y * solution.uav_y -
             cfg.cell_radius_m * cfg.cell_radius_m;
  rep.qos.resize(n);

  if (mode_ == AccessMode::noma) {
    const Clustering moved = clustering_.with_gains(gains);
    const PowerAllocation alloc{solution.powers};
    const std::size_t k_count = moved.num_clusters();
    for (std::size_t k = 0; k < k_count; ++k)
      for (std::size_t i = 0; i < moved.cluster_size; ++i) {
        const std::size_t slot = k * moved.cluster_size + i;
        ev.rates[slot] = achievable_rate(moved, alloc, cfg, k, i);
        ev.objective += user_weight(k_count, i + 1) * ev.rates[slot];
      }
    ev.objective_bps = cfg.bandwidth_hz / static_cast<double>(k_count) * ev.objective;
    for (double m : sic_margins(moved, alloc, cfg)) rep.sic.push_back(-m);
  } else {
    double bps = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      ev.rates[u] = std::log2(1.0 + gains[u] * solution.powers[u] / cfg.noise_power_w);
      bps += oma_rate(gains[u], solution.powers[u], cfg, n);
    }
    ev.objective_bps = bps;
    ev.objective = bps / cfg.bandwidth_hz;
  }

  for (std::size_t s = 0; s < n; ++s) rep.qos[s] = cfg.qos_min_rate - ev.rates[s];

  bool feasible = rep.total_power <= 0.0 && rep.optical_intensity <= 0.0 && rep.disc <= 0.0;
  for (double v : rep.sic) feasible = feasible && v <= 0.0;
  for (double v : rep.qos) feasible = feasible && v <= 0.0;
  rep.overall_feasible = feasible;

  ev.penalty = penalty_value(rep, penalty_);
  return ev;
}

SolutionVector JointProblem::restore_budgets(const SolutionVector& solution) const {
  const SystemConfig& cfg = scenario_.config;
  SolutionVector out = solution;

  double total = 0.0, root_sum = 0.0;
  for (double p : out.powers) {
    total += p;
    root_sum += std::sqrt(p);
  }
  double scale = 1.0;
  if (total > cfg.max_total_power_w) scale = std::min(scale, cfg.max_total_power_w / total);
  const double budget = cfg.intensity_budget();
  if (root_sum > budget) scale = std::min(scale, (budget / root_sum) * (budget / root_sum));
  if (scale < 1.0) {
    for (double& p : out.powers) p *= scale;
    // Rounding can leave the sums a few ulps over; shave until they hold.
    for (int guard = 0; guard < 64; ++guard) {
      total = root_sum = 0.0;
      for (double p : out.powers) {
        total += p;
        root_sum += std::sqrt(p);
      }
      if (total <= cfg.max_total_power_w && root_sum <= budget) break;
      for (double& p : out.powers) p = std::nextafter(p, 0.0);
    }
  }

  if (!uav_fixed()) {
    const double r = cfg.cell_radius_m;
    const double d2 = out.uav_x * out.uav_x + out.uav_y * out.uav_y;
    if (d2 > r * r) {
      const double f = r / std::sqrt(d2);
      out.uav_x *= f;
      out.uav_y *= f;
      while (out.uav_x * out.uav_x + out.uav_y * out.uav_y > r * r) {
        out.uav_x = std::nextafter(out.uav_x, 0.0);
        out.uav_y = std::nextafter(out.uav_y, 0.0);
      }
    }
  }
  return out;
}

FeasibilityReport feasibility_report(const SolutionVector& solution, const Clustering& clustering,
                                     const Scenario& scenario) {
  return JointProblem::noma(scenario, clustering).evaluate(solution).report;
}

double penalty(const SolutionVector& solution, const Clustering& clustering,
               const Scenario& scenario, const PenaltyConfig& config) {
  return JointProblem::noma(scenario, clustering, config).evaluate(solution).penalty;
}

double fitness(const SolutionVector& solution, const Clustering& clustering,
               const Scenario& scenario, const PenaltyConfig& config) {
  return JointProblem::noma(scenario, clustering, config).evaluate(solution).fitness();
}

SearchSpace build_search_space(const Scenario& scenario, const Clustering& clustering) {
  return JointProblem::noma(scenario, clustering).search_space();
}

}  // namespace uavnoma
