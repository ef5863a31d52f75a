#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavnoma/clustering.hpp"
#include "uavnoma/hho.hpp"

namespace uavnoma {

struct PenaltyConfig {
  double mu = 1e14;
  void validate() const;
};

// Decoded search point: UAV ground coordinates and one power per slot
// (cluster-major for NOMA, per user for OMA).
struct SolutionVector {
  double uav_x = 0.0;
  double uav_y = 0.0;
  std::vector<double> powers;
};

// Flat layout [x_u, y_u, p_0, ..., p_{N-1}].
std::vector<double> encode(const SolutionVector& solution);
// Throws std::invalid_argument if x.size() != num_powers + 2.
SolutionVector decode(std::span<const double> x, std::size_t num_powers);

/// Constraint values, each feasible iff <= 0:
///   total_power        sum p - P_max
///   optical_intensity  sum sqrt(p) - C
///   sic[k*(M-1)+i]     theta - hbar_{i+1} (p_i - sum_{j>i} p_j)   (NOMA only)
///   qos[slot]          R_req - R_slot
///   disc               x_u^2 + y_u^2 - R^2
struct FeasibilityReport {
  double total_power = 0.0;
  double optical_intensity = 0.0;
  std::vector<double> sic;
  std::vector<double> qos;
  double disc = 0.0;
  bool overall_feasible = false;

  std::size_t constraint_count() const { return 3 + sic.size() + qos.size(); }
};

// -mu * sum of squared positive violations.
double penalty_value(const FeasibilityReport& report, const PenaltyConfig& config);

enum class AccessMode { noma, oma };

/// One instance of the joint placement / power problem as seen by the
/// optimizer. NOMA instances keep the decoding order of the clustering they
/// were built with, but recompute every channel gain at the candidate UAV
/// position. A fixed-UAV instance drops the two placement coordinates from
/// the search vector.
class JointProblem {
 public:
  static JointProblem noma(const Scenario& scenario, Clustering clustering,
                           PenaltyConfig penalty = {});
  static JointProblem oma(const Scenario& scenario, PenaltyConfig penalty = {});

  JointProblem with_fixed_uav(double x, double y) const;

  AccessMode mode() const { return mode_; }
  const Scenario& scenario() const { return scenario_; }
  const Clustering& clustering() const { return clustering_; }
  bool uav_fixed() const { return fixed_uav_.has_value(); }
  std::size_t num_powers() const { return scenario_.num_users(); }
  std::size_t dimension() const { return num_powers() + (uav_fixed() ? 0 : 2); }

  // Box: UAV in [-R, R]^2 (unless fixed), every power in [0, P_max].
  SearchSpace search_space() const;
  SolutionVector decode(std::span<const double> x) const;

  struct Evaluation {
    std::vector<double> rates;  // bits/s/Hz per slot
    double objective = 0.0;     // weighted sum-rate, bits/s/Hz
    double objective_bps = 0.0;
    FeasibilityReport report;
    double penalty = 0.0;
    double fitness() const { return objective + penalty; }
  };

  Evaluation evaluate(const SolutionVector& solution) const;

  // Pulls a solution back inside the budget constraints: powers are scaled
  // down uniformly until both the total-power and the optical-intensity
  // budgets hold, and the UAV is moved radially onto the disc. SIC and QoS
  // constraints are left alone, so the result is not necessarily feasible.
  SolutionVector restore_budgets(const SolutionVector& solution) const;
  double fitness(std::span<const double> x) const { return evaluate(decode(x)).fitness(); }

 private:
  JointProblem(Scenario scenario, AccessMode mode, Clustering clustering,
               PenaltyConfig penalty);

  Scenario scenario_;
  AccessMode mode_;
  Clustering clustering_;
  PenaltyConfig penalty_;
  std::optional<std::pair<double, double>> fixed_uav_;
};

// Free-function forms for the NOMA joint problem.
FeasibilityReport feasibility_report(const SolutionVector& solution, const Clustering& clustering,
                                     const Scenario& scenario);
double penalty(const SolutionVector& solution, const Clustering& clustering,
               const Scenario& scenario, const PenaltyConfig& config);
double fitness(const SolutionVector& solution, const Clustering& clustering,
               const Scenario& scenario, const PenaltyConfig& config);
SearchSpace build_search_space(const Scenario& scenario, const Clustering& clustering);

}  // namespace uavnoma
