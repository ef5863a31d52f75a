#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uavnoma/clustering.hpp"
#include "uavnoma/hho.hpp"
#include "uavnoma/penalty_problem.hpp"

namespace uavnoma {

enum class SchemeId { upup, oma, cnoma, fixedp, rclustering };
enum class SweepVariable { none, pmax, fov, radius, num_users };

// How the side of the square user deployment area is chosen per sweep point.
//   fixed              area_side as configured
//   scale_with_radius  area_side * R / R_base (users fill a cell that grows with R)
//   fit_coverage       min(area_side, sqrt(2) * h * tan(FoV)): the square fits in
//                      the footprint of a LAP hovering over its center
//   automatic          scale_with_radius for radius sweeps, fit_coverage for FoV
//                      sweeps, fixed otherwise
enum class AreaPolicy { automatic, fixed, scale_with_radius, fit_coverage };

std::string_view to_string(SchemeId scheme);
std::string_view to_string(SweepVariable variable);
std::string_view to_string(AreaPolicy policy);
SchemeId parse_scheme(std::string_view name);
SweepVariable parse_sweep_variable(std::string_view name);
AreaPolicy parse_area_policy(std::string_view name);

const std::vector<SchemeId>& all_schemes();

struct ExperimentSpec {
  std::vector<SchemeId> schemes = all_schemes();
  std::size_t num_users = 20;
  std::size_t num_realizations = 100;
  SweepVariable sweep = SweepVariable::none;
  // Units: pmax in mW, fov in degrees, radius in m, num_users as a count.
  std::vector<double> sweep_values;

  SystemConfig system;
  VlcParams vlc;
  double uav_altitude_m = 3.0;
  double area_side_m = 10.0;
  AreaPolicy area_policy = AreaPolicy::automatic;

  HhoConfig hho;  // rng_seed is ignored; runs derive their own
  PenaltyConfig penalty;

  std::uint64_t master_seed = 1;
  std::size_t threads = 1;  // 0 = hardware concurrency
  bool record_wall_time = false;

  // The values actually swept: sweep_values, or a single base value when
  // there is no sweep.
  std::vector<double> effective_values() const;
  void validate() const;
};

// Users uniform in the side x side square centered at the origin, z = 0.
Scenario generate_scenario(std::size_t num_users, double area_side, double altitude,
                           std::uint64_t seed, const SystemConfig& config = {},
                           const VlcParams& vlc = {});

// Seeds derived from one realization seed. Every scheme and every sweep value
// uses the same ones, so comparisons are paired.
struct RealizationSeeds {
  std::uint64_t realization = 0;
  std::uint64_t scenario = 0;
  std::uint64_t optimizer = 0;
  std::uint64_t pairing = 0;
  std::uint64_t placement = 0;
};
RealizationSeeds derive_seeds(std::uint64_t master_seed, std::size_t realization);

struct SchemeResult {
  SchemeId scheme = SchemeId::upup;
  std::size_t realization = 0;
  double sweep_value = 0.0;
  std::uint64_t seed = 0;

  double weighted_sum_rate_bps = 0.0;
  double weighted_sum_rate_bpshz = 0.0;
  double penalty = 0.0;
  bool feasible = false;
  SolutionVector best;
  FeasibilityReport report;
  // Grouping used (empty for OMA) and whether the UAV was held fixed.
  Clustering clustering;
  bool uav_fixed = false;
  OptimizationTrace trace;
  double wall_time_ms = 0.0;
};

SchemeResult run_upup(const Scenario& scenario, const HhoConfig& hho,
                      const PenaltyConfig& penalty = {});

// OMA, cNOMA, fixedP or rClustering. `seed` drives the random pairing
// (rClustering) or the random boundary placement (fixedP).
SchemeResult run_baseline(SchemeId scheme, const Scenario& scenario, const HhoConfig& hho,
                          std::uint64_t seed, const PenaltyConfig& penalty = {});

SchemeResult run_scheme(SchemeId scheme, const Scenario& scenario, const HhoConfig& hho,
                        std::uint64_t seed, const PenaltyConfig& penalty = {});

// Uniform point on the circle of radius `radius`, nudged inward by at most a
// few ulps so that x^2 + y^2 <= radius^2 holds in floating point.
std::pair<double, double> boundary_placement(double radius, std::uint64_t seed);

// Side of the deployment square used at one sweep point.
double deployment_side(const ExperimentSpec& spec, double sweep_value);

// Rows ordered by (sweep value, realization, scheme) regardless of how the
// runs were scheduled.
std::vector<SchemeResult> run_sweep(const ExperimentSpec& spec);

// Recomputes the penalty from the reported solution without reusing the
// optimizer's bookkeeping. True iff the penalty is exactly zero and, for
// pairs, the weaker member got strictly more power in every cluster.
bool audit_feasible(const SchemeResult& result, const Scenario& scenario,
                    const PenaltyConfig& penalty);

// Scenario that produced the rows for (sweep value, realization).
Scenario scenario_for(const ExperimentSpec& spec, double sweep_value, std::size_t realization);

inline constexpr std::string_view kResultsHeader =
    "scheme,sweep_var,sweep_value,realization,seed,weighted_sum_rate_bps,"
    "weighted_sum_rate_bpshz,feasible,uav_x,uav_y,wall_time_ms";

void write_results_csv(std::ostream& out, const ExperimentSpec& spec,
                       const std::vector<SchemeResult>& rows);
void write_results_csv(const std::filesystem::path& path, const ExperimentSpec& spec,
                       const std::vector<SchemeResult>& rows);

// Two columns, iteration (1-based) and best_fitness. Throws
// std::runtime_error if the file cannot be written.
void write_convergence(const OptimizationTrace& trace, const std::filesystem::path& path);
void write_convergence(std::ostream& out, const std::vector<double>& best_fitness);

struct SchemeSummary {
  SchemeId scheme = SchemeId::upup;
  double sweep_value = 0.0;
  std::size_t runs = 0;
  double mean_bps = 0.0;
  double mean_bpshz = 0.0;
  double feasible_fraction = 0.0;
};
std::vector<SchemeSummary> summarize(const std::vector<SchemeResult>& rows);

// Element-wise mean of the best-so-far traces of `rows`.
std::vector<double> mean_trace(const std::vector<SchemeResult>& rows);

// Shortest round-trip decimal form used in every CSV.
std::string format_double(double value);

}  // namespace uavnoma
