#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace uavnoma {

// Axis-aligned box the hawks move in.
struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  void clamp(std::span<double> x) const;
  void validate() const;
};

struct HhoConfig {
  std::size_t population = 30;
  std::size_t max_iterations = 350;
  std::uint64_t rng_seed = 1;
  double levy_beta = 1.5;

  void validate() const;
};

struct OptimizationTrace {
  // Best fitness seen up to and including iteration t.
  std::vector<double> best_fitness_per_iteration;
  std::vector<double> best_point;
  double best_fitness = 0.0;
  // All fitness calls, and the subset spent on rapid-dive trial points.
  std::size_t evaluations = 0;
  std::size_t dive_evaluations = 0;

  std::size_t population_evaluations() const { return evaluations - dive_evaluations; }
};

// Fitness to maximize. Must be a pure function of its argument.
using FitnessFn = std::function<double(std::span<const double>)>;

/// Harris hawks optimization (maximizing).
///
/// The population starts uniformly in the box. Each iteration t evaluates
/// all S hawks, updates the prey (best so far) and then draws, per hawk, an
/// escaping energy E = 2 E0 (1 - t/T) with E0 ~ U(-1, 1):
///   |E| >= 1            exploration: perch relative to a random hawk, or
///                       relative to the prey and the population mean;
///   |E| >= 0.5, r >= .5 soft besiege;
///   |E| <  0.5, r >= .5 hard besiege;
///   |E| >= 0.5, r <  .5 soft besiege with progressive rapid dives;
///   |E| <  0.5, r <  .5 hard besiege with progressive rapid dives,
/// where r ~ U(0, 1) is the prey's escape chance and the dives try a greedy
/// step, then the same step plus a Levy flight, keeping whichever improves
/// on the hawk. Jump strength is J = 2 (1 - U(0, 1)). Every candidate is
/// clamped to the box before it is evaluated. Population evaluations are
/// therefore exactly S * T; dive trials are counted on top.
///
/// Throws std::invalid_argument on an invalid space or config, before any
/// evaluation. Randomness comes from one std::mt19937_64 seeded with
/// config.rng_seed, so a fixed seed gives a bit-identical trace.
OptimizationTrace optimize(const SearchSpace& space, const HhoConfig& config,
                           const FitnessFn& fitness);

}  // namespace uavnoma
