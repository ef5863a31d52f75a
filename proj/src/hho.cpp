#include "uavnoma/hho.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace uavnoma {

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t d = 0; d < x.size(); ++d)
    if (x[d] < lower[d] || x[d] > upper[d]) return false;
  return true;
}

void SearchSpace::clamp(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lower[d], upper[d]);
}

void SearchSpace::validate() const {
  if (lower.empty()) throw std::invalid_argument("search space must have dimension >= 1");
  if (lower.size() != upper.size())
    throw std::invalid_argument("search space bound vectors differ in length");
  for (std::size_t d = 0; d < lower.size(); ++d)
    if (!(std::isfinite(lower[d]) && std::isfinite(upper[d]) && lower[d] < upper[d]))
      throw std::invalid_argument("search space needs finite lower < upper in every dimension");
}

void HhoConfig::validate() const {
  if (population < 2) throw std::invalid_argument("HHO population must be >= 2");
  if (max_iterations < 1) throw std::invalid_argument("HHO needs at least one iteration");
  if (!(levy_beta > 0.0 && levy_beta <= 2.0))
    throw std::invalid_argument("Levy index must lie in (0, 2]");
}

namespace {

using Point = std::vector<double>;

class Hawks {
 public:
  Hawks(const SearchSpace& space, const HhoConfig& config, const FitnessFn& fitness,
        OptimizationTrace& trace)
      : space_(space),
        config_(config),
        fitness_(fitness),
        trace_(trace),
        dim_(space.dimension()),
        rng_(config.rng_seed),
        levy_sigma_(levy_sigma(config.levy_beta)) {}

  void run() {
    const std::size_t s = config_.population;
    const std::size_t t_max = config_.max_iterations;

    pos_.assign(s, Point(dim_));
    fit_.assign(s, 0.0);
    for (auto& hawk : pos_)
      for (std::size_t d = 0; d < dim_; ++d)
        hawk[d] = space_.lower[d] + unit() * (space_.upper[d] - space_.lower[d]);

    trace_.best_fitness_per_iteration.reserve(t_max);
    for (std::size_t t = 0; t < t_max; ++t) {
      for (std::size_t i = 0; i < s; ++i) {
        space_.clamp(pos_[i]);
        fit_[i] = evaluate(pos_[i], false);
      }
      recompute_sum();

      const double e1 = 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(t_max));
      for (std::size_t i = 0; i < s; ++i) move(i, e1);

      trace_.best_fitness_per_iteration.push_back(trace_.best_fitness);
    }
  }

 private:
  double unit() { return unit_(rng_); }

  static double levy_sigma(double beta) {
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
  }

  double levy_step() {
    const double u = normal_(rng_) * levy_sigma_;
    const double v = normal_(rng_);
    return 0.01 * u / std::pow(std::abs(v), 1.0 / config_.levy_beta);
  }

  double evaluate(const Point& x, bool dive) {
    const double f = fitness_(x);
    ++trace_.evaluations;
    if (dive) ++trace_.dive_evaluations;
    if (!have_best_ || f > trace_.best_fitness) {
      have_best_ = true;
      trace_.best_fitness = f;
      trace_.best_point = x;
    }
    return f;
  }

  void recompute_sum() {
    sum_.assign(dim_, 0.0);
    for (const auto& hawk : pos_)
      for (std::size_t d = 0; d < dim_; ++d) sum_[d] += hawk[d];
  }

  double mean(std::size_t d) const { return sum_[d] / static_cast<double>(pos_.size()); }

  void replace(std::size_t i, const Point& next) {
    for (std::size_t d = 0; d < dim_; ++d) sum_[d] += next[d] - pos_[i][d];
    pos_[i] = next;
  }

  void move(std::size_t i, double e1) {
    // Snapshot: a dive evaluation may replace the best point mid-move.
    prey_ = trace_.best_point;
    const Point& prey = prey_;
    const Point& x = pos_[i];
    const double energy = e1 * (2.0 * unit() - 1.0);
    const double abs_e = std::abs(energy);
    Point next(dim_);

    if (abs_e >= 1.0) {
      const double q = unit();
      const auto pick = std::min(static_cast<std::size_t>(unit() * static_cast<double>(pos_.size())),
                                 pos_.size() - 1);
      if (q < 0.5) {
        const Point& other = pos_[pick];
        const double r1 = unit(), r2 = unit();
        for (std::size_t d = 0; d < dim_; ++d)
          next[d] = other[d] - r1 * std::abs(other[d] - 2.0 * r2 * x[d]);
      } else {
        const double r3 = unit(), r4 = unit();
        for (std::size_t d = 0; d < dim_; ++d)
          next[d] = (prey[d] - mean(d)) -
                    r3 * (space_.lower[d] + r4 * (space_.upper[d] - space_.lower[d]));
      }
      replace(i, next);
      return;
    }

    const double r = unit();
    if (r >= 0.5 && abs_e < 0.5) {
      for (std::size_t d = 0; d < dim_; ++d)
        next[d] = prey[d] - energy * std::abs(prey[d] - x[d]);
      replace(i, next);
      return;
    }

    const double jump = 2.0 * (1.0 - unit());
    if (r >= 0.5) {
      for (std::size_t d = 0; d < dim_; ++d)
        next[d] = (prey[d] - x[d]) - energy * std::abs(jump * prey[d] - x[d]);
      replace(i, next);
      return;
    }

    // Progressive rapid dives. Soft: relative to the hawk; hard: relative to
    // the population mean.
    const bool soft = abs_e >= 0.5;
    Point dive(dim_);
    for (std::size_t d = 0; d < dim_; ++d) {
      const double ref = soft ? x[d] : mean(d);
      dive[d] = prey[d] - energy * std::abs(jump * prey[d] - ref);
    }
    space_.clamp(dive);
    const double f_dive = evaluate(dive, true);
    if (f_dive > fit_[i]) {
      fit_[i] = f_dive;
      replace(i, dive);
      return;
    }

    // Z = Y + S .* LF, built from the unclamped Y.
    for (std::size_t d = 0; d < dim_; ++d) {
      const double ref = soft ? x[d] : mean(d);
      const double y = prey[d] - energy * std::abs(jump * prey[d] - ref);
      next[d] = y + unit() * levy_step();
    }
    space_.clamp(next);
    const double f_levy = evaluate(next, true);
    if (f_levy > fit_[i]) {
      fit_[i] = f_levy;
      replace(i, next);
    }
  }

  const SearchSpace& space_;
  const HhoConfig& config_;
  const FitnessFn& fitness_;
  OptimizationTrace& trace_;
  std::size_t dim_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
  double levy_sigma_;
  bool have_best_ = false;

  std::vector<Point> pos_;
  std::vector<double> fit_;
  std::vector<double> sum_;
  Point prey_;
};

}  // namespace

OptimizationTrace optimize(const SearchSpace& space, const HhoConfig& config,
                           const FitnessFn& fitness) {
  space.validate();
  config.validate();
  if (!fitness) throw std::invalid_argument("fitness function is empty");

  OptimizationTrace trace;
  Hawks hawks(space, config, fitness, trace);
  hawks.run();
  return trace;
}

}  // namespace uavnoma
