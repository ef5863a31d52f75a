#include "uavnoma/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace uavnoma {

namespace {

// Indices sorted by (gain, index).
std::vector<std::size_t> ascending_by_gain(const std::vector<double>& gains) {
  std::vector<std::size_t> idx(gains.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (gains[a] != gains[b]) return gains[a] < gains[b];
    return a < b;
  });
  return idx;
}

void require_even(const Scenario& scenario) {
  const std::size_t n = scenario.num_users();
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("pairing needs an even number of users (N >= 2)");
}

}  // namespace

void Scenario::validate() const {
  if (users.empty()) throw std::invalid_argument("scenario has no users");
  if (!(uav_altitude > 0.0)) throw std::invalid_argument("UAV altitude must be positive");
  for (const auto& u : users)
    if (!std::isfinite(u.x) || !std::isfinite(u.y) || u.z != 0.0)
      throw std::invalid_argument("user positions must be finite with z = 0");
  config.validate();
  vlc.validate();
}

void user_gains(const Scenario& scenario, const Position3D& uav, std::vector<double>& out) {
  const LambertianOrder order = lambertian_order(scenario.vlc.semiangle_half_power_deg);
  out.resize(scenario.users.size());
  for (std::size_t n = 0; n < scenario.users.size(); ++n)
    out[n] = channel_gain(scenario.vlc, order, uav, scenario.users[n]);
}

std::vector<double> user_gains(const Scenario& scenario, const Position3D& uav) {
  std::vector<double> out;
  user_gains(scenario, uav, out);
  return out;
}

Position3D centroid_placement(const Scenario& scenario) {
  if (scenario.users.empty()) throw std::invalid_argument("centroid of an empty user set");
  double sx = 0.0, sy = 0.0;
  for (const auto& u : scenario.users) {
    sx += u.x;
    sy += u.y;
  }
  const auto n = static_cast<double>(scenario.users.size());
  return {sx / n, sy / n, scenario.uav_altitude};
}

Clustering sort_and_pair(const Scenario& scenario, const Position3D& uav) {
  require_even(scenario);
  Clustering c;
  c.cluster_size = 2;
  c.gains = user_gains(scenario, uav);
  const auto sorted = ascending_by_gain(c.gains);
  const std::size_t half = sorted.size() / 2;
  c.members.reserve(sorted.size());
  for (std::size_t k = 0; k < half; ++k) {
    c.members.push_back(sorted[k]);         // far user
    c.members.push_back(sorted[k + half]);  // near user
  }
  return c;
}

Clustering random_pairing(const Scenario& scenario, std::uint64_t rng_seed) {
  require_even(scenario);
  Clustering c;
  c.cluster_size = 2;
  c.gains = user_gains(scenario, centroid_placement(scenario));

  std::vector<std::size_t> perm(scenario.num_users());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(rng_seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  c.members.reserve(perm.size());
  for (std::size_t k = 0; k + 1 < perm.size(); k += 2) {
    std::size_t a = perm[k], b = perm[k + 1];
    const bool swap = c.gains[b] < c.gains[a] || (c.gains[b] == c.gains[a] && b < a);
    if (swap) std::swap(a, b);
    c.members.push_back(a);
    c.members.push_back(b);
  }
  return c;
}

Clustering grand_cluster(const Scenario& scenario, const Position3D& uav) {
  if (scenario.num_users() < 2) throw std::invalid_argument("grand cluster needs N >= 2");
  Clustering c;
  c.gains = user_gains(scenario, uav);
  c.members = ascending_by_gain(c.gains);
  c.cluster_size = c.members.size();
  return c;
}

}  // namespace uavnoma
