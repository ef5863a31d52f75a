#pragma once

#include <cstdint>
#include <vector>

#include "uavnoma/noma.hpp"
#include "uavnoma/vlc_channel.hpp"

namespace uavnoma {

// Immutable problem instance: ground users (z = 0), UAV altitude and the
// physical/system constants.
struct Scenario {
  std::vector<Position3D> users;
  double uav_altitude = 3.0;
  SystemConfig config;
  VlcParams vlc;

  std::size_t num_users() const { return users.size(); }
  Position3D uav_at(double x, double y) const { return {x, y, uav_altitude}; }

  void validate() const;
};

// Gain of every user from a UAV at `uav`.
std::vector<double> user_gains(const Scenario& scenario, const Position3D& uav);
void user_gains(const Scenario& scenario, const Position3D& uav, std::vector<double>& out);

// Mean user position at the UAV altitude. Throws on an empty user set.
Position3D centroid_placement(const Scenario& scenario);

/// Sort-and-split pairing. Users are sorted by ascending gain at `uav`
/// (ties by index); the weaker half (far users) and stronger half (near
/// users) are paired rank by rank, so cluster k holds the k-th far user at
/// position 0 and the k-th near user at position 1. Throws
/// std::invalid_argument for odd N.
Clustering sort_and_pair(const Scenario& scenario, const Position3D& uav);

// Uniformly random perfect matching, members ordered by gain at the centroid.
Clustering random_pairing(const Scenario& scenario, std::uint64_t rng_seed);

// One cluster holding all users, weakest first.
Clustering grand_cluster(const Scenario& scenario, const Position3D& uav);

}  // namespace uavnoma
