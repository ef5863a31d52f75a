#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uavnoma {

double dbm_to_watts(double dbm);

// System-level constants. Powers in watts, rates in bits/s/Hz.
struct SystemConfig {
  double noise_power_w = 3.981071705534973e-14;  // -104 dBm
  double max_total_power_w = 0.02;
  double dc_offset = 20.0;
  double peak_intensity = 30.0;
  double pam_coefficient = 1.3416407864998738;  // 3*sqrt(5)/5, 4-PAM
  double min_sic_gap = 1.0;
  double qos_min_rate = 0.1;
  double bandwidth_hz = 20e6;
  double cell_radius_m = 10.0;

  // C = min(A, B - A) / delta, the bound on the sum of sqrt(p).
  double intensity_budget() const;

  void validate() const;
};

/// Users grouped into K clusters of M members each. `members` is
/// cluster-major: members[k * M + i] is the user index at intra-cluster
/// position i (0 = weakest). `gains` is indexed by user and holds the channel
/// gains the decoding order refers to.
struct Clustering {
  std::size_t cluster_size = 0;
  std::vector<std::size_t> members;
  std::vector<double> gains;

  std::size_t num_clusters() const {
    return cluster_size == 0 ? 0 : members.size() / cluster_size;
  }
  std::size_t user_at(std::size_t cluster, std::size_t position) const {
    return members[cluster * cluster_size + position];
  }
  double gain_at(std::size_t cluster, std::size_t position) const {
    return gains[user_at(cluster, position)];
  }

  // Same grouping and decoding order, different gains (e.g. the UAV moved).
  Clustering with_gains(std::vector<double> new_gains) const;

  // Throws std::invalid_argument if a user is missing or repeated, the
  // sizes disagree, or a cluster is not sorted by non-decreasing gain.
  void validate(bool require_sorted = true) const;
};

// Per-slot transmit powers in the same cluster-major order as
// Clustering::members.
struct PowerAllocation {
  std::vector<double> p;

  double at(const Clustering& c, std::size_t cluster, std::size_t position) const {
    return p[cluster * c.cluster_size + position];
  }
};

// log2(1 + h p_i / (n0 + h * sum_{j>i} p_j)). Indices are zero-based.
// Throws std::out_of_range on bad indices.
double achievable_rate(const Clustering& clustering, const PowerAllocation& powers,
                       const SystemConfig& config, std::size_t cluster, std::size_t position);

// One margin per (cluster, i < M-1), cluster-major:
//   hbar_{i+1} * (p_i - sum_{j>i} p_j) - theta
// The SIC constraint holds iff the margin is >= 0.
std::vector<double> sic_margins(const Clustering& clustering, const PowerAllocation& powers,
                                const SystemConfig& config);

// eta = K / order, order one-based within the cluster.
double user_weight(std::size_t num_clusters, std::size_t order);

// sum_k sum_i eta_ik R_ik in bits/s/Hz.
double weighted_sum_rate(const Clustering& clustering, const PowerAllocation& powers,
                         const SystemConfig& config);

// Same sum with each cluster's rates scaled by its bandwidth share B / K.
double weighted_sum_rate_bps(const Clustering& clustering, const PowerAllocation& powers,
                             const SystemConfig& config);

struct IntensitySlack {
  double dc = 0.0;
  double peak = 0.0;
  double min() const { return dc < peak ? dc : peak; }
};

// (A/delta - sum sqrt p, (B-A)/delta - sum sqrt p). Throws std::domain_error
// on negative power.
IntensitySlack optical_intensity_slack(std::span<const double> powers, const SystemConfig& config);

// Interference-free rate on a 1/N share of the bandwidth, in bits/s.
double oma_rate(double gain, double power, const SystemConfig& config, std::size_t num_users);

}  // namespace uavnoma
