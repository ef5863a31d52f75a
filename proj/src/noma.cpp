#include "uavnoma/noma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavnoma {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double SystemConfig::intensity_budget() const {
  const double headroom = dc_offset < peak_intensity - dc_offset ? dc_offset : peak_intensity - dc_offset;
  return headroom / pam_coefficient;
}

void SystemConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(noise_power_w, "noise_power");
  positive(max_total_power_w, "max_total_power");
  positive(dc_offset, "dc_offset");
  positive(peak_intensity, "peak_intensity");
  positive(pam_coefficient, "pam_coefficient");
  positive(min_sic_gap, "min_sic_gap");
  positive(qos_min_rate, "qos_min_rate");
  positive(bandwidth_hz, "bandwidth");
  positive(cell_radius_m, "cell_radius");
  if (!(peak_intensity > dc_offset))
    throw std::invalid_argument("peak_intensity must exceed dc_offset");
}

Clustering Clustering::with_gains(std::vector<double> new_gains) const {
  Clustering out;
  out.cluster_size = cluster_size;
  out.members = members;
  out.gains = std::move(new_gains);
  return out;
}

void Clustering::validate(bool require_sorted) const {
  if (cluster_size == 0 || members.empty() || members.size() % cluster_size != 0)
    throw std::invalid_argument("clustering: member count must be a positive multiple of M");
  if (members.size() != gains.size())
    throw std::invalid_argument("clustering: one gain per user required");
  std::vector<bool> seen(gains.size(), false);
  for (std::size_t u : members) {
    if (u >= gains.size() || seen[u])
      throw std::invalid_argument("clustering: every user must appear exactly once");
    seen[u] = true;
  }
  if (!require_sorted) return;
  for (std::size_t k = 0; k < num_clusters(); ++k)
    for (std::size_t i = 1; i < cluster_size; ++i)
      if (gain_at(k, i) < gain_at(k, i - 1))
        throw std::invalid_argument("clustering: gains must be non-decreasing within a cluster");
}

double achievable_rate(const Clustering& clustering, const PowerAllocation& powers,
                       const SystemConfig& config, std::size_t cluster, std::size_t position) {
  const std::size_t m = clustering.cluster_size;
  if (cluster >= clustering.num_clusters() || position >= m)
    throw std::out_of_range("achievable_rate: cluster/user index out of range");
  if (powers.p.size() != clustering.members.size())
    throw std::out_of_range("achievable_rate: power vector size mismatch");

  const double h = clustering.gain_at(cluster, position);
  double interference = 0.0;
  for (std::size_t j = position + 1; j < m; ++j) interference += powers.at(clustering, cluster, j);
  const double own = powers.at(clustering, cluster, position);
  return std::log2(1.0 + h * own / (config.noise_power_w + h * interference));
}

std::vector<double> sic_margins(const Clustering& clustering, const PowerAllocation& powers,
                                const SystemConfig& config) {
  const std::size_t m = clustering.cluster_size;
  std::vector<double> out;
  out.reserve(clustering.num_clusters() * (m > 0 ? m - 1 : 0));
  for (std::size_t k = 0; k < clustering.num_clusters(); ++k) {
    // Suffix sums so each margin is O(1).
    double stronger = 0.0;
    std::vector<double> tail(m, 0.0);
    for (std::size_t j = m; j-- > 0;) {
      tail[j] = stronger;
      stronger += powers.at(clustering, k, j);
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double hbar = clustering.gain_at(k, i + 1) / config.noise_power_w;
      out.push_back(hbar * (powers.at(clustering, k, i) - tail[i]) - config.min_sic_gap);
    }
  }
  return out;
}

double user_weight(std::size_t num_clusters, std::size_t order) {
  return static_cast<double>(num_clusters) / static_cast<double>(order);
}

double weighted_sum_rate(const Clustering& clustering, const PowerAllocation& powers,
                         const SystemConfig& config) {
  const std::size_t k_count = clustering.num_clusters();
  double total = 0.0;
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t i = 0; i < clustering.cluster_size; ++i)
      total += user_weight(k_count, i + 1) * achievable_rate(clustering, powers, config, k, i);
  return total;
}

double weighted_sum_rate_bps(const Clustering& clustering, const PowerAllocation& powers,
                             const SystemConfig& config) {
  const std::size_t k_count = clustering.num_clusters();
  if (k_count == 0) return 0.0;
  return config.bandwidth_hz / static_cast<double>(k_count) *
         weighted_sum_rate(clustering, powers, config);
}

IntensitySlack optical_intensity_slack(std::span<const double> powers, const SystemConfig& config) {
  double root_sum = 0.0;
  for (double p : powers) {
    if (p < 0.0) throw std::domain_error("optical_intensity_slack: negative power");
    root_sum += std::sqrt(p);
  }
  return {config.dc_offset / config.pam_coefficient - root_sum,
          (config.peak_intensity - config.dc_offset) / config.pam_coefficient - root_sum};
}

double oma_rate(double gain, double power, const SystemConfig& config, std::size_t num_users) {
  return config.bandwidth_hz / static_cast<double>(num_users) *
         std::log2(1.0 + gain * power / config.noise_power_w);
}

}  // namespace uavnoma
