#include "uavnoma/vlc_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace uavnoma {

double deg_to_rad(double degrees) { return degrees * kPi / 180.0; }

void VlcParams::validate() const {
  if (!(semiangle_half_power_deg > 0.0 && semiangle_half_power_deg < 90.0))
    throw std::invalid_argument("semiangle_half_power must lie in (0, 90) degrees");
  if (!(fov_deg > 0.0 && fov_deg <= 90.0))
    throw std::invalid_argument("fov must lie in (0, 90] degrees");
  if (!(detection_area_m2 > 0.0))
    throw std::invalid_argument("detection_area must be positive");
  if (!(optical_filter_gain > 0.0))
    throw std::invalid_argument("optical_filter_gain must be positive");
  if (!(refractive_index >= 1.0))
    throw std::invalid_argument("refractive_index must be >= 1");
}

LambertianOrder lambertian_order(double semiangle_half_power_deg) {
  if (!(semiangle_half_power_deg > 0.0 && semiangle_half_power_deg < 90.0))
    throw std::domain_error("half-power semiangle must lie in (0, 90) degrees");
  const double c = std::cos(deg_to_rad(semiangle_half_power_deg));
  return LambertianOrder{-std::log(2.0) / std::log(c)};
}

double radiant_intensity(LambertianOrder order, double irradiance_angle_rad) {
  if (irradiance_angle_rad >= kPi / 2.0) return 0.0;
  const double c = std::cos(irradiance_angle_rad);
  return (order.nu + 1.0) / (2.0 * kPi) * std::pow(c, order.nu);
}

double concentrator_gain(const VlcParams& params, double incidence_angle_rad) {
  const double fov = deg_to_rad(params.fov_deg);
  if (incidence_angle_rad < 0.0 || incidence_angle_rad > fov) return 0.0;
  const double s = std::sin(fov);
  return params.refractive_index * params.refractive_index / (s * s);
}

double channel_gain(const VlcParams& params, LambertianOrder order,
                    const Position3D& uav, const Position3D& user) {
  const double h = uav.z - user.z;
  if (!(h > 0.0)) throw std::domain_error("UAV altitude must be positive");
  const double dx = uav.x - user.x;
  const double dy = uav.y - user.y;
  const double d2 = dx * dx + dy * dy + h * h;
  const double cos_angle = h / std::sqrt(d2);

  // Same angle at both ends: LED points down, receiver points up.
  const double fov = deg_to_rad(params.fov_deg);
  if (cos_angle < std::cos(fov)) return 0.0;

  const double s = std::sin(fov);
  const double g = params.refractive_index * params.refractive_index / (s * s);
  const double r0 = (order.nu + 1.0) / (2.0 * kPi) *
                    (order.nu == 1.0 ? cos_angle : std::pow(cos_angle, order.nu));
  return params.detection_area_m2 / d2 * r0 * params.optical_filter_gain * g * cos_angle;
}

double coverage_radius(const VlcParams& params, double altitude) {
  return altitude * std::tan(deg_to_rad(params.fov_deg));
}

}  // namespace uavnoma
