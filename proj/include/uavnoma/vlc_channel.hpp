#pragma once

// Line-of-sight Lambertian DC channel between a downward-facing LED carried
// by a hovering UAV and upward-facing photodetectors on the ground.

#include <numbers>

namespace uavnoma {

inline constexpr double kPi = std::numbers::pi;

double deg_to_rad(double degrees);

// LED / photodetector constants. Angles in degrees, area in m^2.
struct VlcParams {
  double semiangle_half_power_deg = 60.0;
  double fov_deg = 70.0;
  double detection_area_m2 = 1e-4;
  double optical_filter_gain = 1.0;
  double refractive_index = 1.5;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct LambertianOrder {
  double nu = 1.0;
};

// nu = -ln 2 / ln(cos(semiangle)). Throws std::domain_error unless
// 0 < semiangle < 90 degrees.
LambertianOrder lambertian_order(double semiangle_half_power_deg);

// (nu + 1) / (2 pi) * cos^nu(angle); zero at or beyond pi/2.
double radiant_intensity(LambertianOrder order, double irradiance_angle_rad);

// q^2 / sin^2(FoV) inside the field of view, zero outside it.
double concentrator_gain(const VlcParams& params, double incidence_angle_rad);

/// DC gain of the LED-to-user link:
///   h = A / d^2 * R0(phi) * Ts * g(psi) * cos(psi)
/// with cos(phi) = cos(psi) = h_uav / d for a downward LED and an upward
/// receiver. Zero when the incidence angle exceeds the receiver FoV.
/// Throws std::domain_error if the UAV altitude is not positive.
double channel_gain(const VlcParams& params, LambertianOrder order,
                    const Position3D& uav, const Position3D& user);

// Horizontal radius of the ground footprint inside the receiver FoV when the
// LED hovers at `altitude`.
double coverage_radius(const VlcParams& params, double altitude);

}  // namespace uavnoma
