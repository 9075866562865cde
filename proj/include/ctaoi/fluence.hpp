#ifndef CTAOI_FLUENCE_HPP
#define CTAOI_FLUENCE_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ctaoi {

enum class FluenceModel {
  // Half-space with the fibers on its surface; each fiber is an isotropic
  // source one transport length deep with a negative image above the
  // extrapolated boundary. Sensitivity vanishes at the surface, which is
  // what bends the source-detector path into the medium.
  SemiInfinite,
  // Plain exp(-mu_eff d)/d kernel with no boundary.
  InfiniteMedium,
};

/// Diffuse phantom. Positions are in meters; z is depth below the fiber
/// plane, which is also the acoustic entry surface.
struct Phantom {
  double mu_s_prime = 15.0;  // 1/cm
  double mu_a = 0.05;        // 1/cm
  Eigen::Vector3d src_pos{-7.5e-3, 0.0, 0.0};
  Eigen::Vector3d det_pos{7.5e-3, 0.0, 0.0};
  double sound_speed = 990.0;
  double depth_extent = 0.03;
  double lateral_half_width = 0.03;
  FluenceModel model = FluenceModel::SemiInfinite;

  double mu_eff_per_m() const;
  double transport_length_m() const;
  Eigen::Vector2d midpoint_xy() const { return 0.5 * (src_pos.head<2>() + det_pos.head<2>()); }

  /// Throws InvalidConfig on non-physical parameters or when the fibers are
  /// not in one plane transverse to z.
  void validate() const;
};

/// Unnormalized photon-path sensitivity G(src -> r) G(r -> det) at a point
/// given as (x, y) of the acoustic axis and depth below the fiber plane.
/// Distances are floored at one transport length, below which the diffusion
/// kernel is not meaningful.
double sensitivity(const Phantom& ph, const Eigen::Vector2d& axis_xy, double depth);

/// Sensitivity along the acoustic axis at axis_xy, normalized to peak 1 over
/// the given depths. Throws OutOfDomain for positions outside the phantom.
std::vector<double> fluence_profile(const Phantom& ph, const Eigen::Vector2d& axis_xy,
                                    std::span<const double> depths);

/// Same, on the axis through the source-detector midpoint.
std::vector<double> fluence_profile(const Phantom& ph, std::span<const double> depths);

/// Peak sensitivity along the midpoint axis (dense grid over the phantom
/// depth). The simulator scales all positions by this value.
double reference_sensitivity(const Phantom& ph);

}  // namespace ctaoi

#endif  // CTAOI_FLUENCE_HPP
