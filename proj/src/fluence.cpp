#include "ctaoi/fluence.hpp"

#include <algorithm>
#include <cmath>

#include "ctaoi/error.hpp"

namespace ctaoi {

double Phantom::mu_eff_per_m() const { return 100.0 * std::sqrt(3.0 * mu_a * mu_s_prime); }

double Phantom::transport_length_m() const { return 0.01 / (mu_s_prime + mu_a); }

void Phantom::validate() const {
  if (!(mu_s_prime > 0)) throw Error(ErrorKind::InvalidConfig, "mu_s_prime must be positive");
  if (!(mu_a >= 0)) throw Error(ErrorKind::InvalidConfig, "mu_a must be non-negative");
  if (!(sound_speed > 0)) throw Error(ErrorKind::InvalidConfig, "phantom sound speed must be positive");
  if (!(depth_extent > 0)) throw Error(ErrorKind::InvalidConfig, "phantom depth extent must be positive");
  if (!(lateral_half_width > 0)) throw Error(ErrorKind::InvalidConfig, "phantom lateral width must be positive");
  if (src_pos.z() != det_pos.z())
    throw Error(ErrorKind::InvalidConfig, "source and detector must lie in the same XY plane");
  for (const auto* p : {&src_pos, &det_pos})
    if (std::abs(p->x()) > lateral_half_width || std::abs(p->y()) > lateral_half_width)
      throw Error(ErrorKind::InvalidConfig, "fiber position outside the phantom");
}

namespace {

double kernel(double mu_eff, double d, double floor) {
  d = std::max(d, floor);
  return std::exp(-mu_eff * d) / d;
}

double fiber_field(const Phantom& ph, const Eigen::Vector3d& fiber, const Eigen::Vector3d& r) {
  const double mu_eff = ph.mu_eff_per_m();
  const double lt = ph.transport_length_m();
  if (ph.model == FluenceModel::InfiniteMedium) return kernel(mu_eff, (r - fiber).norm(), lt);
  // Isotropic source at depth lt; image mirrored about the extrapolated
  // boundary at -2D (index-matched, D = lt / 3).
  const double zb = 2.0 * lt / 3.0;
  const Eigen::Vector3d src = fiber + Eigen::Vector3d(0, 0, lt);
  const Eigen::Vector3d img = fiber - Eigen::Vector3d(0, 0, lt + 2.0 * zb);
  return kernel(mu_eff, (r - src).norm(), lt) - kernel(mu_eff, (r - img).norm(), lt);
}

void check_domain(const Phantom& ph, const Eigen::Vector2d& xy, double depth) {
  if (depth < 0 || depth > ph.depth_extent || std::abs(xy.x()) > ph.lateral_half_width ||
      std::abs(xy.y()) > ph.lateral_half_width)
    throw Error(ErrorKind::OutOfDomain, "position outside the phantom");
}

}  // namespace

double sensitivity(const Phantom& ph, const Eigen::Vector2d& axis_xy, double depth) {
  const Eigen::Vector3d r(axis_xy.x(), axis_xy.y(), ph.src_pos.z() + depth);
  return fiber_field(ph, ph.src_pos, r) * fiber_field(ph, ph.det_pos, r);
}

std::vector<double> fluence_profile(const Phantom& ph, const Eigen::Vector2d& axis_xy,
                                    std::span<const double> depths) {
  ph.validate();
  std::vector<double> out;
  out.reserve(depths.size());
  for (double z : depths) {
    check_domain(ph, axis_xy, z);
    out.push_back(sensitivity(ph, axis_xy, z));
  }
  const double peak = out.empty() ? 0.0 : *std::max_element(out.begin(), out.end());
  if (peak > 0)
    for (auto& v : out) v /= peak;
  return out;
}

std::vector<double> fluence_profile(const Phantom& ph, std::span<const double> depths) {
  return fluence_profile(ph, ph.midpoint_xy(), depths);
}

double reference_sensitivity(const Phantom& ph) {
  constexpr int kSamples = 4000;
  const Eigen::Vector2d mid = ph.midpoint_xy();
  double peak = 0.0;
  for (int i = 0; i <= kSamples; ++i)
    peak = std::max(peak, sensitivity(ph, mid, ph.depth_extent * i / kSamples));
  return peak;
}

}  // namespace ctaoi
