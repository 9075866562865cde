#include "ctaoi/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ctaoi/error.hpp"

namespace ctaoi {

DepthProfile extract_modulated(const DepthProfile& demuxed, double f_us, double f_s, const ExtractOptions& opts) {
  const int k = integer_ratio(f_s, f_us);
  if (k < 2) throw Error(ErrorKind::NyquistViolation, "need at least two samples per carrier period");
  const Eigen::Index n = demuxed.values.size();
  if (n == 0 || n % k != 0)
    throw Error(ErrorKind::LengthMismatch, "profile length " + std::to_string(n) +
                                               " is not a whole number of carrier periods");
  Eigen::VectorXd c(k), s(k);
  for (int i = 0; i < k; ++i) {
    c[i] = std::cos(2.0 * std::numbers::pi * i / k);
    s[i] = std::sin(2.0 * std::numbers::pi * i / k);
  }
  const double bias = opts.rayleigh_sigma > 0 ? opts.rayleigh_sigma * std::sqrt(std::numbers::pi / 2.0) : 0.0;

  DepthProfile out{Eigen::VectorXd(n), demuxed.bin_width_m, demuxed.depth_origin_m};
  for (Eigen::Index t = 0; t < n; ++t) {
    double i_acc = 0.0, q_acc = 0.0;
    for (int w = 0; w < k; ++w) {
      const Eigen::Index idx = (t + w) % n;
      const double v = demuxed.values[idx];
      i_acc += v * c[idx % k];
      q_acc += v * s[idx % k];
    }
    const double mag = (2.0 / k) * std::hypot(i_acc, q_acc);
    out.values[t] = bias > 0 ? std::max(0.0, mag - bias) : mag;
  }
  return out;
}

double quadrature_noise_sigma(double sample_sigma, int k) {
  // var(I) = (4/K^2) sigma^2 sum cos^2 = (2/K) sigma^2 for K >= 3.
  return sample_sigma * std::sqrt(2.0 / k);
}

double measure_fwhm(const DepthProfile& profile) {
  const auto& v = profile.values;
  const Eigen::Index n = v.size();
  if (n < 3) throw Error(ErrorKind::NoPeak, "profile too short for a width measurement");
  Eigen::Index peak = 0;
  const double top = v.maxCoeff(&peak);
  if (!(top > 0) || top == v.minCoeff()) throw Error(ErrorKind::NoPeak, "profile has no positive peak");
  if (peak == 0 || peak == n - 1) throw Error(ErrorKind::EdgePeak, "peak lies on the profile edge");
  const double half = 0.5 * top;

  Eigen::Index left = peak;
  while (left > 0 && v[left] > half) --left;
  if (v[left] > half) throw Error(ErrorKind::EdgePeak, "left half-maximum crossing not inside the profile");
  Eigen::Index right = peak;
  while (right < n - 1 && v[right] > half) ++right;
  if (v[right] > half) throw Error(ErrorKind::EdgePeak, "right half-maximum crossing not inside the profile");

  // v[left] <= half < v[left + 1]; v[right - 1] > half >= v[right].
  const double xl = static_cast<double>(left) + (half - v[left]) / (v[left + 1] - v[left]);
  const double xr = static_cast<double>(right - 1) + (v[right - 1] - half) / (v[right - 1] - v[right]);
  return (xr - xl) * profile.bin_width_m;
}

}  // namespace ctaoi
