#ifndef CTAOI_EXTRACTION_HPP
#define CTAOI_EXTRACTION_HPP

#include <Eigen/Dense>

#include "ctaoi/acquisition.hpp"

namespace ctaoi {

struct ExtractOptions {
  // Per-component (I or Q) noise std. When positive, the Rayleigh mean
  // sigma * sqrt(pi/2) is subtracted from every magnitude, clamped at 0.
  double rayleigh_sigma = 0.0;
};

/// Quadrature demodulation at the carrier.
///
/// The input is one period of a periodic signal sampled at f_s (length a
/// multiple of K = f_s / f_us). For every bin t,
///   I = (2/K) sum_{s=t}^{t+K-1} v[s] cos(2 pi s / K),  Q likewise with sin,
/// indices taken cyclically, and the output is sqrt(I^2 + Q^2). The
/// one-period window removes the 2 f_us mixing product exactly for K >= 3,
/// so a carrier of amplitude A maps to A. Starting the window at t keeps a
/// pulse that begins at bin k centered on bin k.
DepthProfile extract_modulated(const DepthProfile& demuxed, double f_us, double f_s, const ExtractOptions& opts = {});

/// Per-component noise std of I and Q for white input noise of std sigma.
double quadrature_noise_sigma(double sample_sigma, int k);

/// Full width at half maximum in meters, by linear interpolation between
/// the bins that straddle half the peak on either side.
/// Throws NoPeak for a non-positive or flat profile and EdgePeak when the
/// peak or a half-maximum crossing reaches the profile edge.
double measure_fwhm(const DepthProfile& profile);

}  // namespace ctaoi

#endif  // CTAOI_EXTRACTION_HPP
