#ifndef CTAOI_EXPERIMENTS_HPP
#define CTAOI_EXPERIMENTS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ctaoi/acquisition.hpp"
#include "ctaoi/circulant.hpp"
#include "ctaoi/extraction.hpp"
#include "ctaoi/fluence.hpp"

namespace ctaoi {

/// Returned as snr when the noise estimate is exactly zero.
inline constexpr double kSnrCap = 1e12;

/// Single-pulse equivalent signal over one repetition period: S-matrix
/// demultiplexing for coded streams, period folding for single-pulse ones.
/// `sys` may be supplied to reuse a prebuilt system of the stream's order.
DepthProfile reconstruct(const SampledStream& stream, const CirculantSystemd* sys = nullptr);

/// reconstruct followed by quadrature extraction.
DepthProfile modulated_profile(const SampledStream& stream, const CirculantSystemd* sys = nullptr,
                               const ExtractOptions& opts = {});

/// simulate -> reconstruct -> extract for one depth signal.
DepthProfile run_pipeline(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const ExtractOptions& opts = {});

struct SnrReport {
  int n_trials = 0;
  double signal_mean = 0.0;
  double noise_std = 0.0;
  double snr = 0.0;
  Mode mode = Mode::Coded;
  int order = 0;              // code order, or pulse interval in carrier periods
  bool saturated = false;     // noise_std was zero; snr holds kSnrCap
  Eigen::Index peak_bin = 0;
  Eigen::Index noise_bin = 0;
};

struct SnrOptions {
  bool rayleigh_correction = false;
};

/// Monte-Carlo SNR at a fixed bin pair.
///
/// The peak bin is the maximum of the noise-free modulated profile; the
/// noise bin is the bin farthest from it whose noise-free value is zero
/// (falling back to the farthest bin). Trial i uses derive_seed(cfg.seed, i).
/// signal_mean is the mean peak-bin amplitude and noise_std the sample
/// standard deviation of the noise-bin amplitude across trials.
SnrReport measure_snr(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x, int n_trials,
                      const SnrOptions& opts = {});

/// Phantom overload, axis through the source-detector midpoint.
SnrReport measure_snr(const AcquisitionConfig& cfg, const Phantom& ph, int n_trials, const SnrOptions& opts = {});

enum class SinglePulseReference {
  // One pulse per code period, prf = f_us / N.
  Matched,
  // Fastest rate with one pulse in the phantom: the pulse interval is the
  // smallest whole number of carrier periods covering the phantom depth,
  // plus one for the length of the pulse itself.
  MaxRate,
};

struct AdvantageCurve {
  std::vector<int> orders;
  std::vector<double> measured_gain;
  std::vector<double> theoretical_gain;  // sqrt(N) / 2
  std::vector<SnrReport> coded;
  std::vector<SnrReport> single;
  SinglePulseReference reference = SinglePulseReference::Matched;
};

inline double theoretical_gain(int order) { return std::sqrt(static_cast<double>(order)) / 2.0; }

/// Exact per-bin noise-std ratio of single-pulse to S-matrix measurement,
/// (N+1) / (2 sqrt(N)); tends to sqrt(N)/2 for large N.
inline double exact_s_matrix_gain(int order) {
  return (order + 1.0) / (2.0 * std::sqrt(static_cast<double>(order)));
}

/// Coded vs single-pulse SNR for each order at equal acquisition duration.
AdvantageCurve multiplexing_advantage(const AcquisitionConfig& base, const Phantom& ph, const std::vector<int>& orders,
                                      int n_trials, SinglePulseReference reference = SinglePulseReference::Matched,
                                      const SnrOptions& opts = {});

/// Transducer positions x_min, x_min + step, ... (inclusive up to x_max
/// within half a step), likewise in y.
struct ScanGrid {
  double x_min = -0.01, x_max = 0.01;
  double y_min = 0.0, y_max = 0.0;
  double step = 0.5e-3;

  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

struct ScanResult {
  std::vector<double> xs, ys;
  double bin_width_m = 0.0;
  double depth_origin_m = 0.0;
  // Depth profiles, row y_index * xs.size() + x_index, normalized so the
  // global maximum is 1.
  Eigen::MatrixXd stack;
  // Maximum over depth per position, ys.size() x xs.size().
  Eigen::MatrixXd xy_peak;
  // Depth x lateral slice at the y nearest the fiber axis, depth bins x xs.size().
  Eigen::MatrixXd xz_slice;
  Eigen::Index xz_row = 0;
  double scale = 1.0;  // raw global maximum before normalization
};

/// Runs the full pipeline at every grid position. Position p (row-major)
/// uses derive_seed(cfg.seed, p).
ScanResult scan_2d(const AcquisitionConfig& cfg, const Phantom& ph, const ScanGrid& grid,
                   const ExtractOptions& opts = {});

/// Map SNR: maximum of the slice over the standard deviation of slice
/// values deeper than the phantom plus one carrier period, excluding the
/// last carrier period whose cyclic windows wrap to the surface.
double map_snr(const ScanResult& scan, double depth_extent_m, int k);

/// Ridge of the depth-lateral slice: for every column, the depth of the
/// maximum. Columns within `margin_m` of a fiber are skipped (NaN).
std::vector<double> ridge_depths(const ScanResult& scan, const Phantom& ph, double margin_m);

}  // namespace ctaoi

#endif  // CTAOI_EXPERIMENTS_HPP
