#ifndef CTAOI_ACQUISITION_HPP
#define CTAOI_ACQUISITION_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace ctaoi {

enum class Mode { SinglePulse, Coded };

/// Physical and sampling parameters of one acquisition.
///
/// Time is discretized at f_s, so one sample of acoustic travel equals one
/// depth bin of width sound_speed / f_s. One carrier period T = 1/f_us spans
/// K = f_s / f_us samples and is the width of one code element.
struct AcquisitionConfig {
  double f_us = 1.25e6;
  double f_s = 5.0e6;
  double sound_speed = 990.0;  // inside the phantom, m/s
  Mode mode = Mode::Coded;
  int code_order = 79;
  // Single-pulse repetition interval in carrier periods; 0 means one pulse
  // per code_order periods (the reference used for the multiplexing gain).
  int pulse_interval = 0;
  double duration_s = 2.0;
  double noise_sigma = 0.0;
  double modulation_efficiency = 1.0;
  std::uint64_t seed = 1;
  double water_path_m = 0.09;
  double water_sound_speed = 1480.0;

  /// K = f_s / f_us; throws NonIntegerRatio unless it is a natural number.
  int subsets() const;
  /// Code elements (carrier periods) per repetition period.
  int period_elements() const;
  int period_samples() const { return period_elements() * subsets(); }
  double prf() const { return f_us / period_elements(); }
  double bin_width_m() const { return sound_speed / f_s; }
  /// Depth covered by one repetition period inside the phantom.
  double window_depth_m() const { return period_elements() * sound_speed / f_us; }
  /// Spacing between successive pulses (or sequences) while in water.
  double pulse_spacing_in_water_m() const { return water_sound_speed / prf(); }
  /// Constant water-path delay; recorded as the stream start time.
  double t0() const { return water_path_m / water_sound_speed; }
  std::int64_t sample_count() const;

  /// Checks field ranges and cross-field constraints; throws InvalidConfig,
  /// InvalidOrder or NonIntegerRatio.
  void validate() const;

  friend bool operator==(const AcquisitionConfig&, const AcquisitionConfig&) = default;
};

/// K = f_s / f_us when the ratio is a natural number (relative slack 1e-9).
int integer_ratio(double f_s, double f_us);

/// Detector samples at rate f_s plus the configuration that produced them.
struct SampledStream {
  Eigen::VectorXd samples;
  double f_s = 0.0;
  double t0 = 0.0;
  AcquisitionConfig config;
};

/// One code period of one interleaved subset: the y in y = S x.
struct MultiplexedFrame {
  Eigen::VectorXd values;
  int subset_index = 0;
};

/// Signal against depth. Bin i covers depth_origin_m + i * bin_width_m.
struct DepthProfile {
  Eigen::VectorXd values;
  double bin_width_m = 0.0;
  double depth_origin_m = 0.0;

  Eigen::Index size() const { return values.size(); }
  double depth(Eigen::Index i) const { return depth_origin_m + static_cast<double>(i) * bin_width_m; }
};

}  // namespace ctaoi

#endif  // CTAOI_ACQUISITION_HPP
