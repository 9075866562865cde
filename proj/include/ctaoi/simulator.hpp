#ifndef CTAOI_SIMULATOR_HPP
#define CTAOI_SIMULATOR_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "ctaoi/acquisition.hpp"
#include "ctaoi/fluence.hpp"

namespace ctaoi {

/// One cycle of sin at f_us sampled at f_s: K samples sin(2 pi k / K).
Eigen::VectorXd pulse_waveform(double f_us, double f_s);

/// Seed for the index-th independent stream derived from a base seed
/// (SplitMix64 of base + (index + 1) * golden gamma). Trials and scan
/// positions use this so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Modulated-light strength x per depth bin over one repetition window
/// (period_samples bins of width c/f_s, sampled at bin centers; zero past
/// the phantom). Throws InvalidConfig if the phantom is deeper than the
/// window, i.e. if two pulses or two sequences could share the medium.
Eigen::VectorXd depth_signal(const AcquisitionConfig& cfg, const Phantom& ph, const Eigen::Vector2d& axis_xy);

/// Noise-free detector signal over one repetition period.
///
/// Bin b at sample t lies under transmitted element e = floor((t - b) / K).
/// In coded mode the element carries bit (-e mod N) so that the pattern in
/// the medium at frame m is the S-sequence shifted by m; in single-pulse
/// mode only e = 0 (mod period) is on. Tagged light oscillates with the
/// transmit carrier, so
///   d[t] = eta * sin(2 pi t / K) * sum_b on(t, b) * x[b].
Eigen::VectorXd noise_free_period(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Tiles a precomputed noise-free period to round(duration * f_s) samples
/// and adds i.i.d. N(0, noise_sigma^2) detector noise seeded from cfg.seed.
SampledStream stream_from_period(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& period);

/// Stream of round(duration * f_s) samples: the periodic noise-free signal
/// plus i.i.d. N(0, noise_sigma^2) detector noise seeded from cfg.seed.
SampledStream simulate_stream(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Phantom overload, transducer axis at axis_xy.
SampledStream simulate_stream(const AcquisitionConfig& cfg, const Phantom& ph, const Eigen::Vector2d& axis_xy);

/// Phantom overload with the axis through the source-detector midpoint.
SampledStream simulate_stream(const AcquisitionConfig& cfg, const Phantom& ph);

}  // namespace ctaoi

#endif  // CTAOI_SIMULATOR_HPP
