#include "ctaoi/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ctaoi/codes.hpp"
#include "ctaoi/error.hpp"

namespace ctaoi {

Eigen::VectorXd pulse_waveform(double f_us, double f_s) {
  const int k = integer_ratio(f_s, f_us);
  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) w[i] = std::sin(2.0 * std::numbers::pi * i / k);
  // sin at multiples of pi/2 is not exact in floating point.
  for (int i = 0; i < k; ++i)
    if (std::abs(w[i]) < 1e-15) w[i] = 0.0;
  return w;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Eigen::VectorXd depth_signal(const AcquisitionConfig& cfg, const Phantom& ph, const Eigen::Vector2d& axis_xy) {
  cfg.validate();
  ph.validate();
  if (std::abs(ph.sound_speed - cfg.sound_speed) > 1e-9 * cfg.sound_speed)
    throw Error(ErrorKind::InvalidConfig, "phantom and acquisition sound speeds differ");
  if (ph.depth_extent > cfg.window_depth_m() * (1 + 1e-12))
    throw Error(ErrorKind::InvalidConfig,
                "phantom depth " + std::to_string(ph.depth_extent) + " m exceeds the repetition window " +
                    std::to_string(cfg.window_depth_m()) + " m; more than one pulse or sequence in the medium");
  if (std::abs(axis_xy.x()) > ph.lateral_half_width || std::abs(axis_xy.y()) > ph.lateral_half_width)
    throw Error(ErrorKind::OutOfDomain, "transducer axis outside the phantom");
  const double reference = reference_sensitivity(ph);
  const double dz = cfg.bin_width_m();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cfg.period_samples());
  for (Eigen::Index b = 0; b < x.size(); ++b) {
    const double z = (static_cast<double>(b) + 0.5) * dz;
    if (z > ph.depth_extent) break;
    x[b] = sensitivity(ph, axis_xy, z) / reference;
  }
  return x;
}

Eigen::VectorXd noise_free_period(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x) {
  cfg.validate();
  const int k = cfg.subsets();
  const int p = cfg.period_elements();
  const Eigen::Index len = static_cast<Eigen::Index>(p) * k;
  if (x.size() != len)
    throw Error(ErrorKind::LengthMismatch, "depth signal must have " + std::to_string(len) + " bins");

  // Bits transmitted at element e, e in [0, p).
  std::vector<std::uint8_t> tx(static_cast<std::size_t>(p), 0);
  if (cfg.mode == Mode::Coded) {
    const SSequence seq = generate_s_sequence(cfg.code_order);
    for (int e = 0; e < p; ++e) tx[static_cast<std::size_t>(e)] = seq[static_cast<std::size_t>((p - e) % p)];
  } else {
    tx[0] = 1;
  }

  const Eigen::VectorXd carrier = pulse_waveform(cfg.f_us, cfg.f_s);
  Eigen::VectorXd d(len);
  for (Eigen::Index t = 0; t < len; ++t) {
    double acc = 0.0;
    for (Eigen::Index b = 0; b < len; ++b) {
      if (x[b] == 0.0) continue;
      const Eigen::Index lag = ((t - b) % len + len) % len;
      if (tx[static_cast<std::size_t>(lag / k)]) acc += x[b];
    }
    d[t] = cfg.modulation_efficiency * carrier[t % k] * acc;
  }
  return d;
}

SampledStream stream_from_period(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& period) {
  if (period.size() != cfg.period_samples())
    throw Error(ErrorKind::LengthMismatch, "period must have " + std::to_string(cfg.period_samples()) + " samples");
  const std::int64_t count = cfg.sample_count();
  if (count < period.size())
    throw Error(ErrorKind::InsufficientSamples, "duration " + std::to_string(cfg.duration_s) +
                                                    " s is shorter than one repetition period");
  SampledStream stream;
  stream.f_s = cfg.f_s;
  stream.t0 = cfg.t0();
  stream.config = cfg;
  stream.samples.resize(count);
  for (std::int64_t i = 0; i < count; ++i) stream.samples[i] = period[i % period.size()];
  if (cfg.noise_sigma > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
    for (std::int64_t i = 0; i < count; ++i) stream.samples[i] += noise(rng);
  }
  return stream;
}

SampledStream simulate_stream(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return stream_from_period(cfg, noise_free_period(cfg, x));
}

SampledStream simulate_stream(const AcquisitionConfig& cfg, const Phantom& ph, const Eigen::Vector2d& axis_xy) {
  return simulate_stream(cfg, depth_signal(cfg, ph, axis_xy));
}

SampledStream simulate_stream(const AcquisitionConfig& cfg, const Phantom& ph) {
  return simulate_stream(cfg, ph, ph.midpoint_xy());
}

}  // namespace ctaoi
