#include "ctaoi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ctaoi/codes.hpp"
#include "ctaoi/demux.hpp"
#include "ctaoi/detail/parallel.hpp"
#include "ctaoi/error.hpp"
#include "ctaoi/simulator.hpp"

namespace ctaoi {

DepthProfile reconstruct(const SampledStream& stream, const CirculantSystemd* sys) {
  const auto& cfg = stream.config;
  DepthProfile profile;
  if (cfg.mode == Mode::Coded) {
    if (sys && sys->order() == cfg.code_order) {
      profile = demultiplex_stream(*sys, stream);
    } else {
      const CirculantSystemd own(generate_s_sequence(cfg.code_order), InverseKind::Spectral);
      profile = demultiplex_stream(own, stream);
    }
  } else {
    profile = fold_periods(stream, cfg.period_samples());
  }
  profile.depth_origin_m = 0.5 * profile.bin_width_m;
  return profile;
}

DepthProfile modulated_profile(const SampledStream& stream, const CirculantSystemd* sys, const ExtractOptions& opts) {
  return extract_modulated(reconstruct(stream, sys), stream.config.f_us, stream.f_s, opts);
}

DepthProfile run_pipeline(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const ExtractOptions& opts) {
  return modulated_profile(simulate_stream(cfg, x), nullptr, opts);
}

namespace {

std::unique_ptr<CirculantSystemd> system_for(const AcquisitionConfig& cfg) {
  if (cfg.mode != Mode::Coded) return nullptr;
  return std::make_unique<CirculantSystemd>(generate_s_sequence(cfg.code_order), InverseKind::Spectral);
}

// Per-component I/Q noise std of the reconstructed profile, used for the
// optional Rayleigh-bias subtraction.
double reconstructed_quadrature_sigma(const AcquisitionConfig& cfg) {
  const std::int64_t periods = cfg.sample_count() / cfg.period_samples();
  double per_bin = cfg.noise_sigma / std::sqrt(static_cast<double>(std::max<std::int64_t>(periods, 1)));
  if (cfg.mode == Mode::Coded) per_bin *= 2.0 * std::sqrt(cfg.code_order) / (cfg.code_order + 1.0);
  return quadrature_noise_sigma(per_bin, cfg.subsets());
}

}  // namespace

SnrReport measure_snr(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& x, int n_trials,
                      const SnrOptions& opts) {
  if (n_trials < 2) throw Error(ErrorKind::InvalidConfig, "need at least two trials");
  cfg.validate();
  const auto sys = system_for(cfg);

  const Eigen::VectorXd period = noise_free_period(cfg, x);
  AcquisitionConfig clean = cfg;
  clean.noise_sigma = 0.0;
  const DepthProfile reference = modulated_profile(stream_from_period(clean, period), sys.get());
  const Eigen::VectorXd& ref = reference.values;
  Eigen::Index peak = 0;
  const double top = ref.maxCoeff(&peak);
  if (!(top > 0)) throw Error(ErrorKind::NoPeak, "noise-free profile carries no signal");

  Eigen::Index noise_bin = -1, fallback = 0;
  Eigen::Index best = -1, best_any = -1;
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    const Eigen::Index dist = std::abs(i - peak);
    if (dist > best_any) best_any = dist, fallback = i;
    if (ref[i] <= 1e-12 * top && dist > best) best = dist, noise_bin = i;
  }
  if (noise_bin < 0) noise_bin = fallback;

  ExtractOptions extract;
  if (opts.rayleigh_correction) extract.rayleigh_sigma = reconstructed_quadrature_sigma(cfg);

  std::vector<double> peaks(static_cast<std::size_t>(n_trials)), floors(static_cast<std::size_t>(n_trials));
  detail::parallel_for(static_cast<std::size_t>(n_trials), [&](std::size_t t) {
    AcquisitionConfig trial = cfg;
    trial.seed = derive_seed(cfg.seed, t);
    const DepthProfile p = modulated_profile(stream_from_period(trial, period), sys.get(), extract);
    peaks[t] = p.values[peak];
    floors[t] = p.values[noise_bin];
  });

  SnrReport report;
  report.n_trials = n_trials;
  report.mode = cfg.mode;
  report.order = cfg.period_elements();
  report.peak_bin = peak;
  report.noise_bin = noise_bin;
  report.signal_mean = std::accumulate(peaks.begin(), peaks.end(), 0.0) / n_trials;
  const double floor_mean = std::accumulate(floors.begin(), floors.end(), 0.0) / n_trials;
  double ss = 0.0;
  for (double f : floors) ss += (f - floor_mean) * (f - floor_mean);
  report.noise_std = std::sqrt(ss / (n_trials - 1));
  if (report.noise_std > 0) {
    report.snr = report.signal_mean / report.noise_std;
  } else {
    report.snr = kSnrCap;
    report.saturated = true;
  }
  return report;
}

SnrReport measure_snr(const AcquisitionConfig& cfg, const Phantom& ph, int n_trials, const SnrOptions& opts) {
  return measure_snr(cfg, depth_signal(cfg, ph, ph.midpoint_xy()), n_trials, opts);
}

AdvantageCurve multiplexing_advantage(const AcquisitionConfig& base, const Phantom& ph, const std::vector<int>& orders,
                                      int n_trials, SinglePulseReference reference, const SnrOptions& opts) {
  if (orders.empty()) throw Error(ErrorKind::InvalidConfig, "no code orders given");
  AdvantageCurve curve;
  curve.reference = reference;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const int n = orders[i];
    if (!validate_order(n))
      throw Error(ErrorKind::InvalidOrder, "order must be prime and ≡ 3 mod 4 (got " + std::to_string(n) + ")");

    AcquisitionConfig coded = base;
    coded.mode = Mode::Coded;
    coded.code_order = n;
    coded.pulse_interval = 0;
    coded.seed = derive_seed(base.seed, 2 * i);

    AcquisitionConfig single = coded;
    single.mode = Mode::SinglePulse;
    single.seed = derive_seed(base.seed, 2 * i + 1);
    if (reference == SinglePulseReference::MaxRate) {
      const double element_depth = base.sound_speed / base.f_us;
      single.pulse_interval = static_cast<int>(std::ceil(ph.depth_extent / element_depth - 1e-9)) + 1;
    }

    curve.orders.push_back(n);
    curve.coded.push_back(measure_snr(coded, ph, n_trials, opts));
    curve.single.push_back(measure_snr(single, ph, n_trials, opts));
    curve.measured_gain.push_back(curve.coded.back().snr / curve.single.back().snr);
    curve.theoretical_gain.push_back(theoretical_gain(n));
  }
  return curve;
}

namespace {

std::vector<double> axis_positions(double lo, double hi, double step) {
  if (!(step > 0)) throw Error(ErrorKind::InvalidConfig, "scan step must be positive");
  if (hi < lo) throw Error(ErrorKind::InvalidConfig, "scan range is empty");
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> out;
  for (std::int64_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

}  // namespace

std::vector<double> ScanGrid::xs() const { return axis_positions(x_min, x_max, step); }
std::vector<double> ScanGrid::ys() const { return axis_positions(y_min, y_max, step); }

ScanResult scan_2d(const AcquisitionConfig& cfg, const Phantom& ph, const ScanGrid& grid, const ExtractOptions& opts) {
  cfg.validate();
  ph.validate();
  ScanResult out;
  out.xs = grid.xs();
  out.ys = grid.ys();
  for (double x : out.xs)
    if (std::abs(x) > ph.lateral_half_width) throw Error(ErrorKind::OutOfDomain, "scan grid leaves the phantom");
  for (double y : out.ys)
    if (std::abs(y) > ph.lateral_half_width) throw Error(ErrorKind::OutOfDomain, "scan grid leaves the phantom");

  const std::size_t nx = out.xs.size(), ny = out.ys.size();
  const auto sys = system_for(cfg);
  out.stack.resize(static_cast<Eigen::Index>(nx * ny), cfg.period_samples());
  out.bin_width_m = cfg.bin_width_m();
  out.depth_origin_m = 0.5 * out.bin_width_m;

  detail::parallel_for(nx * ny, [&](std::size_t p) {
    AcquisitionConfig at = cfg;
    at.seed = derive_seed(cfg.seed, p);
    const Eigen::Vector2d xy(out.xs[p % nx], out.ys[p / nx]);
    const DepthProfile profile = modulated_profile(simulate_stream(at, ph, xy), sys.get(), opts);
    out.stack.row(static_cast<Eigen::Index>(p)) = profile.values.transpose();
  });

  out.scale = out.stack.maxCoeff();
  if (out.scale > 0) out.stack /= out.scale;

  out.xy_peak.resize(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
  for (std::size_t p = 0; p < nx * ny; ++p)
    out.xy_peak(static_cast<Eigen::Index>(p / nx), static_cast<Eigen::Index>(p % nx)) =
        out.stack.row(static_cast<Eigen::Index>(p)).maxCoeff();

  const double axis_y = 0.5 * (ph.src_pos.y() + ph.det_pos.y());
  Eigen::Index row = 0;
  for (std::size_t j = 1; j < ny; ++j)
    if (std::abs(out.ys[j] - axis_y) < std::abs(out.ys[static_cast<std::size_t>(row)] - axis_y))
      row = static_cast<Eigen::Index>(j);
  out.xz_row = row;
  out.xz_slice = out.stack.middleRows(row * static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx)).transpose();
  return out;
}

double map_snr(const ScanResult& scan, double depth_extent_m, int k) {
  const Eigen::Index nz = scan.xz_slice.rows();
  const Eigen::Index first = static_cast<Eigen::Index>(std::ceil(depth_extent_m / scan.bin_width_m)) + k;
  // Cyclic extraction windows of the last k bins reach the surface.
  const Eigen::Index last = nz - k;
  if (first >= last - 1) throw Error(ErrorKind::InsufficientSamples, "no signal-free depth range in the map");
  const Eigen::MatrixXd tail = scan.xz_slice.middleRows(first, last - first);
  const double mean = tail.mean();
  const double var = (tail.array() - mean).square().sum() / static_cast<double>(tail.size() - 1);
  if (!(var > 0)) return kSnrCap;
  return scan.xz_slice.maxCoeff() / std::sqrt(var);
}

std::vector<double> ridge_depths(const ScanResult& scan, const Phantom& ph, double margin_m) {
  std::vector<double> out;
  const Eigen::Index limit =
      std::min<Eigen::Index>(scan.xz_slice.rows(), static_cast<Eigen::Index>(ph.depth_extent / scan.bin_width_m));
  for (Eigen::Index c = 0; c < scan.xz_slice.cols(); ++c) {
    const double x = scan.xs[static_cast<std::size_t>(c)];
    if (std::abs(x - ph.src_pos.x()) < margin_m || std::abs(x - ph.det_pos.x()) < margin_m) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    Eigen::Index arg = 0;
    scan.xz_slice.col(c).head(limit).maxCoeff(&arg);
    out.push_back(scan.depth_origin_m + static_cast<double>(arg) * scan.bin_width_m);
  }
  return out;
}

}  // namespace ctaoi
