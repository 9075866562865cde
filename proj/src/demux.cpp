#include "ctaoi/demux.hpp"

#include <string>

#include "ctaoi/detail/parallel.hpp"
#include "ctaoi/error.hpp"

namespace ctaoi {

InterleavedFrames deinterleave(const Eigen::Ref<const Eigen::VectorXd>& samples, int n, int k) {
  if (n < 1 || k < 1) throw Error(ErrorKind::InvalidConfig, "order and subset count must be positive");
  const Eigen::Index period = static_cast<Eigen::Index>(n) * k;
  if (samples.size() < period)
    throw Error(ErrorKind::InsufficientSamples, "need at least " + std::to_string(period) +
                                                    " samples for one code period, got " +
                                                    std::to_string(samples.size()));
  const Eigen::Index periods = samples.size() / period;
  InterleavedFrames out(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    auto& subset = out[static_cast<std::size_t>(j)];
    subset.reserve(static_cast<std::size_t>(periods));
    for (Eigen::Index p = 0; p < periods; ++p) {
      MultiplexedFrame frame{Eigen::VectorXd(n), j};
      for (int m = 0; m < n; ++m) frame.values[m] = samples[p * period + static_cast<Eigen::Index>(m) * k + j];
      subset.push_back(std::move(frame));
    }
  }
  return out;
}

InterleavedFrames deinterleave(const SampledStream& stream, int n, int k) {
  if (integer_ratio(stream.f_s, stream.config.f_us) != k)
    throw Error(ErrorKind::NonIntegerRatio, "stream rate is not " + std::to_string(k) + " x f_us");
  return deinterleave(stream.samples, n, k);
}

Eigen::VectorXd reinterleave(const InterleavedFrames& frames) {
  const int k = static_cast<int>(frames.size());
  if (k == 0) return {};
  const std::size_t periods = frames[0].size();
  const Eigen::Index n = periods ? frames[0][0].values.size() : 0;
  for (const auto& subset : frames) {
    if (subset.size() != periods) throw Error(ErrorKind::LengthMismatch, "subsets differ in frame count");
    for (const auto& f : subset)
      if (f.values.size() != n) throw Error(ErrorKind::LengthMismatch, "frames differ in length");
  }
  const Eigen::Index period = n * k;
  Eigen::VectorXd out(static_cast<Eigen::Index>(periods) * period);
  for (int j = 0; j < k; ++j)
    for (std::size_t p = 0; p < periods; ++p)
      for (Eigen::Index m = 0; m < n; ++m)
        out[static_cast<Eigen::Index>(p) * period + m * k + j] = frames[static_cast<std::size_t>(j)][p].values[m];
  return out;
}

Eigen::VectorXd demultiplex_frame(const CirculantSystemd& sys, const MultiplexedFrame& frame) {
  if (frame.values.size() != sys.order())
    throw Error(ErrorKind::LengthMismatch, "frame length " + std::to_string(frame.values.size()) +
                                               " does not match code order " + std::to_string(sys.order()));
  return sys.solve(frame.values);
}

DepthProfile demultiplex_stream(const CirculantSystemd& sys, const SampledStream& stream) {
  const int k = integer_ratio(stream.f_s, stream.config.f_us);
  const int n = sys.order();
  const Eigen::Index period = static_cast<Eigen::Index>(n) * k;
  if (stream.samples.size() < period)
    throw Error(ErrorKind::InsufficientSamples, "stream shorter than one code period");
  const Eigen::Index periods = stream.samples.size() / period;

  DepthProfile profile;
  profile.values = Eigen::VectorXd::Zero(period);
  profile.bin_width_m = stream.config.sound_speed / stream.f_s;
  profile.depth_origin_m = 0.0;

  detail::parallel_for(static_cast<std::size_t>(k), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    Eigen::MatrixXd y(n, periods);
    for (Eigen::Index p = 0; p < periods; ++p)
      for (int m = 0; m < n; ++m) y(m, p) = stream.samples[p * period + static_cast<Eigen::Index>(m) * k + j];
    const Eigen::VectorXd mean = sys.solve(y).rowwise().mean();
    for (int m = 0; m < n; ++m) profile.values[static_cast<Eigen::Index>(m) * k + j] = mean[m];
  });
  return profile;
}

DepthProfile fold_periods(const SampledStream& stream, int period_samples) {
  if (period_samples < 1) throw Error(ErrorKind::InvalidConfig, "period must be positive");
  if (stream.samples.size() < period_samples)
    throw Error(ErrorKind::InsufficientSamples, "stream shorter than one repetition period");
  const Eigen::Index periods = stream.samples.size() / period_samples;
  const Eigen::Map<const Eigen::MatrixXd> folded(stream.samples.data(), period_samples, periods);
  DepthProfile profile;
  profile.values = folded.rowwise().mean();
  profile.bin_width_m = stream.config.sound_speed / stream.f_s;
  return profile;
}

Eigen::VectorXd multiplex(const CirculantSystemd& sys, const Eigen::Ref<const Eigen::VectorXd>& x, int k,
                          int periods) {
  const int n = sys.order();
  const Eigen::Index period = static_cast<Eigen::Index>(n) * k;
  if (x.size() != period)
    throw Error(ErrorKind::LengthMismatch, "profile must have N*K = " + std::to_string(period) + " samples");
  Eigen::VectorXd one(period);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd xj(n);
    for (int m = 0; m < n; ++m) xj[m] = x[static_cast<Eigen::Index>(m) * k + j];
    const Eigen::VectorXd yj = sys.apply(xj);
    for (int m = 0; m < n; ++m) one[static_cast<Eigen::Index>(m) * k + j] = yj[m];
  }
  return one.replicate(periods, 1);
}

}  // namespace ctaoi
