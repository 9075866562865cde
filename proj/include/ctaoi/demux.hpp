#ifndef CTAOI_DEMUX_HPP
#define CTAOI_DEMUX_HPP

#include <vector>

#include <Eigen/Dense>

#include "ctaoi/acquisition.hpp"
#include "ctaoi/circulant.hpp"

namespace ctaoi {

/// Per subset, the frames of consecutive complete code periods.
using InterleavedFrames = std::vector<std::vector<MultiplexedFrame>>;

/// Splits samples into k subsets (subset j holds indices j, j+k, j+2k, ...)
/// and groups each subset into frames of n samples, one per code period of
/// n*k samples. A trailing partial period is discarded.
InterleavedFrames deinterleave(const Eigen::Ref<const Eigen::VectorXd>& samples, int n, int k);

/// As above, after checking that stream.f_s equals k times the carrier
/// frequency recorded in the stream's configuration.
InterleavedFrames deinterleave(const SampledStream& stream, int n, int k);

/// Inverse of deinterleave; returns periods * n * k samples.
Eigen::VectorXd reinterleave(const InterleavedFrames& frames);

/// Solves S x = y for one frame.
Eigen::VectorXd demultiplex_frame(const CirculantSystemd& sys, const MultiplexedFrame& frame);

/// Full interleaved demultiplexing of a coded stream: every subset frame is
/// inverted, the solutions are averaged over complete code periods, and the
/// subsets are merged back in time order. The result is the single-pulse
/// equivalent signal over one period, N*K bins of width c/f_s.
DepthProfile demultiplex_stream(const CirculantSystemd& sys, const SampledStream& stream);

/// Mean over complete periods of period_samples (single-pulse streams).
DepthProfile fold_periods(const SampledStream& stream, int period_samples);

/// Forward operator of demultiplex_stream: given the single-pulse
/// equivalent signal x (N*K samples), returns `periods` repetitions of the
/// coded stream, subset j of each period being S x_j.
Eigen::VectorXd multiplex(const CirculantSystemd& sys, const Eigen::Ref<const Eigen::VectorXd>& x, int k,
                          int periods);

}  // namespace ctaoi

#endif  // CTAOI_DEMUX_HPP
