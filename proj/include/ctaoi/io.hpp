#ifndef CTAOI_IO_HPP
#define CTAOI_IO_HPP

#include <string>

#include <Eigen/Dense>

#include "ctaoi/acquisition.hpp"
#include "ctaoi/codes.hpp"
#include "ctaoi/experiments.hpp"

namespace ctaoi {

// Stream files: one ASCII header line
//   CTAOI-STREAM 1 f_s=<Hz> t0=<s> length=<n> f_us=<Hz> ... seed=<n>\n
// carrying f_s, t0, the sample count and every AcquisitionConfig field as
// key=value, followed by `length` little-endian IEEE-754 float64 samples.
void write_stream_binary(const std::string& path, const SampledStream& stream);
SampledStream read_stream_binary(const std::string& path);

/// sample_index,time_s,amplitude_au
void write_stream_csv(const std::string& path, const SampledStream& stream);

/// depth_m,<column>
void write_profile_csv(const std::string& path, const DepthProfile& profile,
                       const std::string& column = "amplitude_au");

void write_sequence(const std::string& path, const SSequence& seq);
SSequence read_sequence(const std::string& path);

void write_snr_csv(const std::string& path, const AdvantageCurve& curve);
void write_advantage_csv(const std::string& path, const AdvantageCurve& curve);

/// Measured (red) and sqrt(N)/2 (blue) gain against code order.
std::string advantage_svg(const AdvantageCurve& curve);

/// Row-major matrix with a header row of column coordinates and the row
/// coordinate in the first column.
void write_map_csv(const std::string& path, const Eigen::MatrixXd& map, const std::vector<double>& row_coords,
                   const std::string& row_label, const std::vector<double>& col_coords);

/// Binary 8-bit portable graymap (P5) of a map already normalized to peak 1.
/// In decibel mode, 20 log10(v) is mapped from [-db_floor, 0] onto [0, 255].
std::string to_pgm(const Eigen::MatrixXd& normalized, bool decibel = false, double db_floor = 40.0);

void write_text(const std::string& path, const std::string& content);

}  // namespace ctaoi

#endif  // CTAOI_IO_HPP
