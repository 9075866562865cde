#ifndef CTAOI_CONFIG_HPP
#define CTAOI_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ctaoi/acquisition.hpp"
#include "ctaoi/experiments.hpp"
#include "ctaoi/fluence.hpp"

namespace ctaoi {

struct ExperimentConfig {
  int trials = 30;
  std::vector<int> orders{7, 19, 31, 79};
  SinglePulseReference reference = SinglePulseReference::Matched;
  bool rayleigh_correction = false;
};

/// Everything a CLI run needs. Text form is flat key = value lines grouped
/// under [acquisition], [phantom], [experiment], [scan] and [output]; '#'
/// starts a comment. Unknown sections or keys are rejected.
struct RunConfig {
  AcquisitionConfig acquisition;
  Phantom phantom;
  std::optional<Eigen::Vector2d> axis_xy;  // transducer axis; midpoint when unset
  ExperimentConfig experiment;
  ScanGrid scan;
  std::string output_dir;

  Eigen::Vector2d resolved_axis() const { return axis_xy.value_or(phantom.midpoint_xy()); }

  /// Re-checks acquisition and phantom invariants; throws InvalidConfig.
  void validate() const;
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

/// Canonical text with every key resolved. Parsing it back yields an equal
/// configuration (numbers use shortest round-trip formatting).
std::string format_run_config(const RunConfig& cfg);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

std::vector<int> parse_int_list(std::string_view text);

}  // namespace ctaoi

#endif  // CTAOI_CONFIG_HPP
