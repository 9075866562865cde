#include "ctaoi/acquisition.hpp"

#include <cmath>
#include <string>

#include "ctaoi/codes.hpp"
#include "ctaoi/error.hpp"

namespace ctaoi {

int integer_ratio(double f_s, double f_us) {
  if (!(f_s > 0) || !(f_us > 0))
    throw Error(ErrorKind::NonIntegerRatio, "sampling and carrier frequencies must be positive");
  const double ratio = f_s / f_us;
  const double k = std::round(ratio);
  if (k < 1 || std::abs(ratio - k) > 1e-9 * k)
    throw Error(ErrorKind::NonIntegerRatio, "f_s / f_us = " + std::to_string(ratio) + " is not a natural number");
  return static_cast<int>(k);
}

int AcquisitionConfig::subsets() const { return integer_ratio(f_s, f_us); }

int AcquisitionConfig::period_elements() const {
  if (mode == Mode::SinglePulse && pulse_interval > 0) return pulse_interval;
  return code_order;
}

std::int64_t AcquisitionConfig::sample_count() const {
  return static_cast<std::int64_t>(std::llround(duration_s * f_s));
}

void AcquisitionConfig::validate() const {
  if (!(f_us > 0) || !(f_s > 0)) throw Error(ErrorKind::InvalidConfig, "frequencies must be positive");
  subsets();
  if (!(sound_speed > 0) || !(water_sound_speed > 0))
    throw Error(ErrorKind::InvalidConfig, "sound speeds must be positive");
  if (mode == Mode::Coded && !validate_order(code_order))
    throw Error(ErrorKind::InvalidOrder, "order must be prime and ≡ 3 mod 4 (got " + std::to_string(code_order) + ")");
  if (code_order < 1) throw Error(ErrorKind::InvalidConfig, "code_order must be positive");
  if (pulse_interval < 0) throw Error(ErrorKind::InvalidConfig, "pulse_interval must be non-negative");
  if (!(duration_s >= 0)) throw Error(ErrorKind::InvalidConfig, "duration must be non-negative");
  if (!(noise_sigma >= 0)) throw Error(ErrorKind::InvalidConfig, "noise_sigma must be non-negative");
  if (!(modulation_efficiency > 0)) throw Error(ErrorKind::InvalidConfig, "modulation_efficiency must be positive");
  if (!(water_path_m >= 0)) throw Error(ErrorKind::InvalidConfig, "water path must be non-negative");
}

}  // namespace ctaoi
