#ifndef CTAOI_ERROR_HPP
#define CTAOI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ctaoi {

enum class ErrorKind {
  InvalidOrder,
  SingularSystem,
  LengthMismatch,
  OrderTooLarge,
  NonIntegerRatio,
  InsufficientSamples,
  OutOfDomain,
  NyquistViolation,
  NoPeak,
  EdgePeak,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this type; kind() drives the
// CLI exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ctaoi

#endif  // CTAOI_ERROR_HPP
