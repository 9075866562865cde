#ifndef CTAOI_CODES_HPP
#define CTAOI_CODES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ctaoi {

/// Largest code order accepted by generate_s_sequence.
inline constexpr std::int64_t kMaxCodeOrder = std::int64_t{1} << 20;

/// Orders up to this size are validated with the full S*S^T identity at
/// generation time; larger ones use row weight plus sampled lags.
inline constexpr std::int64_t kFullCheckOrder = 1024;

/// Binary cyclic Simplex code of prime order N = 4m+3.
///
/// Bit convention: bit i is 1 iff i == 0 or i is a nonzero quadratic
/// residue mod N. For N = 7 this gives 1110100. The circulant built from
/// these bits (row r = bits cyclically shifted right by r) satisfies
/// S*S^T = ((N+1)/4)(I + J).
class SSequence {
 public:
  SSequence() = default;

  int order() const { return static_cast<int>(bits_.size()); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  int weight() const;

  /// Cyclic shift: result[i] = bits[(i - shift) mod N].
  SSequence shifted(int shift) const;

  /// Explicit N x N circulant, S(r, i) = bits[(i - r) mod N].
  template <typename Scalar = double>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix() const {
    const Eigen::Index n = order();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> s(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index i = 0; i < n; ++i)
        s(r, i) = static_cast<Scalar>(bits_[static_cast<std::size_t>((i - r + n) % n)]);
    return s;
  }

  /// Single-line text form "N:bbbb...".
  std::string to_text() const;
  static SSequence from_text(std::string_view text);

  /// Wraps raw bits without any validation; callers that need a proper
  /// S-sequence should check satisfies_s_identity().
  static SSequence from_bits_unchecked(std::vector<std::uint8_t> bits);

  friend bool operator==(const SSequence&, const SSequence&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Deterministic primality by trial division; exact for n <= 2^31.
bool is_prime(std::int64_t n);

/// True iff n is prime and n = 3 (mod 4).
bool validate_order(std::int64_t n);

/// { k^2 mod n : k = 1 .. (n-1)/2 }, sorted ascending.
std::vector<std::int64_t> quadratic_residues(std::int64_t n);

SSequence generate_s_sequence(std::int64_t n);

/// Cyclic autocorrelation a[tau] = sum_k bits[k] bits[(k + tau) mod N].
std::vector<std::int64_t> cyclic_autocorrelation(const SSequence& seq);

/// Exact integer check of S*S^T = ((N+1)/4)(I + J).
bool satisfies_s_identity(const SSequence& seq);

}  // namespace ctaoi

#endif  // CTAOI_CODES_HPP
