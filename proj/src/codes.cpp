#include "ctaoi/codes.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "ctaoi/error.hpp"

namespace ctaoi {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::NonIntegerRatio: return "NonIntegerRatio";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NyquistViolation: return "NyquistViolation";
    case ErrorKind::NoPeak: return "NoPeak";
    case ErrorKind::EdgePeak: return "EdgePeak";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

int SSequence::weight() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

SSequence SSequence::shifted(int shift) const {
  const int n = order();
  std::vector<std::uint8_t> out(bits_.size());
  const int s = ((shift % n) + n) % n;
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>((i + s) % n)] = bits_[static_cast<std::size_t>(i)];
  return from_bits_unchecked(std::move(out));
}

std::string SSequence::to_text() const {
  std::string out = std::to_string(order());
  out.push_back(':');
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

SSequence SSequence::from_text(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::InvalidConfig, "sequence text must look like N:bits");
  std::int64_t n = 0;
  const auto head = text.substr(0, colon);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), n);
  if (ec != std::errc{} || ptr != head.data() + head.size())
    throw Error(ErrorKind::InvalidConfig, "bad sequence order '" + std::string(head) + "'");
  const auto body = text.substr(colon + 1);
  if (static_cast<std::int64_t>(body.size()) != n)
    throw Error(ErrorKind::LengthMismatch, "sequence declares order " + std::to_string(n) +
                                               " but carries " + std::to_string(body.size()) + " bits");
  std::vector<std::uint8_t> bits;
  bits.reserve(body.size());
  for (char c : body) {
    if (c != '0' && c != '1') throw Error(ErrorKind::InvalidConfig, "sequence bits must be 0 or 1");
    bits.push_back(c == '1');
  }
  return from_bits_unchecked(std::move(bits));
}

SSequence SSequence::from_bits_unchecked(std::vector<std::uint8_t> bits) {
  SSequence s;
  s.bits_ = std::move(bits);
  return s;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

bool validate_order(std::int64_t n) { return n >= 3 && n % 4 == 3 && is_prime(n); }

std::vector<std::int64_t> quadratic_residues(std::int64_t n) {
  if (n < 3 || n % 2 == 0 || !is_prime(n))
    throw Error(ErrorKind::InvalidOrder, "quadratic residues need an odd prime, got " + std::to_string(n));
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>((n - 1) / 2));
  for (std::int64_t k = 1; k <= (n - 1) / 2; ++k) out.push_back((k * k) % n);
  std::sort(out.begin(), out.end());
  // k and n-k give the same square, so k = 1..(n-1)/2 already hits each residue once.
  return out;
}

std::vector<std::int64_t> cyclic_autocorrelation(const SSequence& seq) {
  const std::size_t n = seq.bits().size();
  std::vector<std::int64_t> ac(n, 0);
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < n; ++i)
    if (seq[i]) ones.push_back(i);
  for (std::size_t a : ones)
    for (std::size_t b : ones) ac[(b + n - a) % n] += 1;
  return ac;
}

bool satisfies_s_identity(const SSequence& seq) {
  const std::int64_t n = seq.order();
  if (n < 3 || (n + 1) % 4 != 0) return false;
  // (S S^T)(r, c) depends only on (c - r) for a circulant, so the identity is
  // equivalent to a two-level cyclic autocorrelation.
  const auto ac = cyclic_autocorrelation(seq);
  if (ac[0] != (n + 1) / 2) return false;
  return std::all_of(ac.begin() + 1, ac.end(), [n](std::int64_t v) { return v == (n + 1) / 4; });
}

namespace {

bool spot_check(const SSequence& seq) {
  const std::int64_t n = seq.order();
  if (seq.weight() != (n + 1) / 2) return false;
  const auto& bits = seq.bits();
  const std::int64_t lags[] = {1, 2, 3, 5, 7, n / 3, n / 2, n - 1};
  for (std::int64_t lag : lags) {
    std::int64_t acc = 0;
    for (std::int64_t k = 0; k < n; ++k)
      acc += bits[static_cast<std::size_t>(k)] & bits[static_cast<std::size_t>((k + lag) % n)];
    if (acc != (n + 1) / 4) return false;
  }
  return true;
}

}  // namespace

SSequence generate_s_sequence(std::int64_t n) {
  if (!validate_order(n))
    throw Error(ErrorKind::InvalidOrder, "order must be prime and ≡ 3 mod 4 (got " + std::to_string(n) + ")");
  if (n > kMaxCodeOrder)
    throw Error(ErrorKind::InvalidOrder, "order " + std::to_string(n) + " exceeds the supported maximum 2^20");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  bits[0] = 1;
  for (std::int64_t r : quadratic_residues(n)) bits[static_cast<std::size_t>(r)] = 1;
  auto seq = SSequence::from_bits_unchecked(std::move(bits));
  const bool ok = n <= kFullCheckOrder ? satisfies_s_identity(seq) : spot_check(seq);
  if (!ok) throw Error(ErrorKind::SingularSystem, "generated sequence failed the S-matrix identity");
  return seq;
}

}  // namespace ctaoi
