#ifndef CTAOI_CIRCULANT_HPP
#define CTAOI_CIRCULANT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctaoi/codes.hpp"
#include "ctaoi/detail/bluestein.hpp"
#include "ctaoi/error.hpp"

namespace ctaoi {

enum class InverseKind { Dense, Spectral };

/// The S-matrix of an S-sequence, S(r, i) = bits[(i - r) mod N], together
/// with a solver for S x = y.
///
/// Dense keeps an LU factorization of the explicit matrix and is the
/// reference path. Spectral divides in the Fourier domain: since
/// y[m] = sum_k bits[k] x[(m + k) mod N], Y[f] = conj(C[f]) X[f] where C is
/// the DFT of the generating row. Both kinds are immutable after
/// construction and safe to share between threads.
template <typename Scalar>
class CirculantSystem {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Complex = std::complex<Scalar>;

  CirculantSystem(SSequence seq, InverseKind kind)
      : seq_(std::move(seq)), kind_(kind), dft_(static_cast<std::size_t>(seq_.order())) {
    const int n = seq_.order();
    if (n < 1) throw Error(ErrorKind::SingularSystem, "empty sequence");
    for (int i = 0; i < n; ++i)
      if (seq_[static_cast<std::size_t>(i)]) ones_.push_back(i);

    std::vector<Complex> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = Complex(seq_[static_cast<std::size_t>(i)]);
    dft_.forward(row, spectrum_);
    // The DC term of a binary row is its weight; take it exactly.
    spectrum_[0] = Complex(static_cast<Scalar>(ones_.size()));

    Scalar lo = std::abs(spectrum_[0]), hi = lo;
    for (const auto& c : spectrum_) {
      lo = std::min(lo, std::abs(c));
      hi = std::max(hi, std::abs(c));
    }
    if (!(hi > 0) || lo <= hi * Scalar(1e-10))
      throw Error(ErrorKind::SingularSystem, "circulant of order " + std::to_string(n) + " is singular");
    condition_ = hi / lo;

    if (kind_ == InverseKind::Dense) lu_.compute(seq_.template matrix<Scalar>());
  }

  int order() const { return seq_.order(); }
  InverseKind kind() const { return kind_; }
  const SSequence& sequence() const { return seq_; }
  Matrix matrix() const { return seq_.template matrix<Scalar>(); }

  /// DFT of the generating row (first row of S).
  const std::vector<Complex>& spectrum() const { return spectrum_; }

  /// Ratio of extreme singular values; S is normal, so these are |C[f]|.
  Scalar condition_number() const { return condition_; }

  /// y = S x, column by column, in O(N * weight).
  template <typename Derived>
  Matrix apply(const Eigen::MatrixBase<Derived>& x) const {
    const Eigen::Index n = order();
    check_rows(x.rows());
    Matrix y = Matrix::Zero(n, x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      for (Eigen::Index m = 0; m < n; ++m) {
        Scalar acc(0);
        for (int k : ones_) acc += x((m + k) % n, c);
        y(m, c) = acc;
      }
    return y;
  }

  /// x = S^-1 y, column by column.
  template <typename Derived>
  Matrix solve(const Eigen::MatrixBase<Derived>& y) const {
    check_rows(y.rows());
    if (kind_ == InverseKind::Dense) return lu_.solve(y.template cast<Scalar>());
    const Eigen::Index n = order();
    Matrix x(n, y.cols());
    std::vector<Complex> buf(static_cast<std::size_t>(n)), freq, back;
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      for (Eigen::Index i = 0; i < n; ++i) buf[static_cast<std::size_t>(i)] = Complex(y(i, c));
      dft_.forward(buf, freq);
      for (std::size_t f = 0; f < freq.size(); ++f) freq[f] /= std::conj(spectrum_[f]);
      dft_.inverse(freq, back);
      for (Eigen::Index i = 0; i < n; ++i) x(i, c) = back[static_cast<std::size_t>(i)].real();
    }
    return x;
  }

  /// Numerical S^-1 from the configured solver.
  Matrix inverse() const {
    if (kind_ == InverseKind::Dense) return lu_.inverse();
    return solve(Matrix::Identity(order(), order()));
  }

 private:
  void check_rows(Eigen::Index rows) const {
    if (rows != order())
      throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(order()) + " rows, got " +
                                                 std::to_string(rows));
  }

  SSequence seq_;
  InverseKind kind_;
  detail::Bluestein<Scalar> dft_;
  std::vector<int> ones_;
  std::vector<Complex> spectrum_;
  Scalar condition_ = 0;
  Eigen::PartialPivLU<Matrix> lu_;
};

using CirculantSystemd = CirculantSystem<double>;

template <typename Scalar = double>
CirculantSystem<Scalar> build_system(const SSequence& seq, InverseKind kind) {
  return CirculantSystem<Scalar>(seq, kind);
}

/// Closed-form S-matrix inverse, (2/(N+1)) (2 S^T - J).
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> analytic_inverse(const SSequence& seq) {
  const Eigen::Index n = seq.order();
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix s = seq.template matrix<Scalar>();
  return (Scalar(2) / Scalar(n + 1)) * (Scalar(2) * s.transpose() - Matrix::Ones(n, n));
}

/// max |S^-1 (solver) - closed form| elementwise. The closed form is first
/// multiplied back against S; if that is not the identity the sequence is
/// not an S-sequence and SingularSystem is thrown.
template <typename Scalar>
Scalar analytic_inverse_check(const CirculantSystem<Scalar>& sys) {
  using Matrix = typename CirculantSystem<Scalar>::Matrix;
  const Eigen::Index n = sys.order();
  if (n > kFullCheckOrder)
    throw Error(ErrorKind::OrderTooLarge, "dense inverse check limited to order " +
                                              std::to_string(kFullCheckOrder));
  const Matrix closed = analytic_inverse<Scalar>(sys.sequence());
  const Scalar identity_err = (sys.matrix() * closed - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (identity_err > Scalar(1e-9))
    throw Error(ErrorKind::SingularSystem, "closed-form inverse does not invert S; not an S-sequence");
  return (sys.inverse() - closed).cwiseAbs().maxCoeff();
}

}  // namespace ctaoi

#endif  // CTAOI_CIRCULANT_HPP
