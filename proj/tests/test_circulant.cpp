#include <cmath>
#include <random>

#include "ctaoi/circulant.hpp"
#include "ctaoi/error.hpp"
#include "doctest.h"

using namespace ctaoi;

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("order 3 dense inverse matches the hand-computed matrix") {
  // S for 110: rows 110, 011, 101. S^-1 = (1/2)(2 S^T - J).
  const CirculantSystemd sys(generate_s_sequence(3), InverseKind::Dense);
  Eigen::Matrix3d s;
  s << 1, 1, 0, 0, 1, 1, 1, 0, 1;
  CHECK(sys.matrix() == Eigen::MatrixXd(s));
  Eigen::Matrix3d inv;
  inv << 1, -1, 1, 1, 1, -1, -1, 1, 1;
  inv *= 0.5;
  CHECK((sys.inverse() - inv).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((s * inv - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spectrum: DC equals weight, other bins have |C|^2 = (N+1)/4") {
  for (int n : {7, 19, 79, 1019}) {
    const CirculantSystemd sys(generate_s_sequence(n), InverseKind::Spectral);
    const auto& c = sys.spectrum();
    CHECK(c[0].real() == doctest::Approx((n + 1) / 2.0));
    for (std::size_t f = 1; f < c.size(); ++f) CHECK(std::norm(c[f]) == doctest::Approx((n + 1) / 4.0).epsilon(1e-9));
  }
  const CirculantSystemd seven(generate_s_sequence(7), InverseKind::Spectral);
  CHECK(seven.spectrum()[0].real() == 4.0);
}

TEST_CASE("spectrum agrees with a direct O(N^2) DFT") {
  const SSequence seq = generate_s_sequence(43);
  const CirculantSystemd sys(seq, InverseKind::Spectral);
  for (int f = 0; f < 43; ++f) {
    std::complex<double> acc = 0;
    for (int k = 0; k < 43; ++k) acc += double(seq[k]) * std::polar(1.0, -2.0 * M_PI * f * k / 43.0);
    CHECK(std::abs(acc - sys.spectrum()[static_cast<std::size_t>(f)]) < 1e-10);
  }
}

TEST_CASE("condition number matches singular values of the dense matrix") {
  for (int n : {3, 7, 19, 79}) {
    const CirculantSystemd sys(generate_s_sequence(n), InverseKind::Dense);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix());
    const auto& sv = svd.singularValues();
    const double oracle = sv(0) / sv(sv.size() - 1);
    CHECK(sys.condition_number() == doctest::Approx(oracle).epsilon(1e-9));
    // Singular values are (N+1)/2 once and sqrt(N+1)/2 otherwise.
    CHECK(oracle == doctest::Approx(std::sqrt(n + 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("demultiplex_frame recovers unit impulses and the all-ones vector") {
  for (auto kind : {InverseKind::Dense, InverseKind::Spectral}) {
    for (int n : {3, 7, 79}) {
      const CirculantSystemd sys(generate_s_sequence(n), kind);
      for (int k = 0; k < n; k += std::max(1, n / 7)) {
        const Eigen::VectorXd e = Eigen::VectorXd::Unit(n, k);
        CHECK((sys.solve(sys.apply(e)) - e).cwiseAbs().maxCoeff() < 1e-10);
      }
      const Eigen::VectorXd x = sys.solve(Eigen::VectorXd::Ones(n));
      CHECK((x.array() - 2.0 / (n + 1)).abs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("apply matches the explicit matrix product") {
  std::mt19937_64 rng(11);
  const CirculantSystemd sys(generate_s_sequence(31), InverseKind::Spectral);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(31, 4);
  CHECK((sys.apply(x) - sys.matrix() * x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("round trip and dense/spectral agreement on random inputs") {
  std::mt19937_64 rng(2024);
  for (int n : {3, 7, 19, 79, 1019}) {
    const SSequence seq = generate_s_sequence(n);
    const CirculantSystemd dense(seq, InverseKind::Dense);
    const CirculantSystemd spectral(seq, InverseKind::Spectral);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd x = random_vector(rng, n);
      const Eigen::VectorXd y = dense.apply(x);
      const Eigen::VectorXd xd = dense.solve(y);
      const Eigen::VectorXd xs = spectral.solve(y);
      CHECK(rel_err(xd, x) < 1e-9);
      CHECK(rel_err(xs, x) < 1e-9);
      CHECK(rel_err(xs, xd) < 1e-8);
    }
  }
}

TEST_CASE("linearity and cyclic shift equivariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int n : {7, 23, 79}) {
    const CirculantSystemd sys(generate_s_sequence(n), InverseKind::Spectral);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd y1 = random_vector(rng, n), y2 = random_vector(rng, n);
      const double a = coef(rng), b = coef(rng);
      const Eigen::VectorXd lhs = sys.solve(a * y1 + b * y2);
      const Eigen::VectorXd rhs = a * sys.solve(y1) + b * sys.solve(y2);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);

      // y -> y[(m + 1) mod N] maps x -> x[(i + 1) mod N].
      Eigen::VectorXd y_shift(n), x_shift(n);
      const Eigen::VectorXd x = sys.solve(y1);
      for (int m = 0; m < n; ++m) y_shift[m] = y1[(m + 1) % n];
      for (int i = 0; i < n; ++i) x_shift[i] = x[(i + 1) % n];
      CHECK((sys.solve(y_shift) - x_shift).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("analytic inverse check") {
  CHECK(analytic_inverse_check(CirculantSystemd(generate_s_sequence(3), InverseKind::Dense)) < 1e-12);
  CHECK(analytic_inverse_check(CirculantSystemd(generate_s_sequence(7), InverseKind::Dense)) < 1e-12);
  CHECK(analytic_inverse_check(CirculantSystemd(generate_s_sequence(79), InverseKind::Dense)) < 1e-10);
  CHECK(analytic_inverse_check(CirculantSystemd(generate_s_sequence(79), InverseKind::Spectral)) < 1e-10);
  try {
    analytic_inverse_check(CirculantSystemd(generate_s_sequence(1031), InverseKind::Spectral));
    FAIL("expected OrderTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderTooLarge);
  }
}

TEST_CASE("closed-form inverse is verified against S before use") {
  // Invertible but not an S-sequence: the closed form does not apply.
  auto bits = generate_s_sequence(7).bits();
  bits[1] = 0;
  const CirculantSystemd sys(SSequence::from_bits_unchecked(bits), InverseKind::Dense);
  try {
    analytic_inverse_check(sys);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularSystem);
  }
}

TEST_CASE("singular sequences and mismatched frames are rejected") {
  try {
    CirculantSystemd sys(SSequence::from_bits_unchecked({0, 0, 0, 0, 0, 0, 0}), InverseKind::Spectral);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularSystem);
  }
  CHECK_THROWS_AS(CirculantSystemd(SSequence::from_bits_unchecked({1, 1, 1, 1}), InverseKind::Dense), Error);
  const CirculantSystemd sys(generate_s_sequence(7), InverseKind::Dense);
  try {
    sys.solve(Eigen::VectorXd::Ones(6));
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("single-precision system") {
  const CirculantSystem<float> sys(generate_s_sequence(19), InverseKind::Spectral);
  const Eigen::VectorXf x = Eigen::VectorXf::LinSpaced(19, 0.0f, 1.0f);
  CHECK((sys.solve(sys.apply(x)) - x).cwiseAbs().maxCoeff() < 1e-5f);
}

TEST_CASE("noise propagation follows the row norms of S^-1") {
  constexpr int n = 19;
  constexpr int trials = 10000;
  constexpr double sigma = 0.7;
  const CirculantSystemd sys(generate_s_sequence(n), InverseKind::Spectral);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, sigma);
  Eigen::MatrixXd y(n, trials);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = noise(rng);
  const Eigen::MatrixXd x = sys.solve(y);
  const Eigen::VectorXd mean = x.rowwise().mean();
  const Eigen::MatrixXd centered = x.colwise() - mean;
  const Eigen::VectorXd measured = (centered.rowwise().squaredNorm() / (trials - 1)).cwiseSqrt();
  const Eigen::MatrixXd dense_inverse = CirculantSystemd(generate_s_sequence(n), InverseKind::Dense).inverse();
  for (int i = 0; i < n; ++i) {
    const double predicted = sigma * dense_inverse.row(i).norm();
    CHECK(predicted == doctest::Approx(sigma * 2.0 * std::sqrt(n) / (n + 1)).epsilon(1e-9));
    CHECK(std::abs(measured[i] / predicted - 1.0) < 0.05);
  }
}
