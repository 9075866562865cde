#include <algorithm>
#include <cmath>
#include <vector>

#include "ctaoi/error.hpp"
#include "ctaoi/fluence.hpp"
#include "doctest.h"

using namespace ctaoi;

namespace {

std::vector<double> depth_grid(double max, int n) {
  std::vector<double> z;
  for (int i = 1; i <= n; ++i) z.push_back(max * i / n);
  return z;
}

// Independent evaluation of the half-space diffusion kernel product for a
// point (x, 0, z) with fibers at (+-s/2, 0, 0). Units: mm and 1/mm.
double oracle_sensitivity(double x_mm, double z_mm, double sep_mm, double mus_mm, double mua_mm) {
  const double mueff = std::sqrt(3 * mua_mm * mus_mm);
  const double lt = 1.0 / (mus_mm + mua_mm);
  const double zb = 2.0 * lt / 3.0;
  auto g = [&](double d) {
    d = std::max(d, lt);
    return std::exp(-mueff * d) / d;
  };
  auto field = [&](double fx) {
    const double r1 = std::hypot(x_mm - fx, z_mm - lt);
    const double r2 = std::hypot(x_mm - fx, z_mm + lt + 2 * zb);
    return g(r1) - g(r2);
  };
  return field(-sep_mm / 2) * field(sep_mm / 2);
}

}  // namespace

TEST_CASE("profile is normalized to peak 1") {
  const Phantom ph;
  const auto z = depth_grid(0.03, 300);
  const auto p = fluence_profile(ph, z);
  CHECK(*std::max_element(p.begin(), p.end()) == doctest::Approx(1.0));
  CHECK(*std::min_element(p.begin(), p.end()) >= 0.0);
}

TEST_CASE("symmetric fibers give a map symmetric about the midplane") {
  const Phantom ph;
  for (double x : {0.5e-3, 2e-3, 6e-3, 9e-3})
    for (double z : {1e-3, 4e-3, 12e-3})
      CHECK(sensitivity(ph, {x, 0}, z) == doctest::Approx(sensitivity(ph, {-x, 0}, z)).epsilon(1e-12));
}

TEST_CASE("stronger absorption decays faster with depth") {
  Phantom weak, strong;
  weak.mu_a = 0.02;
  strong.mu_a = 0.2;
  const std::vector<double> z{4e-3, 10e-3, 20e-3};
  // Normalize both to the shallow point and compare the deep tail.
  const double w = sensitivity(weak, {0, 0}, z[2]) / sensitivity(weak, {0, 0}, z[0]);
  const double s = sensitivity(strong, {0, 0}, z[2]) / sensitivity(strong, {0, 0}, z[0]);
  CHECK(s < w);
}

TEST_CASE("midpoint profile peak matches a dense-grid oracle") {
  Phantom ph;
  ph.mu_s_prime = 15.0;
  ph.mu_a = 0.05;
  const auto z = depth_grid(0.03, 3000);
  const auto p = fluence_profile(ph, z);
  const auto arg = std::max_element(p.begin(), p.end()) - p.begin();
  std::size_t oracle_arg = 0;
  double oracle_best = -1;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = oracle_sensitivity(0.0, z[i] * 1e3, 15.0, 1.5, 0.005);
    if (v > oracle_best) oracle_best = v, oracle_arg = i;
  }
  CHECK(static_cast<std::size_t>(arg) == oracle_arg);
  // The banana bottoms out a few millimetres below the 15 mm fiber pair.
  CHECK(z[oracle_arg] > 2e-3);
  CHECK(z[oracle_arg] < 8e-3);
  for (std::size_t i = 0; i < z.size(); i += 250)
    CHECK(sensitivity(ph, {0, 0}, z[i]) / sensitivity(ph, {0, 0}, z[oracle_arg]) ==
          doctest::Approx(oracle_sensitivity(0, z[i] * 1e3, 15, 1.5, 0.005) / oracle_best).epsilon(1e-9));
}

TEST_CASE("infinite-medium kernel peaks at the surface") {
  Phantom ph;
  ph.model = FluenceModel::InfiniteMedium;
  const auto z = depth_grid(0.03, 300);
  const auto p = fluence_profile(ph, z);
  CHECK(std::max_element(p.begin(), p.end()) - p.begin() == 0);
}

TEST_CASE("positions outside the phantom are rejected") {
  const Phantom ph;
  const std::vector<double> deep{0.031};
  try {
    fluence_profile(ph, deep);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfDomain);
  }
  const std::vector<double> ok{0.01};
  CHECK_THROWS_AS(fluence_profile(ph, Eigen::Vector2d(0.05, 0), ok), Error);
}

TEST_CASE("phantom validation") {
  Phantom ph;
  ph.det_pos.z() = 1e-3;
  CHECK_THROWS_AS(ph.validate(), Error);
  ph = Phantom{};
  ph.mu_s_prime = 0;
  CHECK_THROWS_AS(ph.validate(), Error);
  ph = Phantom{};
  ph.mu_a = -1;
  CHECK_THROWS_AS(ph.validate(), Error);
}
