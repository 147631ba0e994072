#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "zeeman/special_functions.hpp"

using namespace zeeman;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGamma = 0.57721566490153286061;

// Si(x) by adaptive Gauss-Kronrod on sin(t)/t, one panel per unit of t
double si_oracle(double x) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double s = 0;
  for (double a = 0; a < x; a += 1.0)
    s += GK::integrate([](double t) { return t == 0 ? 1.0 : std::sin(t) / t; }, a,
                       std::min(a + 1.0, x), 15, 1e-15);
  return s - kPi / 2;
}

double ci_oracle(double x) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double s = 0;
  for (double a = 0; a < x; a += 1.0)
    s += GK::integrate([](double t) { return t == 0 ? 0.0 : (std::cos(t) - 1) / t; }, a,
                       std::min(a + 1.0, x), 15, 1e-15);
  return kGamma + std::log(x) + s;
}
} // namespace

TEST_CASE("si at zero and its reflection") {
  CHECK(sine_integral_si(0.0) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  for (double x : {0.3, 2.0, 7.5, 31.0})
    CHECK(std::abs(sine_integral_si(x) + sine_integral_si(-x) + kPi) < 1e-13);
}

TEST_CASE("si and Ci decay like 1/x") {
  for (double x = 10; x < 400; x *= 1.37) {
    CHECK(std::abs(sine_integral_si(x)) <= 2 / x);
    CHECK(std::abs(cosine_integral_Ci(x)) <= 2 / x);
  }
}

TEST_CASE("si and Ci against quadrature oracles") {
  for (double x : {1e-3, 0.2, 1.0, 3.9, 4.1, 12.0, 47.0, 100.0}) {
    CHECK(std::abs(sine_integral_si(x) - si_oracle(x)) < 1e-13);
    CHECK(std::abs(cosine_integral_Ci(x) - ci_oracle(x)) < 1e-13);
  }
}

TEST_CASE("Ci - ln x tends to Euler's constant") {
  CHECK(std::abs(cosine_integral_Ci(1e-8) - std::log(1e-8) - kGamma) < 1e-13);
}

TEST_CASE("Si' = sin x / x and Ci' = cos x / x") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int k = 0; k < 20; ++k) {
    const double x = u(rng), h = 1e-5;
    const double dsi = (sine_integral_Si(x + h) - sine_integral_Si(x - h)) / (2 * h);
    const double dci = (cosine_integral_Ci(x + h) - cosine_integral_Ci(x - h)) / (2 * h);
    CHECK(std::abs(dsi - std::sin(x) / x) < 1e-6);
    CHECK(std::abs(dci - std::cos(x) / x) < 1e-6);
  }
}

TEST_CASE("K1 small-argument limit and monotonicity") {
  CHECK(1e-8 * bessel_K1(1e-8) == doctest::Approx(1.0).epsilon(1e-12));
  double prev = INFINITY;
  for (double x = 1e-3; x < 100; x *= 1.05) {
    const double v = bessel_K1(x);
    CHECK(v > 0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("K1 against its integral representation and a reference implementation") {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double rep = GK::integrate([](double t) { return std::exp(-std::cosh(t)) * std::cosh(t); },
                                   0.0, 7.0, 15, 1e-15);
  CHECK(bessel_K1(1.0) == doctest::Approx(rep).epsilon(1e-13));
  for (double x = 1e-3; x <= 100; x *= 1.7)
    CHECK(bessel_K1(x) == doctest::Approx(boost::math::cyl_bessel_k(1, x)).epsilon(1e-12));
}

TEST_CASE("int_0^inf t^2 K1(t) dt = 2") {
  boost::math::quadrature::exp_sinh<double> es;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double head = GK::integrate([](double t) { return t * t * bessel_K1(t); }, 0.0, 1.0, 15, 1e-15);
  const double tail = es.integrate([](double t) { return t * t * bessel_K1(t); }, 1.0,
                                   std::numeric_limits<double>::infinity());
  CHECK(std::abs(head + tail - 2.0) < 1e-10);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(cosine_integral_Ci(0.0), std::domain_error);
  CHECK_THROWS_AS(cosine_integral_Ci(-1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_K1(0.0), std::domain_error);
  CHECK_THROWS_AS(sine_integral_si(NAN), std::domain_error);
  CHECK_THROWS_AS(sine_integral_si(INFINITY), std::domain_error);
}
