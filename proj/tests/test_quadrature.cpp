#include <doctest.h>

#include <cmath>

#include "zeeman/quadrature.hpp"

using namespace zeeman;

TEST_CASE("polynomials are integrated exactly") {
  auto r = integrate([](double x) { return 3 * x * x - x + 2; }, 0.0, 2.0, 1e-12, 1e-15);
  CHECK(r.value == doctest::Approx(8 - 2 + 4).epsilon(1e-14));
}

TEST_CASE("smooth and endpoint-singular integrands") {
  auto r = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, 1e-12, 1e-16);
  CHECK(r.value == doctest::Approx(1 - std::exp(-50.0)).epsilon(1e-12));
  auto s = integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-14);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("breakpoints at half periods") {
  const double w = 200.0;
  std::vector<double> br{0.0};
  for (int k = 1; k * M_PI / w < 1; ++k) br.push_back(k * M_PI / w);
  br.push_back(1.0);
  auto r = integrate([w](double x) { return x * std::sin(w * x); }, br, 1e-12, 1e-16);
  const double exact = (std::sin(w) - w * std::cos(w)) / (w * w);
  CHECK(std::abs(r.value - exact) < 1e-14);
}

TEST_CASE("non-convergence reports the worst panel") {
  try {
    integrate([](double x) { return std::sin(1 / x); }, 1e-9, 1.0, 1e-14, 1e-18, 3);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.worst_b > e.worst_a);
    CHECK(e.worst_error > 0);
    CHECK(std::isfinite(e.estimate));
  }
}

TEST_CASE("Filon rule against closed forms") {
  for (double w : {60.0, 500.0, 3000.0}) {
    auto r = filon_sin([](double x) { return x * x; }, 0.0, 1.0, w, 1e-12, 1e-16);
    const double exact = (2 * w * std::sin(w) + (2 - w * w) * std::cos(w) - 2) / (w * w * w);
    CHECK(std::abs(r.value - exact) < 1e-12);
  }
}

TEST_CASE("config validation and tail cutoff") {
  QuadratureConfig q;
  CHECK_NOTHROW(q.validate());
  const double T = q.exponent_cutoff(0.0);
  CHECK(std::exp(-T) * std::pow(T, 4) == doctest::Approx(q.abs_tol / 10).epsilon(1e-6));
  CHECK(q.exponent_cutoff(12.0) == 12.0);
  QuadratureConfig bad = q;
  bad.rel_tol = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = q;
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
