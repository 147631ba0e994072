#include <doctest.h>

#include <cmath>
#include <random>

#include "zeeman/landau_algebra.hpp"

using namespace zeeman;
using cplx = std::complex<double>;

namespace {
const double e = natural_electron_charge();
bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("charge and parameter validation") {
  CHECK(e < 0);
  CHECK(e * e / (4 * M_PI) == doctest::Approx(7.2973525693e-3).epsilon(1e-14));
  CHECK_THROWS_AS((TrapParameters{1, e, 0, 0}.validate(true)), std::invalid_argument);
  CHECK_NOTHROW((TrapParameters{1, e, 0, 0}.validate(false)));
  CHECK_THROWS_AS((TrapParameters{1, -e, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TrapParameters{0, e, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TrapParameters{1, e, -1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((LandauState{-1, 0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((LandauState{0, 0, 0.3}.validate()), std::invalid_argument);
}

TEST_CASE("derived frequencies: limiting cases") {
  auto f = derived_frequencies({1, e, 0.0, 1.7});
  CHECK(f.Omega == 1.7);
  CHECK(f.Delta_R == 1.7);
  CHECK(f.Delta_L == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(f.Lambda == 0.0);

  const double B0 = 0.8;
  f = derived_frequencies({1, e, B0, 0.0});
  CHECK(f.Omega == doctest::Approx(f.Lambda).epsilon(1e-15));
  CHECK(f.Delta_L == 0.0);
  CHECK(f.Delta_R == doctest::Approx(-e * B0).epsilon(1e-15));
}

TEST_CASE("derived frequencies: product and sum identities") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-6, 2);
  for (int k = 0; k < 200; ++k) {
    const TrapParameters p{1, e, std::pow(10, lg(rng)), std::pow(10, lg(rng))};
    const auto f = derived_frequencies(p);
    CHECK(f.Delta_R * f.Delta_L == doctest::Approx(p.omega_H * p.omega_H).epsilon(1e-14));
    CHECK(f.Delta_R + f.Delta_L == doctest::Approx(2 * f.Omega).epsilon(1e-14));
    CHECK(f.Delta_R >= f.Delta_L);
    CHECK(f.Delta_L >= 0);
  }
}

TEST_CASE("state energies") {
  const auto f = derived_frequencies({1, e, 0.3, 0.9});
  CHECK(state_energy({0, 0, 0.5}, f) == f.Omega);
  CHECK(state_energy({2, 1, 0.5}, f) == doctest::Approx(f.Delta_R + 2 * f.Delta_L + f.Omega));
  // omega_H -> 0: Landau levels, degenerate in nu_L
  const double B0 = 0.6;
  const auto g = derived_frequencies({1, e, B0, 0.0});
  for (int nL = 0; nL < 4; ++nL)
    CHECK(state_energy({nL, 2, 0.5}, g) == doctest::Approx(-e * B0 * 2.5).epsilon(1e-14));
}

TEST_CASE("closed-form matrix elements") {
  const auto f = derived_frequencies({1, e, 0.4, 1.1});
  const double m = 1;
  CHECK(close(momentum_matrix_element(Handedness::R, Axis::x, 0, Transition::raise, f, m),
              cplx(0, 0.5 * std::sqrt(m / f.Omega) * f.Delta_R), 1e-15));
  CHECK(close(displacement_matrix_element(Handedness::R, Axis::x, 0, Transition::raise, f, m),
              1 / (2 * std::sqrt(m * f.Omega)), 1e-15));
  CHECK(close(displacement_matrix_element(Handedness::R, Axis::y, 3, Transition::lower, f, m),
              cplx(0, std::sqrt(3.0) / (2 * std::sqrt(m * f.Omega))), 1e-15));
  // both ladders changing, or a spin flip, give zero
  CHECK(momentum_matrix_element({1, 1, 0.5}, {0, 0, 0.5}, Axis::x, f, m) == cplx(0));
  CHECK(displacement_matrix_element({0, 1, 0.5}, {0, 0, -0.5}, Axis::y, f, m) == cplx(0));
  CHECK(close(momentum_matrix_element({2, 0, 0.5}, {3, 0, 0.5}, Axis::y, f, m),
              momentum_matrix_element(Handedness::L, Axis::y, 3, Transition::lower, f, m), 0));
  CHECK_THROWS_AS(momentum_matrix_element(Handedness::R, Axis::x, 0, Transition::lower, f, m),
                  std::invalid_argument);
}

TEST_CASE("Fock oracle: operator identities and spectrum") {
  const TrapParameters p{1, e, 0.7, 0.45};
  const auto f = derived_frequencies(p);
  const auto o = fock_oracle(p, 60, 3);
  CHECK(o.commutator_residual_R <= 1e-12);
  CHECK(o.commutator_residual_L <= 1e-12);
  CHECK(o.hermiticity_residual <= 1e-12);
  CHECK(o.eigenvalues.front() == doctest::Approx(f.Omega).epsilon(1e-10));
  for (int nR = 0; nR <= 3; ++nR)
    for (int nL = 0; nR + nL <= 3; ++nL) {
      const auto* l = o.level(nR, nL);
      REQUIRE(l != nullptr);
      CHECK(std::abs(l->energy - state_energy({nL, nR, 0.5}, f)) <= 1e-10);
    }
}

TEST_CASE("Fock oracle: matrix elements in the circular basis") {
  const TrapParameters p{1, e, 1.9, 0.3};
  const auto f = derived_frequencies(p);
  const auto o = fock_oracle(p, 60, 3);
  const auto* el = o.element(Handedness::L, Axis::x, 0, 3, Transition::lower);
  REQUIRE(el != nullptr);
  CHECK(close(el->pi, momentum_matrix_element(Handedness::L, Axis::x, 3, Transition::lower, f, 1), 1e-10));
  for (const auto& x : o.elements) {
    const int nu = x.i == Handedness::R ? x.nu_R : x.nu_L;
    CHECK(close(x.pi, momentum_matrix_element(x.i, x.axis, nu, x.t, f, 1), 1e-10));
    CHECK(close(x.displacement, displacement_matrix_element(x.i, x.axis, nu, x.t, f, 1), 1e-10));
  }
}

TEST_CASE("Fock oracle: Landau degeneracy returns as omega_H -> 0") {
  const double B0 = 1.0;
  const TrapParameters p{1, e, B0, 1e-4 * (-e * B0 / 2)};
  const auto o = fock_oracle(p, 40, 3);
  for (int nL = 1; nL <= 2; ++nL)
    CHECK(std::abs(o.level(1, nL)->energy - o.level(1, 0)->energy) <= 10 * p.omega_H * nL);
}

TEST_CASE("Fock oracle: truncation guards") {
  CHECK_THROWS_AS(fock_oracle({1, e, 0.2, 1}, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(fock_oracle({1, e, 0.2, 1}, 10, 6), ConvergenceError);
}
