#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zeeman/closed_forms.hpp"
#include "zeeman/shift_engine.hpp"
#include "zeeman/units.hpp"

using namespace zeeman;

namespace {
constexpr double kPi = std::numbers::pi;
const double e = natural_electron_charge();
} // namespace

TEST_CASE("F: nu enters linearly") {
  for (double th : {0.3, 2.0, 17.0})
    for (int nu = 0; nu <= 3; ++nu) {
      const double expect =
          -kPi * nu * ((3 - th * th) * std::cos(th) + 3 * th * std::sin(th));
      CHECK(F(th, nu) - F(th, 0) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("F: small and large arguments") {
  for (int nu = 0; nu <= 3; ++nu) {
    for (double th = 1e-6; th <= 0.01; th *= 1.7)
      CHECK(std::abs(F(th, nu) - F_small(th, nu)) <= 10 * th * th);
    // constant frozen from a calibration run over [50, 500]: max |F - F_large| theta^3 = 48.1
    for (double th = 50; th <= 500; th += 3.1)
      CHECK(std::abs(F(th, nu) - F_large(th, nu)) <= 100 / (th * th * th));
  }
  CHECK(std::abs(F(20, 1) - F_large(20, 1)) <= 100 / 8000.0);
  CHECK_THROWS_AS(F(0.0, 0), std::domain_error);
  CHECK_THROWS_AS(F(1.0, -1), std::domain_error);
}

TEST_CASE("perfect reflector: pieces add up") {
  const TrapParameters p{1, e, 0.2, 0.8};
  const auto f = derived_frequencies(p);
  for (double d : {0.1, 1.0, 30.0})
    for (int a = 0; a <= 2; ++a) {
      const LandauState st{a, 2 - a, 0.5};
      const double sum = perfect_Cdelta(st, f, d, 1, e) + perfect_Cprime(st, f, d, 1, e) +
                         perfect_spinflip(d, p.B0, 1, e);
      const double total = perfect_reflector_shift(st, f, d, p.B0, 1, e);
      CHECK(sum == doctest::Approx(total).epsilon(1e-13));
    }
}

TEST_CASE("perfect reflector: small zeta expansion") {
  const TrapParameters p{1, e, 1e-3, 1e-3};
  const auto f = derived_frequencies(p);
  const double d = 1.0, z = -d;
  double bracket = -4 * z * e * p.B0;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i);
    bracket += handedness_sign(i) * D / f.Omega * (-1.5 * kPi + 2 * D * d);
  }
  const double approx = -e * e * bracket / (128 * kPi * kPi * z * z * z);
  const double exact = perfect_reflector_shift({0, 0, 0.5}, f, d, p.B0, 1, e);
  CHECK(exact == doctest::Approx(approx).epsilon(1e-4));
}

TEST_CASE("perfect reflector: B0 = 0 antisymmetry and spin-flip linearity") {
  const auto f0 = derived_frequencies({1, e, 0.0, 1.3});
  for (double d : {0.5, 4.0})
    CHECK(perfect_reflector_shift({1, 3, 0.5}, f0, d, 0.0, 1, e) ==
          doctest::Approx(-perfect_reflector_shift({3, 1, 0.5}, f0, d, 0.0, 1, e)).epsilon(1e-12));
  CHECK(perfect_spinflip(2.0, 0.4, 1, e) == 2 * perfect_spinflip(2.0, 0.2, 1, e));
}

TEST_CASE("asymptotic shift: zeros and the perfect-reflector limit") {
  const TrapParameters p{1, e, 0.01, 1.0};
  const auto f = derived_frequencies(p);
  const double d = 40.0;
  CHECK(asymptotic_dielectric_shift({0, 0, 0.5}, p, d, NonDispersive{2.0}).value == 0.0);
  CHECK(asymptotic_dielectric_shift({1, 2, 0.5}, p, d, NonDispersive{1.0}).value == 0.0);
  // K = 1 reproduces the theta^2 cos(theta) part of the pole term
  const LandauState st{2, 1, 0.5};
  double lead = 0;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i), th = 2 * D * d;
    lead += handedness_sign(i) * D * st.nu(i) * th * th * std::cos(th);
  }
  lead *= e * e / (128 * kPi * f.Omega * d * d * d);
  const auto a = asymptotic_dielectric_shift(st, p, d, PerfectReflector{});
  CHECK(a.value == doctest::Approx(lead).epsilon(1e-12));
  CHECK_FALSE(a.regime_warning);
  CHECK(asymptotic_dielectric_shift(st, p, 2.0, PerfectReflector{}).regime_warning);
  CHECK(pole_leading_form(st, f, d, 1.0, 1, e) == doctest::Approx(a.value).epsilon(1e-12));
}

TEST_CASE("asymptotic shift matches the engine's pole sector at large zeta") {
  const TrapParameters p{1, e, 1e-3 / std::abs(e), 1.0};
  const auto f = derived_frequencies(p);
  const LandauState st{0, 1, 0.5};
  const double zeta = 32 * kPi, d = zeta / f.Delta_R; // crest of cos(2 zeta)
  const auto a = asymptotic_dielectric_shift(st, p, d, NonDispersive{2.0});
  const auto ps = pole_sector(st, f, NonDispersive{2.0}, d, QuadratureConfig{}, 1, e);
  CHECK(std::abs((ps.first + ps.second) / a.value - 1) <= 0.05);
}

TEST_CASE("complex permittivity uses the real part of the reflection factor") {
  DispersiveResonance dr{{0.5, 1.5}, {cplx(4.0, 1.0), cplx(4.0, 1.0)}};
  const auto raw = raw_reflection_factor(dr, 1.0);
  const auto sq = std::sqrt(cplx(4.0, 1.0));
  CHECK(std::abs(raw - (sq - 1.0) / (sq + 1.0)) < 1e-15);
  CHECK(reflection_factor(dr, 1.0) == raw.real());
  CHECK(reflection_factor(NonDispersive{3.0}, 1.0) == doctest::Approx(0.5));
  CHECK(reflection_factor(PerfectReflector{}, 1.0) == 1.0);
  // the factor changes sharply on resonance
  const auto lor = single_lorentzian(1.0, 0.8, 0.02, 0.5, 1.5, 201);
  CHECK(std::abs(reflection_factor(lor, 0.9) - reflection_factor(lor, 1.0)) > 0.3);
  const TrapParameters p{1, e, 0.01, 0.9};
  const auto a = asymptotic_dielectric_shift({0, 1, 0.5}, p, 50.0, lor);
  CHECK(a.K == a.raw_factor.real());
  CHECK(std::isfinite(a.value));
}

TEST_CASE("naive magnetic moment") {
  CHECK(naive_magnetic_moment({0, 0, 0.5}, 1.0, 30.0, 0.3, 1, e).value == 0.0);
  CHECK(naive_magnetic_moment({1, 1, 0.5}, 1.0, 30.0, 0.0, 1, e).value == 0.0);
  CHECK(naive_magnetic_moment({1, 1, 0.5}, 1.0, 30.0, 0.3, 1, e).non_physical);
  // finite-difference oracle on the asymptotic shift
  const double wH = 1.0, d = 37.3, B = 1e-8 * wH / std::abs(e);
  for (LandauState st : {LandauState{0, 1, 0.5}, LandauState{2, 1, 0.5}, LandauState{3, 0, 0.5}}) {
    const SurfaceModel s = NonDispersive{2.0};
    const double E1 = asymptotic_dielectric_shift(st, {1, e, B, wH}, d, s).value;
    const double E0 = asymptotic_dielectric_shift(st, {1, e, 0.0, wH}, d, s).value;
    const double mm = naive_magnetic_moment(st, wH, d, 1.0 / 3, 1, e).value;
    CHECK(-(E1 - E0) / B == doctest::Approx(mm).epsilon(1e-4));
  }
}

TEST_CASE("splitting ratio: definition, SI path and the atomic-scale estimate") {
  const TrapParameters p{1, e, 0.02, 1.0};
  const LandauState st{1, 3, 0.5};
  const double d = 25.0;
  const double r = splitting_ratio_asymptotic(st, p, d, NonDispersive{2.0});
  const double a = asymptotic_dielectric_shift(st, p, d, NonDispersive{2.0}).value;
  CHECK(r == doctest::Approx(2 * a / (std::abs(e) * p.B0)).epsilon(1e-14));
  CHECK_THROWS_AS(splitting_ratio_asymptotic(st, {1, e, 0.0, 1.0}, d, PerfectReflector{}),
                  std::invalid_argument);

  const double B = 1.0, dm = 10e-6, wH = 1e15;
  const TrapParameters ps{1, e, units::tesla_to_natural(B), units::rad_per_s_to_natural(wH)};
  const double nat = splitting_ratio_asymptotic({0, 10, 0.5}, ps, units::meters_to_natural(dm), PerfectReflector{});
  const double si = splitting_ratio_asymptotic_si(0, 10, B, dm, wH, 1.0);
  CHECK(nat == doctest::Approx(si).epsilon(1e-12));
  const auto f = derived_frequencies(ps);
  const double zR = f.Delta_R * units::meters_to_natural(dm);
  CHECK(zR > 28);
  CHECK(zR < 36);
  const double amp = std::abs(si / std::cos(2 * zR));
  CHECK(amp > 1e-11 / 3);
  CHECK(amp < 3e-11);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime_si(1.0, 10e-6, 1e5).tag == RegimeTag::SmallTrap);
  CHECK(classify_regime_si(1.0, 10e-6, 1e15).tag == RegimeTag::LargeTrap);
  CHECK(classify_regime_si(1e-3, 10e-6, 1e11).tag == RegimeTag::IntermediateTrap);
  const double wc = units::kConstants.e / units::kConstants.m_e;
  CHECK(classify_regime_si(1.0, 10e-6, wc).tag == RegimeTag::Ambiguous);
  CHECK(classify_regime_si(1.0, 1.0, 1e5).tag == RegimeTag::OutsideWeakField);
  const TrapParameters p{1, e, 1e-2, 1e-5};
  const auto r = classify_regime(p, 1.0);
  CHECK(r.tag == RegimeTag::SmallTrap);
  CHECK(r.cyclotron == doctest::Approx(std::abs(e) * 1e-2));
  CHECK(classify_regime({1, e, 1e-6, 1e-3}, 1.0).tag == RegimeTag::IntermediateTrap);
  CHECK(r.inverse_distance == 1.0);
  CHECK(std::string(regime_name(RegimeTag::LargeTrap)) == "LargeTrap");
  CHECK_THROWS_AS(classify_regime(p, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("intermediate-regime estimate") {
  const TrapParameters p{1, e, 1e-4, 0.01};
  const double a = intermediate_trap_estimate({1, 2, 0.5}, p, 3.0);
  CHECK(a == doctest::Approx(3 * e * e * e * p.B0 * 4 / (256 * kPi * p.omega_H * 27.0)));
  CHECK(intermediate_trap_estimate({1, 2, 0.5}, {1, e, 2e-4, 0.01}, 3.0) == doctest::Approx(2 * a));
}

TEST_CASE("free-electron limit") {
  const double d = 1.0;
  // perfect reflector: B0 derivative of the small-theta closed form at omega_H = 0
  const double B = 1e-4;
  auto small = [&](double Bv) {
    const auto f = derived_frequencies({1, e, Bv, 0.0});
    const double z = -d;
    double bracket = -4 * z * e * Bv;
    bracket += (f.Delta_R / f.Omega) * F_small(2 * f.Delta_R * d, 0);
    return -e * e * bracket / (128 * kPi * kPi * z * z * z);
  };
  const double deriv = (small(2 * B) - small(B)) / B;
  const double an = free_limit_analytic(PerfectReflector{}, d, 1, e);
  CHECK(an == doctest::Approx(-e * e * e / (32 * kPi * kPi * d * d)).epsilon(1e-13));
  CHECK(deriv == doctest::Approx(an).epsilon(1e-9));

  for (auto s : {SurfaceModel{PerfectReflector{}}, SurfaceModel{NonDispersive{2.0}}}) {
    const auto c = free_limit_moment_check(s, B, d, 1, e);
    CHECK(c.numeric == doctest::Approx(c.analytic).epsilon(1e-3));
  }
  const auto n2 = free_limit_moment_check(NonDispersive{2.0}, B, d, 1, e);
  CHECK(std::isfinite(n2.numeric));
  CHECK(n2.numeric * n2.analytic > 0);
  const auto one = free_limit_moment_check(NonDispersive{1.0}, B, d, 1, e);
  CHECK(one.numeric == 0.0);
  CHECK(one.analytic == 0.0);
  CHECK_THROWS_AS(free_limit_moment_check(PerfectReflector{}, 0.0, d, 1, e), std::invalid_argument);
}

TEST_CASE("units round trip") {
  for (double x : {1e-9, 3.7, 2e14}) {
    CHECK(units::natural_to_tesla(units::tesla_to_natural(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(units::natural_to_meters(units::meters_to_natural(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(units::natural_to_rad_per_s(units::rad_per_s_to_natural(x)) == doctest::Approx(x).epsilon(1e-12));
  }
  // cyclotron frequency of 1 T
  const double wc = std::abs(e) * units::tesla_to_natural(1.0) * units::frequency_unit();
  CHECK(wc == doctest::Approx(1.75882001076e11).epsilon(1e-10));
}
