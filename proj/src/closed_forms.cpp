#include "zeeman/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "zeeman/shift_engine.hpp"
#include "zeeman/special_functions.hpp"
#include "zeeman/units.hpp"

namespace zeeman {

namespace {
constexpr double kPi = std::numbers::pi;

void check_distance(double d) {
  if (!(d > 0) || !std::isfinite(d)) throw std::invalid_argument("distance must be > 0");
}
} // namespace

double F(double theta, int nu) {
  if (!(theta > 0)) throw std::domain_error("F: theta must be > 0");
  if (nu < 0) throw std::domain_error("F: nu must be >= 0");
  const double c = std::cos(theta), s = std::sin(theta), t2 = theta * theta;
  return -theta + cosine_integral_Ci(theta) * (3 * theta * c - (3 - t2) * s) +
         (sine_integral_si(theta) - kPi * nu) * ((3 - t2) * c + 3 * theta * s);
}

double F_small(double theta, int nu) { return -3 * kPi * (nu + 0.5) + 2 * theta; }

double F_large(double theta, int nu) {
  const double c = std::cos(theta), s = std::sin(theta);
  return kPi * nu * (theta * theta * c - 3 * theta * s - 3 * c) - 8 / theta;
}

double perfect_Cdelta(const LandauState& st, const DerivedFrequencies& f, double d, double m,
                      double e) {
  st.validate();
  check_distance(d);
  double sum = 0.0;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i), th = 2 * D * d;
    if (st.nu(i) == 0 || D == 0) continue;
    sum += handedness_sign(i) * D * st.nu(i) *
           ((3 - th * th) * std::cos(th) + 3 * th * std::sin(th));
  }
  return -e * e * sum / (128 * kPi * m * m * f.Omega * d * d * d);
}

double perfect_Cprime(const LandauState& st, const DerivedFrequencies& f, double d, double m,
                      double e) {
  st.validate();
  check_distance(d);
  double sum = 0.0;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i);
    if (D == 0) continue;
    sum += handedness_sign(i) * D * F(2 * D * d, 0);
  }
  return e * e * sum / (128 * kPi * kPi * m * m * f.Omega * d * d * d);
}

double perfect_spinflip(double d, double B0, double m, double e) {
  check_distance(d);
  return e * e * e * B0 / (32 * kPi * kPi * m * m * m * d * d);
}

double perfect_reflector_shift(const LandauState& st, const DerivedFrequencies& f, double d,
                               double B0, double m, double e) {
  st.validate();
  check_distance(d);
  const double z = -d;
  double bracket = -4 * z * e * B0 / m;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i);
    if (D == 0) continue; // Delta F(2 Delta d) -> 0
    bracket += handedness_sign(i) * (D / f.Omega) * F(-2 * z * D, st.nu(i));
  }
  return -e * e * bracket / (128 * kPi * kPi * m * m * z * z * z);
}

std::complex<double> raw_reflection_factor(const SurfaceModel& s, double omega_H) {
  validate_surface(s);
  if (std::holds_alternative<PerfectReflector>(s)) return 1.0;
  if (auto nd = std::get_if<NonDispersive>(&s)) return (nd->n - 1) / (nd->n + 1);
  const auto& dr = std::get<DispersiveResonance>(s);
  const auto sq = std::sqrt(dr.epsilon_at(omega_H));
  return (sq - 1.0) / (sq + 1.0);
}

double reflection_factor(const SurfaceModel& s, double omega_H) {
  return raw_reflection_factor(s, omega_H).real();
}

double pole_leading_form(const LandauState& st, const DerivedFrequencies& f, double d, double K,
                         double m, double e) {
  check_distance(d);
  double sum = 0.0;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i), zeta = D * d;
    sum += handedness_sign(i) * st.nu(i) * D * D * zeta * std::cos(2 * zeta);
  }
  return e * e * K * sum / (32 * kPi * m * m * f.Omega * d * d);
}

AsymptoticShift asymptotic_dielectric_shift(const LandauState& st, const TrapParameters& p,
                                            double d, const SurfaceModel& s) {
  st.validate();
  p.validate(true);
  check_distance(d);
  const auto f = derived_frequencies(p);
  AsymptoticShift out;
  out.raw_factor = raw_reflection_factor(s, p.omega_H);
  out.K = out.raw_factor.real();
  double sum = 0.0, min_zeta = INFINITY;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    if (st.nu(i) == 0) continue;
    const double D = delta(f, i);
    min_zeta = std::min(min_zeta, D * d);
    sum += handedness_sign(i) * st.nu(i) * D * D * D * std::cos(2 * D * d);
  }
  out.value = p.e * p.e * out.K * sum / (32 * kPi * p.m * p.m * d * f.Omega);
  if (min_zeta < 10) {
    out.regime_warning = true;
    char buf[128];
    std::snprintf(buf, sizeof buf, "asymptotic form used at zeta = %.3g < 10", min_zeta);
    out.warning = buf;
  }
  return out;
}

MagneticMoment naive_magnetic_moment(const LandauState& st, double omega_H, double d, double K,
                                     double m, double e) {
  st.validate();
  check_distance(d);
  MagneticMoment mm;
  const double w = omega_H;
  mm.value = e * e * e * (st.nu_L + st.nu_R) * K * w / (64 * kPi * m * m * m) *
             (3 * std::cos(2 * w * d) / d - 2 * w * std::sin(2 * w * d));
  mm.note = "oscillates in d without decay; not a physical moment in the large-trap regime";
  return mm;
}

double splitting_ratio_asymptotic(const LandauState& st, const TrapParameters& p, double d,
                                  const SurfaceModel& s) {
  if (!(p.B0 > 0)) throw std::invalid_argument("splitting ratio needs B0 > 0");
  const auto a = asymptotic_dielectric_shift(st, p, d, s);
  return 2 * a.value * p.m / (std::abs(p.e) * p.B0);
}

double splitting_ratio_asymptotic_si(int nu_L, int nu_R, double B0_tesla, double d_m,
                                     double omega_H_si, double K) {
  if (!(B0_tesla > 0)) throw std::invalid_argument("splitting ratio needs B0 > 0");
  check_distance(d_m);
  LandauState st{nu_L, nu_R, 0.5};
  st.validate();
  const auto& C = units::kConstants;
  const double Lam = C.e * B0_tesla / (2 * C.m_e);
  const double Om = std::hypot(omega_H_si, Lam);
  const double DR = Om + Lam, DL = omega_H_si * omega_H_si / DR;
  const double bracket = nu_R * DR * DR * DR * std::cos(2 * DR * d_m / C.c) -
                         nu_L * DL * DL * DL * std::cos(2 * DL * d_m / C.c);
  // |e| hbar/(16 pi eps0 m c^4 B0 Omega d), with e^2/(4 pi eps0 hbar c) written as alpha
  const double pre = 4 * kPi * C.alpha * C.hbar * C.hbar /
                     (16 * kPi * C.e * C.m_e * C.c * C.c * C.c * B0_tesla * Om * d_m);
  return pre * K * bracket;
}

const char* regime_name(RegimeTag t) {
  switch (t) {
  case RegimeTag::SmallTrap: return "SmallTrap";
  case RegimeTag::IntermediateTrap: return "IntermediateTrap";
  case RegimeTag::LargeTrap: return "LargeTrap";
  case RegimeTag::Ambiguous: return "Ambiguous";
  case RegimeTag::OutsideWeakField: return "OutsideWeakField";
  }
  return "?";
}

namespace {
AsymptoticRegime classify(double wH, double wc, double wd, double thr) {
  if (!(thr > 1)) throw std::invalid_argument("regime threshold must be > 1");
  AsymptoticRegime r{RegimeTag::Ambiguous, wH, wc, wd};
  auto ll = [thr](double a, double b) { return a * thr <= b; };
  if (!ll(wc, wd)) {
    r.tag = RegimeTag::OutsideWeakField;
    return r;
  }
  if (ll(wH, wc)) r.tag = RegimeTag::SmallTrap;
  else if (ll(wc, wH) && ll(wH, wd)) r.tag = RegimeTag::IntermediateTrap;
  else if (ll(wd, wH)) r.tag = RegimeTag::LargeTrap;
  return r;
}
} // namespace

AsymptoticRegime classify_regime(const TrapParameters& p, double d, double threshold) {
  p.validate(false);
  check_distance(d);
  return classify(p.omega_H, std::abs(p.e) * p.B0 / p.m, 1 / d, threshold);
}

AsymptoticRegime classify_regime_si(double B0_tesla, double d_m, double omega_H_si,
                                    double threshold) {
  check_distance(d_m);
  if (B0_tesla < 0 || omega_H_si < 0) throw std::invalid_argument("negative rate");
  const auto& C = units::kConstants;
  return classify(omega_H_si, C.e * B0_tesla / C.m_e, C.c / d_m, threshold);
}

double intermediate_trap_estimate(const LandauState& st, const TrapParameters& p, double d) {
  st.validate();
  p.validate(true);
  check_distance(d);
  if (!(p.omega_H > 0)) throw std::invalid_argument("intermediate estimate needs omega_H > 0");
  return 3 * p.e * p.e * p.e * p.B0 * (st.nu_R + st.nu_L + 1) /
         (256 * kPi * p.m * p.m * p.m * p.omega_H * d * d * d);
}

double free_limit_analytic(const SurfaceModel& s, double d, double m, double e,
                           const QuadratureConfig& q) {
  check_distance(d);
  const Reflector r = reflector_of(s);
  const auto I = brackets::free_limit(r, q);
  return e * e * e * (I.I_S - I.I_E + 2 * I.I_Q) / (32 * kPi * kPi * m * m * m * d * d);
}

FreeLimitCheck free_limit_moment_check(const SurfaceModel& s, double B0, double d, double m,
                                       double e, const QuadratureConfig& q) {
  if (!(B0 > 0)) throw std::invalid_argument("free-limit check needs B0 > 0");
  check_distance(d);
  reflector_of(s);
  const LandauState ground{0, 0, 0.5};
  auto shift = [&](double B) {
    TrapParameters p{m, e, B, 1e-4 * std::abs(e) * B / (2 * m)};
    return total_shift(ground, p, s, d, q).total;
  };
  auto central = [&](double h) { return (shift(B0 * (1 + h)) - shift(B0 * (1 - h))) / (2 * h * B0); };
  FreeLimitCheck out;
  out.numeric = (4 * central(0.25) - central(0.5)) / 3;
  out.analytic = free_limit_analytic(s, d, m, e, q);
  return out;
}

} // namespace zeeman
