#include "zeeman/shift_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zeeman {

namespace {

constexpr double kPi = std::numbers::pi;

CutReflection cut_R(const Reflector& r, double c) {
  return r.perfect ? cut_reflection_perfect() : cut_reflection(r.n, c);
}

double rplus(const Reflector& r, Polarization p, double x) {
  return r.perfect ? rescaled_R_perfect(p).real() : rescaled_R(p, +1, x, r.n).real();
}

double rminus_re(const Reflector& r, Polarization p, double y) {
  return r.perfect ? rescaled_R_perfect(p).real() : rescaled_R(p, -1, y, r.n).real();
}

void check_distance(double d) {
  if (!(d > 0) || !std::isfinite(d)) throw std::invalid_argument("distance must be > 0");
}

// int_0^1 g(x) sin(2 zeta x) dx
QuadResult oscillatory_x(const std::function<double(double)>& g, double zeta,
                         const QuadratureConfig& q) {
  const double w = 2 * zeta;
  if (q.oscillatory_strategy == OscillatoryStrategy::filon && zeta > 50)
    return filon_sin(g, 0.0, 1.0, w, q.rel_tol, q.abs_tol);
  std::vector<double> br{0.0};
  const double half = kPi / w;
  for (int k = 1; k * half < 1.0; ++k) br.push_back(k * half);
  br.push_back(1.0);
  return integrate([&](double x) { return g(x) * std::sin(w * x); }, br, q.rel_tol, q.abs_tol,
                   q.max_subdivisions);
}

// int_0^inf g(y) e^{-2 zeta y} dy via t = 2 zeta y, split at the R- branch point
QuadResult damped_y(const std::function<double(double)>& g, double zeta, double y_branch,
                    const QuadratureConfig& q) {
  const double T = q.exponent_cutoff(q.y_upper_cutoff), s = 2 * zeta;
  std::vector<double> br{0.0};
  if (y_branch > 0 && s * y_branch < T) br.push_back(s * y_branch);
  br.push_back(T);
  auto res = integrate([&](double t) { return std::exp(-t) * g(t / s); }, br, q.rel_tol,
                       q.abs_tol * s, q.max_subdivisions);
  res.value /= s;
  res.error /= s;
  return res;
}

QuadResult combine(const QuadResult& a, double sa, const QuadResult& b, double sb) {
  QuadResult r;
  r.value = sa * a.value + sb * b.value;
  r.error = std::abs(sa) * a.error + std::abs(sb) * b.error;
  r.evaluations = a.evaluations + b.evaluations;
  return r;
}

// I(a) = g0 * atan(1/a)/a + int_0^1 h(c) c^2/(c^2+a^2) dc
double split_c_integral(double g0, const std::function<double(double)>& h, double a,
                        const QuadratureConfig& q, double& err) {
  std::vector<double> br{0.0};
  if (a < 0.5) {
    br.push_back(a);
    if (4 * a < 1) br.push_back(4 * a);
  }
  br.push_back(1.0);
  auto res = integrate([&](double c) { return h(c) * (c * c / (c * c + a * a)); }, br,
                       0.1 * q.rel_tol, 0.1 * q.abs_tol, q.max_subdivisions);
  err += res.error;
  return g0 * std::atan(1.0 / a) / a + res.value;
}

// int_0^T t e^{-t} I(2 zeta / t) dt
QuadResult cut_outer(const std::function<double(double, double&)>& inner, double zeta,
                     const QuadratureConfig& q) {
  const double T = q.exponent_cutoff(q.kpar_upper_cutoff);
  std::vector<double> br{0.0};
  if (2 * zeta < T) br.push_back(2 * zeta);
  br.push_back(T);
  double inner_err = 0.0;
  auto res = integrate(
      [&](double t) {
        if (t <= 0) return 0.0;
        double e = 0.0;
        double v = t * std::exp(-t) * inner(2 * zeta / t, e);
        inner_err = std::max(inner_err, t * std::exp(-t) * e);
        return v;
      },
      br, q.rel_tol, q.abs_tol, q.max_subdivisions);
  res.error += inner_err * T;
  return res;
}

} // namespace

void ShiftBreakdown::recompute_total() { total = E1 + E2B + E2E_pole + E2E_cut + Q1_pole + Q1_cut + Q2; }

ShiftBreakdown ShiftBreakdown::for_spin(double sigma_z) const {
  if (sigma_z != 1.0 && sigma_z != -1.0) throw std::invalid_argument("sigma_z must be +-1");
  ShiftBreakdown b = *this;
  for (double* v : {&b.E1, &b.E2B, &b.E2E_pole, &b.E2E_cut, &b.Q1_pole, &b.Q1_cut, &b.Q2,
                    &b.total, &b.E2E_branch_point})
    *v *= sigma_z;
  return b;
}

Reflector reflector_of(const SurfaceModel& s) {
  validate_surface(s);
  if (std::holds_alternative<PerfectReflector>(s)) return {true, 1.0};
  if (auto nd = std::get_if<NonDispersive>(&s)) return {false, nd->n};
  throw std::invalid_argument("dispersive surfaces are only supported by the asymptotic formula");
}

namespace brackets {

QuadResult pole_E(const Reflector& r, double zeta, const QuadratureConfig& q) {
  auto x = oscillatory_x(
      [&](double x) { return rplus(r, Polarization::TE, x) - x * x * rplus(r, Polarization::TM, x); },
      zeta, q);
  double yb = r.perfect ? 0.0 : std::sqrt(r.n * r.n - 1);
  auto y = damped_y(
      [&](double y) {
        return rminus_re(r, Polarization::TE, y) + y * y * rminus_re(r, Polarization::TM, y);
      },
      zeta, yb, q);
  return combine(x, 1.0, y, -1.0);
}

QuadResult pole_Q(const Reflector& r, double zeta, const QuadratureConfig& q) {
  auto x = oscillatory_x([&](double x) { return (x * x - 1) * rplus(r, Polarization::TE, x); },
                         zeta, q);
  double yb = r.perfect ? 0.0 : std::sqrt(r.n * r.n - 1);
  auto y = damped_y([&](double y) { return (y * y + 1) * rminus_re(r, Polarization::TE, y); },
                    zeta, yb, q);
  return combine(x, 1.0, y, 1.0);
}

QuadResult cut_E(const Reflector& r, double zeta, const QuadratureConfig& q) {
  // g(c) = R_TM - c^2 R_TE = g0 + c^2 h(c)
  double g0, n2 = r.n * r.n;
  std::function<double(double)> h;
  if (r.perfect) {
    g0 = 1.0;
    h = [](double) { return 1.0; };
  } else {
    g0 = (n2 - 1) / (n2 + 1);
    h = [n2](double c) {
      double qq = std::sqrt(1 + (n2 - 1) * c * c);
      double rte = -(n2 - 1) * c * c / ((1 + qq) * (1 + qq));
      return -2 * n2 * (n2 - 1) / ((1 + qq) * (n2 + qq) * (n2 + 1)) - rte;
    };
  }
  auto res = cut_outer([&](double a, double& e) { return split_c_integral(g0, h, a, q, e); }, zeta, q);
  res.value *= 0.5;
  res.error *= 0.5;
  return res;
}

QuadResult cut_Q(const Reflector& r, double zeta, const QuadratureConfig& q) {
  // g(c) = (1 - c^2) R_TE = g0 + c^2 h(c)
  double g0, n2 = r.n * r.n;
  std::function<double(double)> h;
  if (r.perfect) {
    g0 = -1.0;
    h = [](double) { return 1.0; };
  } else {
    g0 = 0.0;
    h = [n2](double c) {
      double qq = std::sqrt(1 + (n2 - 1) * c * c);
      return -(1 - c * c) * (n2 - 1) / ((1 + qq) * (1 + qq));
    };
  }
  auto res = cut_outer([&](double a, double& e) { return split_c_integral(g0, h, a, q, e); }, zeta, q);
  res.value *= 0.25;
  res.error *= 0.25;
  return res;
}

namespace {
// The kappa integral factorizes for the Delta-independent terms:
//   d^2 int dk k int_C' P e/omega   = (1/2) int_0^1 P/kappa^2 dc
//   d^2 int dk k int_C' P e/omega^3 = int_0^1 [p - A/2] dc,  p = P/kappa^2, A = P_kappa/kappa - p
// where the second form is the integrated-by-parts (finite part) value.
double c_integral(const std::function<double(double)>& g, const QuadratureConfig& q) {
  return integrate(g, 0.0, 1.0, 0.01 * q.rel_tol, 0.01 * q.abs_tol, q.max_subdivisions).value;
}
} // namespace

double spin_E1(const Reflector& r, const QuadratureConfig& q) {
  return c_integral(
      [&](double c) {
        auto R = cut_R(r, c);
        double p = (2 - c * c) * R.RTM;
        double A = 2 * R.RTM + (2 - c * c) * R.dRTM - p;
        return 0.5 * R.RTE + p - 0.5 * A;
      },
      q);
}

double spin_E2B(const Reflector& r, const QuadratureConfig& q) {
  return c_integral(
      [&](double c) {
        auto R = cut_R(r, c);
        double p = R.RTE - c * c * R.RTM;
        double A = 2 * R.RTE + R.dRTE - 2 * R.RTM - c * c * R.dRTM - p;
        return p - 0.5 * A;
      },
      q);
}

FreeLimitIntegrals free_limit(const Reflector& r, const QuadratureConfig& q) {
  FreeLimitIntegrals out;
  out.I_E = c_integral(
      [&](double c) {
        auto R = cut_R(r, c);
        double p = R.RTM, A = 2 * R.RTM + R.dRTM - p;
        return 0.5 * R.RTE + p - 0.5 * A;
      },
      q);
  out.I_Q = c_integral(
      [&](double c) {
        auto R = cut_R(r, c);
        double s2 = 1 - c * c, p = s2 * R.RTE, A = s2 * R.dRTE - p;
        return p - 0.5 * A;
      },
      q);
  out.I_S = c_integral(
      [&](double c) {
        auto R = cut_R(r, c);
        double s2 = 1 - c * c, p = s2 * (R.RTE + 2 * R.RTM), A = s2 * (R.dRTE + 2 * R.dRTM) - p;
        return p - 0.5 * A;
      },
      q);
  return out;
}

} // namespace brackets

SectorResult pole_sector(const LandauState& st, const DerivedFrequencies& f,
                         const SurfaceModel& s, double d, const QuadratureConfig& q, double m,
                         double e) {
  st.validate();
  check_distance(d);
  q.validate();
  Reflector r = reflector_of(s);
  SectorResult out;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const int nu = st.nu(i);
    const double D = delta(f, i);
    if (nu == 0 || D == 0) continue; // the pole term carries an explicit factor nu_i
    const double zeta = D * d;
    const double pre = handedness_sign(i) * std::pow(D, 4) * nu * e * e / (m * m * f.Omega);
    auto bE = brackets::pole_E(r, zeta, q);
    auto bQ = brackets::pole_Q(r, zeta, q);
    out.first += pre / (32 * kPi) * bE.value;
    out.second += pre / (16 * kPi) * bQ.value;
    out.error += std::abs(pre) * (bE.error / (32 * kPi) + bQ.error / (16 * kPi));
  }
  return out;
}

SectorResult cut_sector(const LandauState& st, const DerivedFrequencies& f,
                        const SurfaceModel& s, double d, const QuadratureConfig& q, double m,
                        double e) {
  st.validate();
  check_distance(d);
  q.validate();
  Reflector r = reflector_of(s);
  SectorResult out;
  if (!r.perfect && r.n == 1.0) return out;
  for (Handedness i : {Handedness::R, Handedness::L}) {
    const double D = delta(f, i);
    if (D == 0) continue;
    const double zeta = D * d;
    const double pre = handedness_sign(i) * D * D * e * e / (m * m * f.Omega * d * d);
    auto jE = brackets::cut_E(r, zeta, q);
    auto jQ = brackets::cut_Q(r, zeta, q);
    out.first += -pre / (64 * kPi * kPi) * jE.value;
    out.second += pre / (16 * kPi * kPi) * jQ.value;
    out.error += std::abs(pre) * (jE.error / (64 * kPi * kPi) + jQ.error / (16 * kPi * kPi));
  }
  return out;
}

SectorResult spin_flip_sector(const DerivedFrequencies&, const SurfaceModel& s, double d,
                              const QuadratureConfig& q, double B0, double m, double e) {
  check_distance(d);
  q.validate();
  Reflector r = reflector_of(s);
  SectorResult out;
  if (!r.perfect && r.n == 1.0) return out;
  const double pre = e * e * e * B0 / (32 * kPi * kPi * m * m * m * d * d);
  out.first = pre * brackets::spin_E1(r, q);
  out.second = pre * brackets::spin_E2B(r, q);
  out.error = std::abs(pre) * q.rel_tol * (std::abs(out.first) + std::abs(out.second));
  return out;
}

double q2_sector() { return 0.0; }

double q2_validation_residual(double n, double k_par) {
  WaveGeometry g = make_geometry(n, cplx(0.0, -k_par), k_par, KzSegment::between_branch_points);
  return std::abs(fresnel(Polarization::TE, n, g).R_vac);
}

double e2e_branch_point(const LandauState& st, const DerivedFrequencies& f,
                        const SurfaceModel& s, double d, double m, double e) {
  Reflector r = reflector_of(s);
  const double rtm = r.perfect ? 1.0 : (r.n * r.n - 1) / (r.n * r.n + 1);
  double sum = 0.0;
  for (Handedness i : {Handedness::R, Handedness::L})
    sum += handedness_sign(i) * delta(f, i) * (2.0 * st.nu(i) + 1);
  return e * e * rtm * sum / (256 * kPi * m * m * f.Omega * d * d * d);
}

ShiftBreakdown total_shift(const LandauState& st, const TrapParameters& p, const SurfaceModel& s,
                           double d, const QuadratureConfig& q) {
  p.validate(true);
  const DerivedFrequencies f = derived_frequencies(p);
  ShiftBreakdown b;
  auto pole = pole_sector(st, f, s, d, q, p.m, p.e);
  auto cut = cut_sector(st, f, s, d, q, p.m, p.e);
  auto spin = spin_flip_sector(f, s, d, q, p.B0, p.m, p.e);
  b.E2E_pole = pole.first;
  b.Q1_pole = pole.second;
  b.E2E_cut = cut.first;
  b.Q1_cut = cut.second;
  b.E1 = spin.first;
  b.E2B = spin.second;
  b.Q2 = q2_sector();
  b.recompute_total();
  b.E2E_branch_point = e2e_branch_point(st, f, s, d, p.m, p.e);
  b.error_estimate = pole.error + cut.error + spin.error;
  return b;
}

double zeeman_splitting_ratio(const LandauState& st, const TrapParameters& p,
                              const SurfaceModel& s, double d, const QuadratureConfig& q) {
  if (!(p.B0 > 0)) throw std::invalid_argument("splitting ratio needs B0 > 0");
  auto b = total_shift(st, p, s, d, q);
  return 2 * b.total * p.m / (std::abs(p.e) * p.B0);
}

} // namespace zeeman
