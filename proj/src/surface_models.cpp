#include "zeeman/surface_models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zeeman {

namespace {
std::atomic<bool> g_flip_tm{false};
constexpr cplx I1{0.0, 1.0};
} // namespace

void set_fault_injection(bool flip_tm) { g_flip_tm = flip_tm; }
bool fault_injection() { return g_flip_tm; }

cplx DispersiveResonance::epsilon_at(double w) const {
  if (omega.empty()) throw std::invalid_argument("empty permittivity table");
  if (w <= omega.front()) return eps.front();
  if (w >= omega.back()) return eps.back();
  auto it = std::upper_bound(omega.begin(), omega.end(), w);
  std::size_t j = static_cast<std::size_t>(it - omega.begin());
  double t = (w - omega[j - 1]) / (omega[j] - omega[j - 1]);
  return eps[j - 1] * (1 - t) + eps[j] * t;
}

void validate_surface(const SurfaceModel& s) {
  if (auto nd = std::get_if<NonDispersive>(&s)) {
    if (!std::isfinite(nd->n) || nd->n < 1) throw std::invalid_argument("refractive index must be >= 1");
  } else if (auto dr = std::get_if<DispersiveResonance>(&s)) {
    if (dr->omega.empty() || dr->omega.size() != dr->eps.size())
      throw std::invalid_argument("malformed permittivity table");
    for (std::size_t i = 1; i < dr->omega.size(); ++i)
      if (!(dr->omega[i] > dr->omega[i - 1]))
        throw std::invalid_argument("permittivity table must be strictly ascending in omega");
  }
}

std::string describe_surface(const SurfaceModel& s) {
  if (std::holds_alternative<PerfectReflector>(s)) return "perfect";
  if (auto nd = std::get_if<NonDispersive>(&s)) {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << nd->n;
    return os.str();
  }
  return "dispersive";
}

DispersiveResonance read_permittivity_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open permittivity file: " + path);
  DispersiveResonance d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double w, re, im = 0.0;
    if (!(ls >> w >> re)) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected omega Re(eps) [Im(eps)]");
    ls >> im;
    d.omega.push_back(w);
    d.eps.emplace_back(re, im);
  }
  validate_surface(d);
  return d;
}

DispersiveResonance single_lorentzian(double w0, double wp, double gamma, double w_min,
                                      double w_max, int samples) {
  if (samples < 2 || !(w_max > w_min)) throw std::invalid_argument("bad Lorentzian sampling");
  DispersiveResonance d;
  for (int i = 0; i < samples; ++i) {
    double w = w_min + (w_max - w_min) * i / (samples - 1);
    d.omega.push_back(w);
    d.eps.push_back(1.0 + wp * wp / (w0 * w0 - w * w - I1 * gamma * w));
  }
  return d;
}

cplx kzd(double n, cplx kz, double k_par, KzSegment seg) {
  if (n < 1) throw std::invalid_argument("kzd: n must be >= 1");
  const double c2 = (n * n - 1) * k_par * k_par / (n * n); // branch points at +-i sqrt(c2)
  switch (seg) {
  case KzSegment::real_axis: {
    double r = std::sqrt(n * n * (kz.real() * kz.real() + k_par * k_par) - k_par * k_par);
    return kz.real() < 0 ? -r : r;
  }
  case KzSegment::cut_left:
  case KzSegment::cut_right: {
    // K = sqrt(n^2 (k_z^2 + k_par^2) - k_par^2) with k_z^2 = -kappa^2
    double kap = std::abs(kz.imag());
    double K = std::sqrt(std::max(0.0, n * n * (c2 - kap * kap)));
    // continuity from real k_z of the same sign, in either half plane
    return seg == KzSegment::cut_left ? -K : K;
  }
  default:
    break;
  }
  if (kz == cplx(0.0)) return cplx(std::sqrt(n * n - 1) * k_par, 0.0);
  // n k_z sqrt(1 + c2/k_z^2): principal root puts the cut exactly on the segment
  return n * kz * std::sqrt(1.0 + c2 / (kz * kz));
}

WaveGeometry make_geometry(double n, cplx kz, double k_par, KzSegment seg) {
  WaveGeometry g;
  g.k_par = k_par;
  g.k_z = kz;
  g.k_z_d = kzd(n, kz, k_par, seg);
  cplx w2 = kz * kz + k_par * k_par;
  g.omega = std::sqrt(w2);
  if (seg == KzSegment::real_axis) g.omega = std::abs(g.omega.real());
  return g;
}

FresnelSet fresnel(Polarization lambda, double n, const WaveGeometry& g) {
  const cplx kz = g.k_z, kd = g.k_z_d;
  FresnelSet f;
  cplx den;
  if (lambda == Polarization::TE) {
    den = kz + kd;
    if (den == cplx(0.0)) throw std::domain_error("fresnel: k_z + k_z^d = 0");
    f.R_vac = (kz - kd) / den;
    f.T_vac = 2.0 * kz / den;
  } else {
    den = n * n * kz + kd;
    if (den == cplx(0.0)) throw std::domain_error("fresnel: n^2 k_z + k_z^d = 0");
    f.R_vac = (n * n * kz - kd) / den;
    f.T_vac = 2.0 * n * kz / den;
    if (g_flip_tm) f.R_vac = -f.R_vac;
  }
  f.R_med = -f.R_vac;
  f.T_med = kz == cplx(0.0) ? cplx(0.0) : (kd / kz) * f.T_vac;
  if (kz == cplx(0.0)) {
    // limit k_z -> 0 of (k_z^d/k_z) T_vac
    f.T_med = lambda == Polarization::TE ? 2.0 * kd / (kz + kd) : 2.0 * n * kd / (n * n * kz + kd);
  }
  return f;
}

FresnelSet fresnel_perfect(Polarization lambda) {
  FresnelSet f;
  f.R_vac = lambda == Polarization::TE ? -1.0 : 1.0;
  f.T_vac = 0.0;
  f.R_med = -f.R_vac;
  f.T_med = 0.0;
  return f;
}

double evanescent_identity_residual(Polarization lambda, double n, double k_par, double K) {
  if (n < 1 || k_par < 0 || K < 0) throw std::invalid_argument("evanescent identity: bad input");
  double rad = (n * n - 1) * k_par * k_par - K * K;
  if (rad < -1e-14 * std::max(1.0, K * K))
    throw std::invalid_argument("evanescent identity: K exceeds k_par sqrt(n^2-1)");
  double kap = std::sqrt(std::max(0.0, rad)) / n;
  cplx kz(0.0, -kap);
  auto at = [&](double kd) {
    WaveGeometry g;
    g.k_par = k_par;
    g.k_z = kz;
    g.k_z_d = kd;
    g.omega = std::sqrt(kz * kz + k_par * k_par);
    return fresnel(lambda, n, g);
  };
  FresnelSet minus = at(-K), plus = at(K);
  cplx lhs = minus.R_vac - plus.R_vac;
  cplx rhs;
  if (K == 0.0) {
    rhs = 0.0; // both sides vanish at the branch point
  } else {
    rhs = (kz / cplx(-K)) * minus.T_med * std::conj(minus.T_med);
  }
  return std::abs(lhs - rhs);
}

cplx rescaled_R(Polarization lambda, int sign, double alpha, double n) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("rescaled_R: sign must be +1 or -1");
  if (!std::isfinite(alpha) || alpha < 0) throw std::invalid_argument("rescaled_R: alpha must be >= 0");
  if (sign == 1 && alpha > 1) throw std::invalid_argument("rescaled_R: R+ is defined on [0,1]");
  if (n < 1) throw std::invalid_argument("rescaled_R: n must be >= 1");
  cplx root = std::sqrt(cplx(alpha * alpha + sign * (n * n - 1), 0.0));
  double a = lambda == Polarization::TE ? alpha : n * n * alpha;
  cplx den = a + root;
  if (den == cplx(0.0)) return lambda == Polarization::TE ? -1.0 : 1.0;
  return (a - root) / den;
}

cplx rescaled_R_perfect(Polarization lambda) { return lambda == Polarization::TE ? -1.0 : 1.0; }

CutReflection cut_reflection(double n, double c) {
  const double n2 = n * n, q = std::sqrt(1.0 + (n2 - 1) * c * c), s2 = 1.0 - c * c;
  CutReflection r;
  r.RTE = (1 - q) / (1 + q);
  r.RTM = (n2 - q) / (n2 + q);
  r.dRTE = -2 * (n2 - 1) * s2 / (q * (1 + q) * (1 + q));
  r.dRTM = -2 * n2 * (n2 - 1) * s2 / (q * (n2 + q) * (n2 + q));
  return r;
}

CutReflection cut_reflection_perfect() { return {-1.0, 1.0, 0.0, 0.0}; }

Vec3 polarization_vector(Polarization lambda, double kx, double ky, cplx kz, cplx k) {
  double kp = std::hypot(kx, ky);
  double ux = 1.0, uy = 0.0; // k_x -> 0+ limit direction
  if (kp > 0) {
    ux = kx / kp;
    uy = ky / kp;
  }
  if (lambda == Polarization::TE) return {cplx(uy), cplx(-ux), cplx(0.0)};
  return {ux * kz / k, uy * kz / k, -kp / k};
}

Vec3 mode_function(Region region, double n, double kx, double ky, cplx kz, Polarization lambda,
                   const std::array<double, 3>& r) {
  const double kp = std::hypot(kx, ky);
  WaveGeometry g = make_geometry(n, kz, kp);
  FresnelSet f = fresnel(lambda, n, g);
  const cplx kd = g.k_z_d, w = g.omega;
  const double norm = std::pow(2 * std::numbers::pi, -1.5);
  const cplx phase_par = std::exp(I1 * (kx * r[0] + ky * r[1]));
  auto wave = [&](cplx kzz, cplx kmag, cplx amp) {
    Vec3 e = polarization_vector(lambda, kx, ky, kzz, kmag);
    cplx ph = amp * phase_par * std::exp(I1 * kzz * r[2]);
    return Vec3{e[0] * ph, e[1] * ph, e[2] * ph};
  };
  auto add = [](Vec3 a, const Vec3& b) {
    for (int i = 0; i < 3; ++i) a[i] += b[i];
    return a;
  };
  Vec3 out;
  if (region == Region::vac) {
    if (r[2] < 0) out = add(wave(kz, w, 1.0), wave(-kz, w, f.R_vac));
    else out = wave(kd, n * w, f.T_vac);
  } else {
    if (r[2] > 0) out = add(wave(kd, n * w, 1.0), wave(-kd, n * w, f.R_med));
    else out = wave(kz, w, f.T_med);
    for (auto& v : out) v /= n;
  }
  for (auto& v : out) v *= norm;
  return out;
}

} // namespace zeeman
