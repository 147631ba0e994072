#include "zeeman/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zeeman {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEuler = 0.57721566490153286061;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(name) + ": non-finite argument");
}

double si_series(double x) {
  // sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
  double x2 = x * x, term = x, sum = x;
  for (int k = 1; k < 60; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1));
    double add = term / (2.0 * k + 1);
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return sum;
}

double ci_series(double x) {
  // gamma + ln x + sum (-1)^k x^{2k} / (2k (2k)!)
  double x2 = x * x, term = 1.0, sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= -x2 / ((2.0 * k - 1) * (2.0 * k));
    double add = term / (2.0 * k);
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return kEuler + std::log(x) + sum;
}

// E1(ix) by modified Lentz continued fraction; E1(ix) = -Ci(x) + i si(x).
std::complex<double> e1_imag(double x) {
  using C = std::complex<double>;
  const double tiny = 1e-300;
  C b(1.0, x);
  C c = 1.0 / tiny;
  C d = 1.0 / b;
  C h = d;
  for (int i = 2; i < 500; ++i) {
    double a = -static_cast<double>(i - 1) * (i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  return C(std::cos(x), -std::sin(x)) * h;
}

} // namespace

double sine_integral_Si(double x) {
  require_finite(x, "Si");
  double ax = std::abs(x), s;
  if (ax <= kSiCiSeriesLimit) s = si_series(ax);
  else s = std::numbers::pi / 2 + e1_imag(ax).imag();
  return x < 0 ? -s : s;
}

double sine_integral_si(double x) {
  require_finite(x, "si");
  double ax = std::abs(x);
  if (ax > kSiCiSeriesLimit) {
    // direct large-argument form avoids the pi/2 cancellation
    double s = e1_imag(ax).imag();
    return x < 0 ? -std::numbers::pi - s : s;
  }
  return sine_integral_Si(x) - std::numbers::pi / 2;
}

double cosine_integral_Ci(double x) {
  require_finite(x, "Ci");
  if (!(x > 0)) throw std::domain_error("Ci: argument must be > 0");
  if (x <= kSiCiSeriesLimit) return ci_series(x);
  return -e1_imag(x).real();
}

double bessel_K1(double x) {
  require_finite(x, "K1");
  if (!(x > 0)) throw std::domain_error("K1: argument must be > 0");
  if (x <= kK1SeriesLimit) {
    // K1 = 1/x + ln(x/2) I1(x) - (x/4) sum [psi(k+1)+psi(k+2)] (x^2/4)^k / (k!(k+1)!)
    double q = 0.25 * x * x;
    double t = 1.0;                 // (x^2/4)^k / (k!(k+1)!)
    double psi1 = -kEuler;          // psi(k+1)
    double psi2 = 1.0 - kEuler;     // psi(k+2)
    double i1 = 0.0, s = 0.0;
    for (int k = 0; k < 60; ++k) {
      i1 += t;
      double add = (psi1 + psi2) * t;
      s += add;
      if (k > 2 && t < kEps * i1 && std::abs(add) < kEps * std::abs(s)) break;
      t *= q / ((k + 1.0) * (k + 2.0));
      psi1 += 1.0 / (k + 1);
      psi2 += 1.0 / (k + 2);
    }
    i1 *= 0.5 * x;
    return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * s;
  }
  // Steed's continued fraction (Temme) for K_0 and K_1
  double b = 2.0 * (1.0 + x), d = 1.0 / b, h = d, delh = d;
  double q1 = 0.0, q2 = 1.0, a1 = 0.25, q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 1000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  return k0 * (x + 0.5 - h) / x;
}

} // namespace zeeman
