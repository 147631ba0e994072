#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeeman {

enum class OscillatoryStrategy { adaptive_subdivision_per_halfperiod, filon };

//! Tolerances and cutoffs for every integral in the shift engine.
//! abs_tol is applied to dimensionless integrals (energies in units of
//! e^2/(m^2 |z|^3) or e^3 B0/(m^3 z^2)). A cutoff of 0 means "derive from abs_tol".
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_subdivisions = 4000;
  double y_upper_cutoff = 0.0;    // in units of the exponent 2*zeta*y
  double kpar_upper_cutoff = 0.0; // in units of the exponent 2*kappa*|z|
  OscillatoryStrategy oscillatory_strategy =
      OscillatoryStrategy::adaptive_subdivision_per_halfperiod;

  void validate() const;
  //! Exponent T at which e^{-T} T^4 drops below abs_tol/10.
  double exponent_cutoff(double requested) const;
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double estimate, double error, double worst_a,
                  double worst_b, double worst_error)
      : std::runtime_error(what), estimate(estimate), error(error), worst_a(worst_a),
        worst_b(worst_b), worst_error(worst_error) {}
  double estimate, error;
  double worst_a, worst_b, worst_error;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  int evaluations = 0;
};

namespace detail {

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// 21-point Kronrod rule with embedded 10-point Gauss rule on [a,b].
template <class F>
Panel gk21(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * wk[0], g = 0.0, l1 = std::abs(k);
  for (std::size_t i = 1; i < x.size(); ++i) {
    double fp = f(c + h * x[i]), fm = f(c - h * x[i]);
    k += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) g += (fp + fm) * wg[i / 2];
  }
  double err = std::max(std::abs(k - g) * h, 2 * std::numeric_limits<double>::epsilon() * std::abs(k * h));
  return {a, b, k * h, err, l1 * std::abs(h)};
}

} // namespace detail

//! Globally adaptive Gauss-Kronrod over [breaks.front(), breaks.back()], bisecting the
//! panel with the largest error until error <= max(abs_tol, rel_tol*|I|, roundoff floor).
template <class F>
QuadResult integrate(F&& f, const std::vector<double>& breaks, double rel_tol, double abs_tol,
                     int max_subdivisions = 4000) {
  QuadResult r;
  if (breaks.size() < 2) return r;
  std::priority_queue<detail::Panel> heap;
  double value = 0.0, error = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto p = detail::gk21(f, breaks[i], breaks[i + 1]);
    r.evaluations += 21;
    value += p.value;
    error += p.error;
    l1 += p.l1;
    heap.push(p);
  }
  int splits = 0;
  auto target = [&] {
    return std::max({abs_tol, rel_tol * std::abs(value),
                     64 * std::numeric_limits<double>::epsilon() * l1});
  };
  while (!heap.empty() && error > target()) {
    if (splits >= max_subdivisions) {
      const auto& w = heap.top();
      throw QuadratureError("quadrature did not converge", value, error, w.a, w.b, w.error);
    }
    auto p = heap.top();
    heap.pop();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      // panel at roundoff width; accept what we have
      heap.push(p);
      break;
    }
    auto left = detail::gk21(f, p.a, m), right = detail::gk21(f, m, p.b);
    r.evaluations += 42;
    value += left.value + right.value - p.value;
    error += left.error + right.error - p.error;
    l1 += left.l1 + right.l1 - p.l1;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  if (!std::isfinite(value)) throw QuadratureError("non-finite integrand", value, error, 0, 0, 0);
  r.value = value;
  r.error = error;
  r.l1 = l1;
  return r;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol, double abs_tol,
                     int max_subdivisions = 4000) {
  return integrate(std::forward<F>(f), std::vector<double>{a, b}, rel_tol, abs_tol,
                   max_subdivisions);
}

//! Composite Filon rule for int_a^b g(x) sin(w x) dx, panel count doubled until two
//! successive estimates agree within tolerance.
QuadResult filon_sin(const std::function<double(double)>& g, double a, double b, double w,
                     double rel_tol, double abs_tol, int max_panels = 1 << 16);

} // namespace zeeman
