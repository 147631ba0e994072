#include "zeeman/units.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "zeeman/landau_algebra.hpp"

namespace zeeman::units {

double frequency_unit() { return kConstants.m_e * kConstants.c * kConstants.c / kConstants.hbar; }
double length_unit() { return kConstants.hbar / (kConstants.m_e * kConstants.c); }
double energy_unit() { return kConstants.m_e * kConstants.c * kConstants.c; }

double rad_per_s_to_natural(double w) { return w / frequency_unit(); }
double natural_to_rad_per_s(double w) { return w * frequency_unit(); }
double meters_to_natural(double d) { return d / length_unit(); }
double natural_to_meters(double d) { return d * length_unit(); }

// The cyclotron frequency |e| B / m is the same physical rate in both systems.
double tesla_to_natural(double B) {
  const double wc = kConstants.e * B / kConstants.m_e;
  return rad_per_s_to_natural(wc) / std::abs(natural_electron_charge());
}
double natural_to_tesla(double B) {
  const double wc = natural_to_rad_per_s(B * std::abs(natural_electron_charge()));
  return wc * kConstants.m_e / kConstants.e;
}

double natural_to_joule(double E) { return E * energy_unit(); }

std::string constants_table() {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "hbar      %.10e J s\n"
                "c         %.10e m/s\n"
                "eps0      %.10e F/m\n"
                "m_e       %.10e kg\n"
                "e         %.10e C\n"
                "alpha     %.10e\n"
                "e_natural %.17g\n"
                "freq unit %.10e rad/s\n"
                "length    %.10e m\n",
                kConstants.hbar, kConstants.c, kConstants.eps0, kConstants.m_e, kConstants.e,
                kConstants.alpha, natural_electron_charge(), frequency_unit(), length_unit());
  return buf;
}

} // namespace zeeman::units
