#pragma once

#include <string>

namespace zeeman::units {

//! CODATA 2018, SI.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;       // J s
  double c = 299792458.0;              // m/s
  double eps0 = 8.8541878128e-12;      // F/m
  double m_e = 9.1093837015e-31;       // kg
  double e = 1.602176634e-19;          // C
  double alpha = 7.2973525693e-3;
};

inline constexpr PhysicalConstants kConstants{};

// Natural units: hbar = c = eps0 = 1, m_e = 1. The unit of frequency is m_e c^2/hbar,
// the unit of length hbar/(m_e c). Magnetic fields are fixed by |e| B / m_e.
double frequency_unit(); // rad/s
double length_unit();    // m
double energy_unit();    // J

double rad_per_s_to_natural(double w);
double natural_to_rad_per_s(double w);
double meters_to_natural(double d);
double natural_to_meters(double d);
double tesla_to_natural(double B);
double natural_to_tesla(double B);
double natural_to_joule(double E);

//! Human-readable table for --constants.
std::string constants_table();

} // namespace zeeman::units
