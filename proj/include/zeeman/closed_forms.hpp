#pragma once

#include <complex>
#include <string>

#include "zeeman/landau_algebra.hpp"
#include "zeeman/quadrature.hpp"
#include "zeeman/surface_models.hpp"

namespace zeeman {

//! F(theta, nu) = -theta + Ci(theta)[3 theta cos - (3 - theta^2) sin]
//!               + [si(theta) - pi nu][(3 - theta^2) cos + 3 theta sin]
double F(double theta, int nu);
//! -3 pi (nu + 1/2) + 2 theta
double F_small(double theta, int nu);
//! pi nu (theta^2 cos - 3 theta sin - 3 cos) - 8/theta
double F_large(double theta, int nu);

// Perfect reflector, coefficient of sigma_z at distance d > 0 (z = -d).
double perfect_Cdelta(const LandauState& st, const DerivedFrequencies& f, double d, double m,
                      double e);
double perfect_Cprime(const LandauState& st, const DerivedFrequencies& f, double d, double m,
                      double e);
double perfect_spinflip(double d, double B0, double m, double e);
double perfect_reflector_shift(const LandauState& st, const DerivedFrequencies& f, double d,
                               double B0, double m, double e);

//! (sqrt(eps) - 1)/(sqrt(eps) + 1) at omega_H; (n-1)/(n+1) or 1 for the other models.
std::complex<double> raw_reflection_factor(const SurfaceModel& s, double omega_H);
//! Real part of raw_reflection_factor.
double reflection_factor(const SurfaceModel& s, double omega_H);

struct AsymptoticShift {
  double value = 0.0;
  double K = 0.0;
  std::complex<double> raw_factor;
  bool regime_warning = false; // min zeta_i < 10 among contributing ladders
  std::string warning;
};

//! Large-distance dielectric shift: (e^2/(32 pi m^2 d Omega)) K sum_i h_i nu_i Delta_i^3 cos(2 Delta_i d).
AsymptoticShift asymptotic_dielectric_shift(const LandauState& st, const TrapParameters& p,
                                            double d, const SurfaceModel& s);

//! Watson-lemma leading term of the pole sector: (e^2/(32 pi m^2 Omega d^2)) K sum_i h_i nu_i
//! Delta_i^2 zeta_i cos(2 zeta_i). Same function as asymptotic_dielectric_shift, written in zeta.
double pole_leading_form(const LandauState& st, const DerivedFrequencies& f, double d, double K,
                         double m, double e);

struct MagneticMoment {
  double value = 0.0;
  bool non_physical = true; // oscillates with undiminished amplitude in d
  std::string note;
};

//! -d(asymptotic shift)/dB0 at B0 = 0.
MagneticMoment naive_magnetic_moment(const LandauState& st, double omega_H, double d, double K,
                                     double m, double e);

//! 2 * asymptotic_dielectric_shift / (|e| B0 / m).
double splitting_ratio_asymptotic(const LandauState& st, const TrapParameters& p, double d,
                                  const SurfaceModel& s);
//! Same ratio from SI inputs: B0 [T], d [m], omega_H [rad/s].
double splitting_ratio_asymptotic_si(int nu_L, int nu_R, double B0_tesla, double d_m,
                                     double omega_H_si, double K);

enum class RegimeTag { SmallTrap, IntermediateTrap, LargeTrap, Ambiguous, OutsideWeakField };
const char* regime_name(RegimeTag t);

struct AsymptoticRegime {
  RegimeTag tag = RegimeTag::Ambiguous;
  double omega_H = 0, cyclotron = 0, inverse_distance = 0; // the three rates
};

//! Strict ordering of omega_H, |e|B0/m and 1/d with each gap at least `threshold`.
AsymptoticRegime classify_regime(const TrapParameters& p, double d, double threshold = 10.0);
//! SI rates omega_H, |e|B0/m_e, c/d.
AsymptoticRegime classify_regime_si(double B0_tesla, double d_m, double omega_H_si,
                                    double threshold = 10.0);

//! Perfect-reflector leading term in the intermediate regime, 3 e^3 B0 (nu_R+nu_L+1)/(256 pi m^3 omega_H d^3).
double intermediate_trap_estimate(const LandauState& st, const TrapParameters& p, double d);

//! B0-coefficient of the shift for omega_H -> 0 and B0 -> 0 at nu = 0:
//! (e^3/(32 pi^2 m^3 d^2)) (I_S - I_E + 2 I_Q). Perfect reflector: -e^3/(32 pi^2 m^3 d^2).
double free_limit_analytic(const SurfaceModel& s, double d, double m, double e,
                           const QuadratureConfig& q = {});

struct FreeLimitCheck {
  double numeric = 0.0, analytic = 0.0;
};
//! numeric: Richardson-extrapolated central difference of total_shift in B0 around B0,
//! with omega_H = 1e-4 Lambda held in proportion.
FreeLimitCheck free_limit_moment_check(const SurfaceModel& s, double B0, double d, double m,
                                       double e, const QuadratureConfig& q = {});

} // namespace zeeman
