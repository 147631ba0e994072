#pragma once

#include "zeeman/landau_algebra.hpp"
#include "zeeman/quadrature.hpp"
#include "zeeman/surface_models.hpp"

namespace zeeman {

//! All shift components as the coefficient of sigma_z, natural units (hbar = c = eps0 = 1).
struct ShiftBreakdown {
  double E1 = 0, E2B = 0;
  double E2E_pole = 0, E2E_cut = 0;
  double Q1_pole = 0, Q1_cut = 0;
  double Q2 = 0;
  double total = 0;
  //! Residue of the even-in-omega E2E term at k_z = -i k_par. Reported separately and
  //! not part of total (see README).
  double E2E_branch_point = 0;
  double error_estimate = 0;

  void recompute_total();
  //! Components for the spin state with the given sigma_z = +-1.
  ShiftBreakdown for_spin(double sigma_z) const;
};

struct SectorResult {
  double first = 0, second = 0, error = 0;
};

//! PerfectReflector or NonDispersive as (perfect, n); rejects DispersiveResonance.
struct Reflector {
  bool perfect = true;
  double n = 1.0;
};
Reflector reflector_of(const SurfaceModel& s);

//! Pole (C_Delta) sector: (E2E_pole, Q1_pole). d = |z| > 0.
SectorResult pole_sector(const LandauState& st, const DerivedFrequencies& f,
                         const SurfaceModel& s, double d, const QuadratureConfig& q, double m,
                         double e);

//! Cut (C') sector from twice the odd-in-omega part: (E2E_cut, Q1_cut).
SectorResult cut_sector(const LandauState& st, const DerivedFrequencies& f,
                        const SurfaceModel& s, double d, const QuadratureConfig& q, double m,
                        double e);

//! Spin-flip terms (E1, E2B); exactly linear in B0.
SectorResult spin_flip_sector(const DerivedFrequencies& f, const SurfaceModel& s, double d,
                              const QuadratureConfig& q, double B0, double m, double e);

//! Always 0: the TE coefficient vanishes at k_z = -i k_par.
double q2_sector();
//! |R_TE^vac(k_z = -i k_par)|, the quantity whose vanishing makes q2_sector() zero.
double q2_validation_residual(double n, double k_par);

//! Residue term at the omega branch point (diagnostic).
double e2e_branch_point(const LandauState& st, const DerivedFrequencies& f,
                        const SurfaceModel& s, double d, double m, double e);

ShiftBreakdown total_shift(const LandauState& st, const TrapParameters& p, const SurfaceModel& s,
                           double d, const QuadratureConfig& q = {});

//! delta/delta_0 with delta = 2 * total and delta_0 = |e| B0 / m.
double zeeman_splitting_ratio(const LandauState& st, const TrapParameters& p,
                              const SurfaceModel& s, double d, const QuadratureConfig& q = {});

//! Dimensionless brackets behind the sectors; exposed for tests.
namespace brackets {
//! {int_0^1 [R+_TE - x^2 R+_TM] sin(2 zeta x) dx - Re int_0^inf [R-_TE + y^2 R-_TM] e^{-2 zeta y} dy}
QuadResult pole_E(const Reflector& r, double zeta, const QuadratureConfig& q);
//! {int_0^1 (x^2-1) R+_TE sin(2 zeta x) dx + Re int_0^inf (y^2+1) R-_TE e^{-2 zeta y} dy}
QuadResult pole_Q(const Reflector& r, double zeta, const QuadratureConfig& q);
//! d^2 * int dk k int dkappa 2[kappa^2 R_TM/xi - xi R_TE]/(xi^2+Delta^2) e^{-2 kappa d}
QuadResult cut_E(const Reflector& r, double zeta, const QuadratureConfig& q);
//! d^2 * int dk k^3 int dkappa R_TE/(xi (xi^2+Delta^2)) e^{-2 kappa d}
QuadResult cut_Q(const Reflector& r, double zeta, const QuadratureConfig& q);
//! d^2 * spin-flip integrals (E1, E2B) without the e^3 B0/(32 pi^2 m^3) prefactor.
double spin_E1(const Reflector& r, const QuadratureConfig& q);
double spin_E2B(const Reflector& r, const QuadratureConfig& q);
//! Zero-frequency C' integrals of the free-electron limit, times d^2.
struct FreeLimitIntegrals {
  double I_S, I_E, I_Q;
};
FreeLimitIntegrals free_limit(const Reflector& r, const QuadratureConfig& q);
} // namespace brackets

} // namespace zeeman
