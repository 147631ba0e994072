#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace zeeman {

//! Electron charge in natural units (hbar = c = eps0 = 1), e = -sqrt(4 pi alpha).
double natural_electron_charge();

struct TrapParameters {
  double m = 1.0;
  double e = natural_electron_charge();
  double B0 = 0.0;
  double omega_H = 0.0;

  //! Throws std::invalid_argument when the invariants fail. require_bound rejects
  //! B0 = omega_H = 0.
  void validate(bool require_bound = true) const;
};

struct DerivedFrequencies {
  double Omega = 0.0;
  double Delta_R = 0.0;
  double Delta_L = 0.0;
  double Lambda = 0.0; // -e B0 / 2m
};

enum class Handedness { R, L };

//! h_R = +1, h_L = -1
inline int handedness_sign(Handedness i) { return i == Handedness::R ? 1 : -1; }

struct LandauState {
  int nu_L = 0;
  int nu_R = 0;
  double s = 0.5; // spin projection, sigma_z expectation = 2s

  int nu(Handedness i) const { return i == Handedness::R ? nu_R : nu_L; }
  void validate() const;
};

DerivedFrequencies derived_frequencies(const TrapParameters& p);

inline double delta(const DerivedFrequencies& f, Handedness i) {
  return i == Handedness::R ? f.Delta_R : f.Delta_L;
}

//! Orbital energy Delta_R nu_R + Delta_L nu_L + Omega (spin Zeeman term excluded).
double state_energy(const LandauState& st, const DerivedFrequencies& f);

enum class Axis { x, y };
enum class Transition { raise, lower };

//! <nu_i +- 1 | pi_axis | nu_i> for ladder i, with the other ladder unchanged.
std::complex<double> momentum_matrix_element(Handedness i, Axis axis, int nu, Transition t,
                                             const DerivedFrequencies& f, double m);

//! <nu_i +- 1 | (axis - axis_0) | nu_i>.
std::complex<double> displacement_matrix_element(Handedness i, Axis axis, int nu, Transition t,
                                                 const DerivedFrequencies& f, double m);

//! General <bra| pi_axis |ket>; zero unless exactly one ladder changes by one quantum.
std::complex<double> momentum_matrix_element(const LandauState& bra, const LandauState& ket,
                                             Axis axis, const DerivedFrequencies& f, double m);
std::complex<double> displacement_matrix_element(const LandauState& bra, const LandauState& ket,
                                                 Axis axis, const DerivedFrequencies& f, double m);

struct FockLevel {
  int nu_R, nu_L;
  double energy;
};

struct FockMatrixElement {
  Handedness i;
  Axis axis;
  int nu_R, nu_L; // ket
  Transition t;
  std::complex<double> pi;
  std::complex<double> displacement;
};

struct FockOracleResult {
  std::vector<double> eigenvalues;        // all exact blocks, ascending
  std::vector<FockLevel> levels;          // labelled states with nu_R + nu_L <= max_level + 1
  std::vector<FockMatrixElement> elements; // kets with nu_R + nu_L <= max_level
  double commutator_residual_R = 0.0;
  double commutator_residual_L = 0.0;
  double hermiticity_residual = 0.0;  // max |<a|pi|b> - conj(<b|pi|a>)| over tabulated pairs
  double block_leakage = 0.0;         // largest |H| entry coupling different total-quanta blocks

  const FockLevel* level(int nu_R, int nu_L) const;
  const FockMatrixElement* element(Handedness i, Axis axis, int nu_R, int nu_L,
                                   Transition t) const;
};

class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Brute-force check of the circular-quanta algebra: builds b_x, b_y on an n_trunc^2
//! product space, assembles H from x, y, p_x, p_y, diagonalizes it block-wise (H
//! conserves n_x + n_y) and tabulates matrix elements in the circular basis.
FockOracleResult fock_oracle(const TrapParameters& p, int n_trunc, int max_level = 3);

} // namespace zeeman
