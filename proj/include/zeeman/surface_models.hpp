#pragma once

#include <array>
#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace zeeman {

using cplx = std::complex<double>;

struct PerfectReflector {};

struct NonDispersive {
  double n = 1.0; // refractive index >= 1
};

//! Tabulated permittivity eps(omega); only read near omega_H by the asymptotic formula.
struct DispersiveResonance {
  std::vector<double> omega;
  std::vector<cplx> eps;

  //! Linear interpolation in omega; clamps outside the table.
  cplx epsilon_at(double w) const;
};

using SurfaceModel = std::variant<PerfectReflector, NonDispersive, DispersiveResonance>;

void validate_surface(const SurfaceModel& s);
std::string describe_surface(const SurfaceModel& s);

//! Reads "omega Re(eps) [Im(eps)]" rows, whitespace separated, omega strictly ascending.
//! Lines starting with '#' are ignored.
DispersiveResonance read_permittivity_file(const std::string& path);

//! Single-Lorentzian eps(omega) = 1 + wp^2 / (w0^2 - omega^2 - i gamma omega), sampled on
//! [w_min, w_max]. Illustrative only.
DispersiveResonance single_lorentzian(double w0, double wp, double gamma, double w_min,
                                      double w_max, int samples);

enum class Polarization { TE, TM };

//! Where k_z sits relative to the k_z^d branch cut, which lies on the imaginary axis
//! between +-i k_par sqrt(n^2-1)/n.
enum class KzSegment {
  generic,            // off the cut: analytic branch, real k_z gives sgn(k_z^d) = sgn(k_z)
  real_axis,
  cut_left,           // imaginary k_z on the cut, approached from Re k_z < 0
  cut_right,          // imaginary k_z on the cut, approached from Re k_z > 0
  between_branch_points, // -i k_par < k_z < -i k_par sqrt(n^2-1)/n (and mirror)
  omega_cut           // |k_z| > k_par on the imaginary axis
};

cplx kzd(double n, cplx kz, double k_par, KzSegment seg = KzSegment::generic);

struct WaveGeometry {
  double k_par = 0.0;
  cplx k_z, k_z_d, omega;
};

WaveGeometry make_geometry(double n, cplx kz, double k_par, KzSegment seg = KzSegment::generic);

struct FresnelSet {
  cplx R_vac, T_vac, R_med, T_med;
};

FresnelSet fresnel(Polarization lambda, double n, const WaveGeometry& g);

//! n -> infinity limit: R_TE = -1, R_TM = +1, no transmission.
FresnelSet fresnel_perfect(Polarization lambda);

//! |R(k_z^d=-K) - R(k_z^d=K) - (k_z/k_z^d) T_med T_med^*|_{k_z^d=-K}| for pure imaginary k_z.
double evanescent_identity_residual(Polarization lambda, double n, double k_par, double K);

//! R^{sign}(alpha) = (a - sqrt(alpha^2 + sign (n^2-1))) / (a + sqrt(...)), a = alpha (TE)
//! or n^2 alpha (TM). Complex when the radicand is negative.
cplx rescaled_R(Polarization lambda, int sign, double alpha, double n);
cplx rescaled_R_perfect(Polarization lambda);

//! Reflection coefficients on the imaginary axis k_z = -i kappa with kappa > k_par,
//! written in c = xi/kappa, xi = sqrt(kappa^2 - k_par^2). Real there. The derivatives
//! kappa * dR/dkappa at fixed k_par are returned in dRTE, dRTM.
struct CutReflection {
  double RTE, RTM, dRTE, dRTM;
};
CutReflection cut_reflection(double n, double c);
CutReflection cut_reflection_perfect();

using Vec3 = std::array<cplx, 3>;

//! e_TE = (k_y, -k_x, 0)/k_par, e_TM = (k_x k_z, k_y k_z, -k_par^2)/(k k_par); k is the
//! (possibly complex) wavenumber. At k_par = 0 the k_x -> 0+ limit along k_y = 0 is used.
Vec3 polarization_vector(Polarization lambda, double kx, double ky, cplx kz, cplx k);

enum class Region { vac, med };

//! Piecewise mode function at r; the non-dispersive medium fills z > 0.
Vec3 mode_function(Region region, double n, double kx, double ky, cplx kz, Polarization lambda,
                   const std::array<double, 3>& r);

//! Test hook: flips the sign of R_TM in fresnel(). Used by the validation canary only.
void set_fault_injection(bool flip_tm);
bool fault_injection();

} // namespace zeeman
