#include "zeeman/landau_algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace zeeman {

namespace {
constexpr double kFineStructure = 7.2973525693e-3; // CODATA 2018
using cplx = std::complex<double>;
constexpr cplx I1{0.0, 1.0};
} // namespace

double natural_electron_charge() { return -std::sqrt(4 * std::numbers::pi * kFineStructure); }

void TrapParameters::validate(bool require_bound) const {
  if (!(m > 0) || !std::isfinite(m)) throw std::invalid_argument("mass must be > 0");
  if (!(e < 0) || !std::isfinite(e)) throw std::invalid_argument("charge must be < 0");
  if (!std::isfinite(B0) || B0 < 0) throw std::invalid_argument("B0 must be finite and >= 0");
  if (!std::isfinite(omega_H) || omega_H < 0)
    throw std::invalid_argument("omega_H must be finite and >= 0");
  if (require_bound && B0 == 0 && omega_H == 0)
    throw std::invalid_argument("B0 and omega_H cannot both vanish");
}

void LandauState::validate() const {
  if (nu_L < 0 || nu_R < 0) throw std::invalid_argument("quantum numbers must be >= 0");
  if (s != 0.5 && s != -0.5) throw std::invalid_argument("spin must be +1/2 or -1/2");
}

DerivedFrequencies derived_frequencies(const TrapParameters& p) {
  p.validate(false);
  DerivedFrequencies f;
  f.Lambda = -p.e * p.B0 / (2 * p.m);
  f.Omega = std::hypot(p.omega_H, f.Lambda);
  f.Delta_R = f.Omega + f.Lambda;
  // Omega - Lambda loses precision when omega_H << Lambda; use Delta_R Delta_L = omega_H^2
  f.Delta_L = f.Delta_R > 0 ? p.omega_H * p.omega_H / f.Delta_R : 0.0;
  return f;
}

double state_energy(const LandauState& st, const DerivedFrequencies& f) {
  st.validate();
  return f.Delta_R * st.nu_R + f.Delta_L * st.nu_L + f.Omega;
}

cplx momentum_matrix_element(Handedness i, Axis axis, int nu, Transition t,
                             const DerivedFrequencies& f, double m) {
  if (nu < 0) throw std::invalid_argument("nu must be >= 0");
  if (t == Transition::lower && nu == 0) throw std::invalid_argument("cannot lower nu = 0");
  double amp = 0.5 * std::sqrt(m / f.Omega) * delta(f, i) *
               std::sqrt(t == Transition::raise ? nu + 1.0 : static_cast<double>(nu));
  if (axis == Axis::x) return (t == Transition::raise ? I1 : -I1) * amp;
  return static_cast<double>(handedness_sign(i)) * amp;
}

cplx displacement_matrix_element(Handedness i, Axis axis, int nu, Transition t,
                                 const DerivedFrequencies& f, double m) {
  if (nu < 0) throw std::invalid_argument("nu must be >= 0");
  if (t == Transition::lower && nu == 0) throw std::invalid_argument("cannot lower nu = 0");
  double amp = std::sqrt(t == Transition::raise ? nu + 1.0 : static_cast<double>(nu)) /
               (2 * std::sqrt(m * f.Omega));
  if (axis == Axis::x) return amp;
  double h = handedness_sign(i);
  return (t == Transition::raise ? -h : h) * I1 * amp;
}

namespace {

template <class Fn>
cplx state_element(const LandauState& bra, const LandauState& ket, Fn fn) {
  int dR = bra.nu_R - ket.nu_R, dL = bra.nu_L - ket.nu_L;
  if (bra.s != ket.s) return 0.0;
  if (dL == 0 && std::abs(dR) == 1)
    return fn(Handedness::R, ket.nu_R, dR > 0 ? Transition::raise : Transition::lower);
  if (dR == 0 && std::abs(dL) == 1)
    return fn(Handedness::L, ket.nu_L, dL > 0 ? Transition::raise : Transition::lower);
  return 0.0;
}

} // namespace

cplx momentum_matrix_element(const LandauState& bra, const LandauState& ket, Axis axis,
                             const DerivedFrequencies& f, double m) {
  bra.validate();
  ket.validate();
  return state_element(bra, ket, [&](Handedness i, int nu, Transition t) {
    return momentum_matrix_element(i, axis, nu, t, f, m);
  });
}

cplx displacement_matrix_element(const LandauState& bra, const LandauState& ket, Axis axis,
                                 const DerivedFrequencies& f, double m) {
  bra.validate();
  ket.validate();
  return state_element(bra, ket, [&](Handedness i, int nu, Transition t) {
    return displacement_matrix_element(i, axis, nu, t, f, m);
  });
}

const FockLevel* FockOracleResult::level(int nu_R, int nu_L) const {
  for (const auto& l : levels)
    if (l.nu_R == nu_R && l.nu_L == nu_L) return &l;
  return nullptr;
}

const FockMatrixElement* FockOracleResult::element(Handedness i, Axis axis, int nu_R, int nu_L,
                                                   Transition t) const {
  for (const auto& e : elements)
    if (e.i == i && e.axis == axis && e.nu_R == nu_R && e.nu_L == nu_L && e.t == t) return &e;
  return nullptr;
}

FockOracleResult fock_oracle(const TrapParameters& p, int n_trunc, int max_level) {
  using SpMat = Eigen::SparseMatrix<cplx>;
  using Vec = Eigen::VectorXcd;
  p.validate(true);
  if (n_trunc < 10) throw std::invalid_argument("n_trunc must be >= 10");
  if (max_level < 0) throw std::invalid_argument("max_level must be >= 0");
  const int N = n_trunc, edge = 5;
  if (max_level + 2 > N - 1 - edge)
    throw ConvergenceError("n_trunc too small for the requested levels: need n_trunc >= " +
                           std::to_string(max_level + 3 + edge));

  const DerivedFrequencies f = derived_frequencies(p);
  const double m = p.m, Om = f.Omega;

  SpMat a(N, N), id(N, N);
  for (int k = 1; k < N; ++k) a.insert(k - 1, k) = std::sqrt(static_cast<double>(k));
  id.setIdentity();
  SpMat bx = Eigen::kroneckerProduct(a, id), by = Eigen::kroneckerProduct(id, a);
  SpMat bxd = bx.adjoint(), byd = by.adjoint();
  SpMat x = (bx + bxd) * (1.0 / std::sqrt(2 * m * Om));
  SpMat y = (by + byd) * (1.0 / std::sqrt(2 * m * Om));
  SpMat px = (bxd - bx) * (I1 * std::sqrt(m * Om / 2));
  SpMat py = (byd - by) * (I1 * std::sqrt(m * Om / 2));
  SpMat Lz = SpMat(x * py) - SpMat(y * px);
  SpMat H = SpMat(px * px + py * py) * (1.0 / (2 * m)) +
            SpMat(x * x + y * y) * (0.5 * m * Om * Om) - Lz * (p.e * p.B0 / (2 * m));
  SpMat bR = (bx - by * I1) * (1.0 / std::sqrt(2.0));
  SpMat bL = (bx + by * I1) * (1.0 / std::sqrt(2.0));
  SpMat bRd = bR.adjoint(), bLd = bL.adjoint();
  SpMat NR = bRd * bR;
  SpMat pix = px + y * (p.e * p.B0 / 2);
  SpMat piy = py - x * (p.e * p.B0 / 2);

  auto nx_of = [N](int idx) { return idx / N; };
  auto ny_of = [N](int idx) { return idx % N; };
  auto index = [N](int nx, int ny) { return nx * N + ny; };

  FockOracleResult out;

  // canonical commutators away from the truncation edge
  auto comm_residual = [&](const SpMat& b, const SpMat& bd) {
    SpMat c = SpMat(b * bd) - SpMat(bd * b);
    double worst = 0.0;
    for (int k = 0; k < c.outerSize(); ++k)
      for (SpMat::InnerIterator it(c, k); it; ++it) {
        int r = it.row(), col = it.col();
        if (nx_of(r) >= N - edge || ny_of(r) >= N - edge || nx_of(col) >= N - edge ||
            ny_of(col) >= N - edge)
          continue;
        cplx v = it.value() - (r == col ? 1.0 : 0.0);
        worst = std::max(worst, std::abs(v));
      }
    for (int nx = 0; nx < N - edge; ++nx)
      for (int ny = 0; ny < N - edge; ++ny) {
        int d = index(nx, ny);
        if (c.coeff(d, d) == cplx(0.0)) worst = std::max(worst, 1.0);
      }
    return worst;
  };
  out.commutator_residual_R = comm_residual(bR, bRd);
  out.commutator_residual_L = comm_residual(bL, bLd);

  for (int k = 0; k < H.outerSize(); ++k)
    for (SpMat::InnerIterator it(H, k); it; ++it) {
      int r = it.row(), c = it.col();
      if (nx_of(r) + ny_of(r) != nx_of(c) + ny_of(c))
        out.block_leakage = std::max(out.block_leakage, std::abs(it.value()));
    }

  std::map<std::pair<int, int>, Vec> states; // (nu_R, nu_L) -> full-space vector
  const int label_top = max_level + 1;
  for (int T = 0; T <= N - 2; ++T) {
    const int dim = T + 1;
    std::vector<int> basis(dim);
    for (int nx = 0; nx <= T; ++nx) basis[nx] = index(nx, T - nx);
    Eigen::MatrixXcd Hb(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) Hb(r, c) = H.coeff(basis[r], basis[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hb);
    for (int k = 0; k < dim; ++k) out.eigenvalues.push_back(es.eigenvalues()(k));
    if (T > label_top) continue;

    Eigen::MatrixXcd V = es.eigenvectors();
    const Eigen::VectorXd& E = es.eigenvalues();
    auto embed = [&](const Eigen::VectorXcd& v) {
      Vec full = Vec::Zero(N * N);
      for (int r = 0; r < dim; ++r) full(basis[r]) = v(r);
      return full;
    };
    // resolve degenerate clusters with the right-circular number operator
    for (int start = 0; start < dim;) {
      int end = start + 1;
      while (end < dim && std::abs(E(end) - E(start)) < 1e-9 * std::max(1.0, std::abs(E(start))))
        ++end;
      if (end - start > 1) {
        int c = end - start;
        Eigen::MatrixXcd M(c, c);
        std::vector<Vec> full(c);
        for (int j = 0; j < c; ++j) full[j] = embed(V.col(start + j));
        for (int r = 0; r < c; ++r)
          for (int s = 0; s < c; ++s) M(r, s) = full[r].dot(NR * full[s]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ns(M);
        Eigen::MatrixXcd block = V.middleCols(start, c) * ns.eigenvectors();
        V.middleCols(start, c) = block;
      }
      start = end;
    }
    for (int k = 0; k < dim; ++k) {
      Vec v = embed(V.col(k));
      double nr = v.dot(NR * v).real();
      int nu_R = static_cast<int>(std::lround(nr));
      if (std::abs(nr - nu_R) > 1e-6)
        throw ConvergenceError("eigenvector is not a circular-quanta state (n_R = " +
                               std::to_string(nr) + ")");
      int nu_L = T - nu_R;
      // phase convention |nu_R, nu_L> proportional to (b_R^dag)^nu_R (b_L^dag)^nu_L |0>
      // <v|w> picks up conj(c) when v -> c v, so the overlap sets c directly
      cplx ref;
      if (T == 0) {
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        ref = std::conj(v(imax));
      } else if (nu_R > 0) {
        ref = v.dot(bRd * states.at({nu_R - 1, nu_L}));
      } else {
        ref = v.dot(bLd * states.at({nu_R, nu_L - 1}));
      }
      v *= ref / std::abs(ref);
      states[{nu_R, nu_L}] = v;
      out.levels.push_back({nu_R, nu_L, E(k)});
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

  for (const auto& [label, ket] : states) {
    auto [nu_R, nu_L] = label;
    if (nu_R + nu_L > max_level) continue;
    for (Handedness i : {Handedness::R, Handedness::L})
      for (Axis axis : {Axis::x, Axis::y})
        for (Transition t : {Transition::raise, Transition::lower}) {
          int step = t == Transition::raise ? 1 : -1;
          int tR = nu_R + (i == Handedness::R ? step : 0);
          int tL = nu_L + (i == Handedness::L ? step : 0);
          if (tR < 0 || tL < 0) continue;
          const Vec& bra = states.at({tR, tL});
          const SpMat& pi_op = axis == Axis::x ? pix : piy;
          const SpMat& d_op = axis == Axis::x ? x : y;
          cplx pi = bra.dot(pi_op * ket), disp = bra.dot(d_op * ket);
          cplx pi_back = ket.dot(pi_op * bra), disp_back = ket.dot(d_op * bra);
          out.hermiticity_residual =
              std::max({out.hermiticity_residual, std::abs(pi - std::conj(pi_back)),
                        std::abs(disp - std::conj(disp_back))});
          out.elements.push_back({i, axis, nu_R, nu_L, t, pi, disp});
        }
  }
  return out;
}

} // namespace zeeman
