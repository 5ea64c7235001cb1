#ifndef XXZ_SOLVER_HPP
#define XXZ_SOLVER_HPP

#include <vector>

#include "xxz/config.hpp"
#include "xxz/halves.hpp"
#include "xxz/kernels.hpp"
#include "xxz/states.hpp"

namespace xxz {

// A BetheSystem made solvable: every root slot carries a line tag and the
// equation number actually entered into the logarithmic equations.
//
// Equation numbers coincide with the physical window labels for purely real
// configurations. When shifted roots are present the branch constants of the
// mixed-pair kernel shift them by exact half-integer amounts; the shifts are
// computed combinatorially at the XX point and updated when a root changes
// line. The counting function evaluated at a converged root always returns
// that root's equation number.
struct PreparedSystem {
  BetheSystem spec;
  std::vector<Line> lines;
  std::vector<Half> eq_twice;

  PreparedSystem with_eta(double eta) const {
    PreparedSystem p = *this;
    p.spec.a = Anisotropy(eta);
    return p;
  }
  double eq_value(int i) const { return half_value(eq_twice[i]); }
};

struct RootSet {
  std::vector<Rapidity> roots;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// F_alpha = L phi(t_alpha) - 2 pi nu_alpha - sum_{gamma != alpha} phi2(...).
// Throws CoincidentRoots if two same-line roots are closer than
// cfg.coincident_tol.
std::vector<double> residual(const std::vector<Rapidity>& roots,
                             const PreparedSystem& sys,
                             const RunConfig& cfg = {});

// Dense Jacobian dF_alpha/d re_gamma from the analytic kernel derivatives.
// Row-major M*M buffer; row sums equal L phi'(t_alpha) identically.
std::vector<double> jacobian(const std::vector<Rapidity>& roots,
                             const PreparedSystem& sys,
                             const RunConfig& cfg = {});

// Damped Newton (step halving on residual increase). Roots with
// |re| >= cfg.escape_threshold are frozen: they keep their position and their
// equations are excluded from the update, which keeps the Jacobian regular
// when a root sits numerically at infinity. Line assignments never change
// during a solve. Returns the best iterate with diagnostics; converged is set
// only when ||F||_inf < cfg.tol over all rows.
RootSet newton_solve(const std::vector<Rapidity>& seed, const PreparedSystem& sys,
                     const RunConfig& cfg = {});

// n_L(t) = (L phi(t) - sum_gamma phi2(t - t_gamma)) / 2 pi, sum over all
// roots. When t sits on top of a root (same line, within coincident_tol) that
// single pair term is the self term of the equations and contributes zero.
double counting_function(const Rapidity& t, const std::vector<Rapidity>& roots,
                         const PreparedSystem& sys, const RunConfig& cfg = {});

// n_c = [L(pi - eta) - (M - 1)(pi - 2 eta)] / 2 pi, from the kernel limits.
double critical_number(const BetheSystem& sys);

// RealLine iff |n| < n_c; throws BoundaryAmbiguous within cfg.boundary_eps.
Line classify_number(Half twice_n, const BetheSystem& sys, const RunConfig& cfg = {});

// State construction at the XX point (eta = pi/2), where each root solves a
// one-dimensional equation: root positions from the closed-form branch
// inverses, line tags from assign_lines_xx, equation numbers from the exact
// combinatorial branch offsets. Numbers at |n| = L/4 have their root at
// infinity and are parked at cfg.escape_park.
struct XxConstruction {
  PreparedSystem sys;   // at eta = pi/2
  RootSet state;        // converged by construction
  std::vector<double> momenta;  // quasi-momenta pi + 2 pi n / L in (-pi, pi]
};

XxConstruction xx_construct(int L, const QuantumNumbers& numbers,
                            const RunConfig& cfg = {});

// The XX seed roots alone (the 1D-inverted values per number).
std::vector<Rapidity> seed_from_xx(const BetheSystem& sys, const RunConfig& cfg = {});

// Prepared view of a purely real configuration: equation numbers equal the
// window labels. Ground-state-like systems only.
PreparedSystem prepare_all_real(const BetheSystem& sys);

// Quasi-momentum of a solved root: phi(t) + pi mapped to (-pi, pi].
double root_momentum(const Rapidity& t, const Anisotropy& a);

// Isotropic-point system in rescaled rapidity lambda = t/eta: real roots
// only, cold-solved by damped Newton from decoupled seeds.
struct XxxRootSet {
  std::vector<double> lambdas;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

XxxRootSet xxx_solve(int L, const QuantumNumbers& numbers, const RunConfig& cfg = {});

// Quasi-momentum of an XXX root: pi + 2 atan(2 lambda) mapped to (-pi, pi].
double xxx_root_momentum(double lam);

}  // namespace xxz

#endif
