#include "xxz/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

void check_distinct(const std::vector<Rapidity>& roots, double ctol) {
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].line == roots[j].line &&
          std::abs(roots[i].re - roots[j].re) < ctol)
        throw CoincidentRoots("roots " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide");
}

bool trial_coincident(const std::vector<Rapidity>& roots, double ctol) {
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].line == roots[j].line &&
          std::abs(roots[i].re - roots[j].re) < ctol)
        return true;
  return false;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// A real and a shifted root merged at a large common position. The (t, t+ipi/2)
// pair is marginal: its center is determined only to the conditioning floor,
// so residuals cannot reach the regular tolerance there.
bool has_bound_pair(const std::vector<Rapidity>& roots) {
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].line != roots[j].line && std::abs(roots[i].re) > 3.0 &&
          std::abs(roots[i].re - roots[j].re) < 1e-3)
        return true;
  return false;
}

}  // namespace

std::vector<double> residual(const std::vector<Rapidity>& roots,
                             const PreparedSystem& sys, const RunConfig& cfg) {
  const int M = static_cast<int>(roots.size());
  check_distinct(roots, cfg.coincident_tol);
  std::vector<double> F(M);
  for (int al = 0; al < M; ++al) {
    double f = sys.spec.L * phi(roots[al], sys.spec.a) -
               2.0 * kPi * sys.eq_value(al);
    for (int g = 0; g < M; ++g) {
      if (g == al) continue;
      bool same = roots[al].line == roots[g].line;
      f -= phi2(roots[al].re - roots[g].re, same, sys.spec.a);
    }
    F[al] = f;
  }
  return F;
}

std::vector<double> jacobian(const std::vector<Rapidity>& roots,
                             const PreparedSystem& sys, const RunConfig& cfg) {
  const int M = static_cast<int>(roots.size());
  check_distinct(roots, cfg.coincident_tol);
  std::vector<double> J(static_cast<size_t>(M) * M, 0.0);
  for (int al = 0; al < M; ++al) {
    double diag = sys.spec.L * phi_prime(roots[al], sys.spec.a);
    for (int g = 0; g < M; ++g) {
      if (g == al) continue;
      bool same = roots[al].line == roots[g].line;
      double d = phi2_prime(roots[al].re - roots[g].re, same, sys.spec.a);
      J[al * M + g] = d;
      diag -= d;
    }
    J[al * M + al] = diag;
  }
  return J;
}

RootSet newton_solve(const std::vector<Rapidity>& seed, const PreparedSystem& sys,
                     const RunConfig& cfg) {
  const int M = static_cast<int>(seed.size());
  if (M != sys.spec.M)
    throw InputError("seed size does not match the system");
  RootSet out;
  out.roots = seed;
  if (M == 0) {
    out.converged = true;
    return out;
  }

  // Roots far out on either line keep their position: phi' decays like
  // exp(-2|re|), so beyond freeze_re their rows are numerically flat and
  // would only corrupt the update. Their residuals still count.
  std::vector<int> free_idx;
  for (int i = 0; i < M; ++i)
    if (std::abs(seed[i].re) < cfg.freeze_re) free_idx.push_back(i);
  const int n = static_cast<int>(free_idx.size());

  std::vector<double> F = residual(out.roots, sys, cfg);
  double fnorm = inf_norm(F);

  for (int it = 0; it < cfg.max_iter && fnorm >= cfg.tol; ++it) {
    out.iterations = it + 1;
    if (n == 0) break;
    std::vector<double> Jfull = jacobian(out.roots, sys, cfg);
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      rhs(r) = F[free_idx[r]];
      for (int c = 0; c < n; ++c)
        J(r, c) = Jfull[free_idx[r] * M + free_idx[c]];
    }
    // Minimum-norm least-squares step: bound marginal pairs make the
    // Jacobian rank-deficient along their center coordinate, which a plain
    // LU solve would blow up.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    cod.setThreshold(1e-10);
    Eigen::VectorXd dx = cod.solve(rhs);
    if (!dx.allFinite()) break;

    // Trust region: huge steps mean the linearization left its validity.
    double maxdx = dx.cwiseAbs().maxCoeff();
    double scale = maxdx > 3.0 ? 3.0 / maxdx : 1.0;

    double step = scale;
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h, step *= 0.5) {
      std::vector<Rapidity> trial = out.roots;
      for (int r = 0; r < n; ++r) trial[free_idx[r]].re -= step * dx(r);
      if (trial_coincident(trial, cfg.coincident_tol)) continue;
      std::vector<double> Ft = residual(trial, sys, cfg);
      double ft = inf_norm(Ft);
      if (ft < fnorm) {
        out.roots = std::move(trial);
        F = std::move(Ft);
        fnorm = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stagnated; return best iterate
  }

  out.residual_norm = fnorm;
  out.converged = fnorm < cfg.tol ||
                  (fnorm < cfg.marginal_tol && has_bound_pair(out.roots));
  return out;
}

double counting_function(const Rapidity& t, const std::vector<Rapidity>& roots,
                         const PreparedSystem& sys, const RunConfig& cfg) {
  double s = sys.spec.L * phi(t, sys.spec.a);
  // The self term of the equations: if t sits on a root, that one pair term
  // is phi2 at zero same-line separation, whose continuous value is zero.
  int self = -1;
  double best = cfg.coincident_tol;
  for (size_t g = 0; g < roots.size(); ++g) {
    if (roots[g].line != t.line) continue;
    double d = std::abs(t.re - roots[g].re);
    if (d < best) {
      best = d;
      self = static_cast<int>(g);
    }
  }
  for (size_t g = 0; g < roots.size(); ++g) {
    if (static_cast<int>(g) == self) continue;
    bool same = roots[g].line == t.line;
    s -= phi2(t.re - roots[g].re, same, sys.spec.a);
  }
  return s / (2.0 * kPi);
}

double critical_number(const BetheSystem& sys) {
  double eta = sys.a.eta();
  return (sys.L * (kPi - eta) - (sys.M - 1) * (kPi - 2.0 * eta)) / (2.0 * kPi);
}

Line classify_number(Half twice_n, const BetheSystem& sys, const RunConfig& cfg) {
  double n_c = critical_number(sys);
  double an = std::abs(half_value(twice_n));
  if (std::abs(an - n_c) < cfg.boundary_eps)
    throw BoundaryAmbiguous("|n| = " + std::to_string(an) +
                            " within boundary_eps of n_c = " + std::to_string(n_c));
  return an < n_c ? Line::Real : Line::Shifted;
}

namespace {

// Integer position key at the XX point. Root positions are ordered by key and
// two roots sit at the same re exactly when their keys are equal:
//   real root:    key = w            (doubled number)
//   shifted root: key = L - w_zone   (w_zone = w + 2L for w < 0)
// |key| = L/2 marks a root at infinity.
int xx_key(Half w, Line line, int L) {
  if (line == Line::Real) return w;
  return w >= 0 ? L - w : -L - w;
}

// Equal keys on opposite lines mark a bound marginal pair: a real and a
// shifted root that merge at infinity as eta -> pi/2. The pair is ordered
// with the real member outward; this is the branch that stays an eigenstate
// below the XX point (the alternative orderings twist the quantization).
bool key_less(int key_a, Line line_a, int key_b, Line line_b) {
  if (key_a != key_b) return key_a < key_b;
  if (line_a == line_b) return false;
  bool a_outward = line_a == Line::Real;
  return key_a > 0 ? !a_outward : a_outward;
}

}  // namespace

XxConstruction xx_construct(int L, const QuantumNumbers& numbers,
                            const RunConfig& cfg) {
  const int M = numbers.size();
  XxConstruction xc{PreparedSystem{BetheSystem(L, Anisotropy(kPi / 2), numbers),
                                   assign_lines_xx(numbers, L),
                                   std::vector<Half>(M, 0)},
                    RootSet{}, {}};
  auto& lines = xc.sys.lines;

  std::vector<int> key(M);
  for (int i = 0; i < M; ++i) key[i] = xx_key(numbers.twice_at(i), lines[i], L);

  // Equation numbers: the window label (real) or its zone image (shifted),
  // minus the exact branch constants of the mixed pair terms (2 pi per mixed
  // partner to the right in the tie-broken order).
  for (int i = 0; i < M; ++i) {
    Half w = numbers.twice_at(i);
    int base = (lines[i] == Line::Real) ? w : (w >= 0 ? w : w + 2 * L);
    int offs = 0;
    for (int g = 0; g < M; ++g) {
      if (g == i || lines[g] == lines[i]) continue;
      if (key_less(key[i], lines[i], key[g], lines[g])) offs += 2;
    }
    xc.sys.eq_twice[i] = base - offs;
  }

  // Bound marginal pairs sit at a common large position where both branch
  // functions are at their limit to double precision.
  std::vector<bool> tied(M, false);
  for (int i = 0; i < M; ++i)
    for (int g = i + 1; g < M; ++g)
      if (key[i] == key[g] && lines[i] != lines[g]) tied[i] = tied[g] = true;

  xc.state.roots.resize(M);
  xc.momenta.resize(M);
  for (int i = 0; i < M; ++i) {
    double re;
    if (std::abs(key[i]) == L / 2) {
      re = key[i] > 0 ? cfg.escape_park : -cfg.escape_park;
    } else if (tied[i]) {
      re = key[i] > 0 ? 16.0 : -16.0;
    } else {
      re = std::atanh(std::tan(kPi * key[i] / (2.0 * L)));
    }
    xc.state.roots[i] = Rapidity{re, lines[i]};
    double k = kPi + kPi * numbers.twice_at(i) / L;  // pi + 2 pi n / L
    if (k > kPi) k -= 2.0 * kPi;
    xc.momenta[i] = k;
  }

  std::vector<double> F = residual(xc.state.roots, xc.sys, cfg);
  double f = 0.0;
  for (double x : F) f = std::max(f, std::abs(x));
  xc.state.residual_norm = f;
  xc.state.converged = f < 1e-9;
  return xc;
}

std::vector<Rapidity> seed_from_xx(const BetheSystem& sys, const RunConfig& cfg) {
  if (std::abs(sys.a.eta() - kPi / 2) > 1e-12)
    throw InputError("seed_from_xx requires eta = pi/2");
  return xx_construct(sys.L, sys.numbers, cfg).state.roots;
}

PreparedSystem prepare_all_real(const BetheSystem& sys) {
  PreparedSystem p{sys, std::vector<Line>(sys.M, Line::Real), sys.numbers.twice()};
  return p;
}

double root_momentum(const Rapidity& t, const Anisotropy& a) {
  double k = phi(t, a) + kPi;
  while (k > kPi) k -= 2.0 * kPi;
  while (k <= -kPi) k += 2.0 * kPi;
  return k;
}

XxxRootSet xxx_solve(int L, const QuantumNumbers& numbers, const RunConfig& cfg) {
  const int M = numbers.size();
  XxxRootSet out;
  out.lambdas.assign(M, 0.0);

  // Real-root bound from the isotropic kernel limits: |n| < (L - M + 1)/2.
  // Numbers exactly at the bound have their root at infinity (a zero-momentum
  // magnon); beyond it no real solution exists.
  const int bound2 = L - M + 1;  // doubled units
  std::vector<int> free_idx;
  std::vector<int> esc_sign(M, 0);
  for (int i = 0; i < M; ++i) {
    Half w = numbers.twice_at(i);
    if (std::abs(w) > bound2)
      throw InputError("no real isotropic root for |n| beyond the bound");
    if (std::abs(w) == bound2) {
      esc_sign[i] = w > 0 ? 1 : -1;
      out.lambdas[i] = esc_sign[i] * 1e9;
    } else {
      free_idx.push_back(i);
      out.lambdas[i] = 0.5 * std::tan(kPi * w / (2.0 * L));
    }
  }
  const int n = static_cast<int>(free_idx.size());

  auto resid = [&](const std::vector<double>& lam) {
    std::vector<double> F(n);
    for (int r = 0; r < n; ++r) {
      int i = free_idx[r];
      double f = L * phi_xxx(lam[i]) - kPi * numbers.twice_at(i);
      for (int g = 0; g < M; ++g) {
        if (g == i) continue;
        if (esc_sign[g] != 0)
          f -= esc_sign[g] > 0 ? -kPi : kPi;  // 2 atan(lam - (+-inf))
        else
          f -= phi2_xxx(lam[i] - lam[g]);
      }
      F[r] = f;
    }
    return F;
  };

  std::vector<double> F = resid(out.lambdas);
  double fnorm = inf_norm(F);
  for (int it = 0; it < cfg.max_iter && fnorm >= cfg.tol && n > 0; ++it) {
    out.iterations = it + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
      int i = free_idx[r];
      double diag = L * phi_xxx_prime(out.lambdas[i]);
      for (int c = 0; c < n; ++c) {
        int g = free_idx[c];
        if (g == i) continue;
        double d = phi2_xxx_prime(out.lambdas[i] - out.lambdas[g]);
        J(r, c) = d;
        diag -= d;
      }
      J(r, r) = diag;
    }
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) rhs(r) = F[r];
    Eigen::VectorXd dx = J.partialPivLu().solve(rhs);
    if (!dx.allFinite()) break;

    double step = 1.0;
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h, step *= 0.5) {
      std::vector<double> trial = out.lambdas;
      for (int r = 0; r < n; ++r) trial[free_idx[r]] -= step * dx(r);
      std::vector<double> Ft = resid(trial);
      double ft = inf_norm(Ft);
      if (ft < fnorm) {
        out.lambdas = std::move(trial);
        F = std::move(Ft);
        fnorm = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.residual_norm = fnorm;
  out.converged = fnorm < cfg.tol;
  return out;
}

double xxx_root_momentum(double lam) {
  if (std::abs(lam) >= 1e8) return 0.0;  // magnon at infinite rapidity
  double k = kPi + phi_xxx(lam);
  while (k > kPi) k -= 2.0 * kPi;
  while (k <= -kPi) k += 2.0 * kPi;
  return k;
}

}  // namespace xxz
