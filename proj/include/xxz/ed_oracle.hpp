#ifndef XXZ_ED_ORACLE_HPP
#define XXZ_ED_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "xxz/config.hpp"
#include "xxz/solver.hpp"

namespace xxz {

// Fixed-Sz sector basis: all L-bit configurations with popcount M (bit j set
// means an up spin at site j), in increasing mask order.
struct SectorBasis {
  int L = 0;
  int M = 0;
  std::vector<uint32_t> states;

  int dim() const { return static_cast<int>(states.size()); }
  int index_of(uint32_t mask) const;
};

SectorBasis build_basis(int L, int M, const RunConfig& cfg = {});

// H = sum_j [ (S+_j S-_{j+1} + h.c.)/2 + Delta Sz_j Sz_{j+1} ], periodic.
// Real symmetric, block-diagonal over sectors; this returns one block.
Eigen::MatrixXd build_hamiltonian(const SectorBasis& basis, double delta);

// Energy of the fully polarized reference state: Delta * L / 4.
inline double pseudovacuum_energy(int L, double delta) { return delta * L / 4.0; }

struct EigenPairs {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // columns
};

EigenPairs diagonalize(const Eigen::MatrixXd& H, const RunConfig& cfg = {});

// Diagonalization with an on-disk cache keyed by (L, M, delta); cache_dir
// empty means no caching.
EigenPairs diagonalize_sector(int L, int M, double delta,
                              const std::string& cache_dir = "",
                              const RunConfig& cfg = {});

struct WaveVector {
  Eigen::VectorXcd amplitudes;
  double norm = 0.0;
  bool is_null = false;
};

// Coordinate Bethe wavefunction from real quasi-momenta:
//   psi(x1<...<xM) = sum_P A(P) exp(i sum_j k_{P(j)} x_j)
// with A updated by -S(a,b) per adjacent exchange,
//   S(a,b) = (1 + e^{i(a+b)} - 2 Delta e^{ia}) / (1 + e^{i(a+b)} - 2 Delta e^{ib}).
// Coincident momenta make the sum cancel identically (S -> 1); the result is
// then flagged NullState-style via is_null.
WaveVector bethe_state_from_momenta(const std::vector<double>& momenta,
                                    double delta, const SectorBasis& basis,
                                    const RunConfig& cfg = {});

// Momenta k_alpha = phi(t_alpha) + pi of a solved root set, then the sum.
std::vector<double> momenta_of(const RootSet& state, const Anisotropy& a);

WaveVector bethe_amplitudes(const RootSet& state, const PreparedSystem& sys,
                            const SectorBasis& basis, const RunConfig& cfg = {});

// E = sum_alpha (cos k_alpha - Delta), relative to the pseudovacuum.
double energy_from_momenta(const std::vector<double>& momenta, double delta);
double energy_from_roots(const RootSet& state, const PreparedSystem& sys);

struct SpectralMatch {
  double bethe_energy = 0.0;  // absolute (pseudovacuum constant included)
  double ed_energy = 0.0;
  double overlap = 0.0;       // against the degenerate eigenspace
  int eigen_index = -1;       // first eigenvalue index of the matched group
  int L = 0;
  int M = 0;
};

// Best-overlap eigenpair for v; degenerate eigenvalues are treated as one
// subspace (overlap of v against the projector). Throws NullState for null v.
SpectralMatch match_state(const WaveVector& v, double bethe_energy_abs,
                          const EigenPairs& eigs, int L, int M,
                          double degeneracy_tol = 1e-9);

// <v, T v>/<v, v> where T translates by one site; equals exp(-i sum k) for a
// Bethe eigenvector.
std::complex<double> translation_phase(const WaveVector& v, const SectorBasis& basis);

// Sector-raising operator S+ = sum_j S+_j : (L, M) -> (L, M + 1).
WaveVector apply_splus(const WaveVector& v, const SectorBasis& from,
                       const SectorBasis& to);

// Basis bit-flip (L, M) -> (L, L - M); global spin flip commutes with H.
WaveVector flip_spins(const WaveVector& v, const SectorBasis& from,
                      const SectorBasis& to);

// Isotropic-limit verification: compares a solved XXZ state at small eta with
// (S+)^{2k} applied to the isotropic 2k-hole reference state whose hole
// positions follow n0 = L/2 - n (n > 0), n0 = -L/2 - n (n < 0) from the
// shifted-root numbers n of the XXZ state.
struct XxxLimitReport {
  double eta = 0.0;
  double overlap = 0.0;
  std::vector<Half> xxx_numbers;      // reference-state numbers (doubled)
  std::vector<Half> xxx_holes;        // observed hole slots (doubled)
  std::vector<Half> predicted_holes;  // from the duality map (doubled)
  bool holes_match = false;
  bool xxx_converged = false;
};

XxxLimitReport xxx_limit_check(const PreparedSystem& sys, const RootSet& state,
                               const RunConfig& cfg = {});

}  // namespace xxz

#endif
