#include "xxz/duality.hpp"

#include <cmath>

#include "xxz/evolution.hpp"

namespace xxz {

DualityReport verify_duality(const DualPair& pair, double tol, double overlap_tol,
                             const RunConfig& cfg) {
  const int L = pair.primal.L;
  const double eta = pair.primal.a.eta();
  const double delta = pair.primal.a.delta();

  SolvedState p = solve_at(L, pair.primal.numbers, eta, cfg);
  SolvedState d = solve_at(L, pair.dual.numbers, eta, cfg);

  DualityReport rep;
  rep.primal_converged = p.state.converged;
  rep.dual_converged = d.state.converged;

  double e0 = pseudovacuum_energy(L, delta);
  rep.primal_energy = energy_from_roots(p.state, p.sys) + e0;
  rep.dual_energy = energy_from_roots(d.state, d.sys) + e0;
  rep.energy_diff = std::abs(rep.primal_energy - rep.dual_energy);

  SectorBasis basis_p = build_basis(L, pair.primal.M, cfg);
  SectorBasis basis_d = build_basis(L, pair.dual.M, cfg);
  WaveVector vp = bethe_amplitudes(p.state, p.sys, basis_p, cfg);
  WaveVector vd_raw = bethe_amplitudes(d.state, d.sys, basis_d, cfg);
  WaveVector vd = flip_spins(vd_raw, basis_d, basis_p);

  auto ov = vp.amplitudes.dot(vd.amplitudes);
  rep.overlap = std::abs(ov) / (vp.norm * vd.norm);

  EigenPairs eigs = diagonalize(build_hamiltonian(basis_p, delta), cfg);
  rep.match = match_state(vp, rep.primal_energy, eigs, L, pair.primal.M);

  rep.ok = rep.primal_converged && rep.dual_converged &&
           rep.energy_diff < tol && rep.overlap > 1.0 - overlap_tol;
  return rep;
}

}  // namespace xxz
