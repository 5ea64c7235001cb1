#ifndef XXZ_DUALITY_HPP
#define XXZ_DUALITY_HPP

#include "xxz/ed_oracle.hpp"
#include "xxz/states.hpp"

namespace xxz {

struct DualityReport {
  SpectralMatch match;      // primal state against ED, for reference
  double primal_energy = 0.0;  // absolute
  double dual_energy = 0.0;    // absolute
  double energy_diff = 0.0;    // |primal - dual|
  double overlap = 0.0;        // |<primal, flip(dual)>| normalized
  bool primal_converged = false;
  bool dual_converged = false;
  bool ok = false;
};

// Solves both members of a dual pair at the pair's eta, builds both
// wavefunctions (the dual one on the flipped pseudovacuum, realized as a
// global spin flip), and reports the energy difference and overlap.
DualityReport verify_duality(const DualPair& pair, double tol = 1e-10,
                             double overlap_tol = 1e-8,
                             const RunConfig& cfg = {});

}  // namespace xxz

#endif
