#ifndef XXZ_CONFIG_HPP
#define XXZ_CONFIG_HPP

#include <cmath>

namespace xxz {

inline constexpr double kPi = 3.14159265358979323846;

// All solver-facing tunables in one place. Defaults are the working values;
// the CLI can override any of them from flags or a config file.
struct RunConfig {
  double tol = 1e-12;              // convergence threshold on ||F||_inf
  int max_iter = 200;              // Newton iterations per solve
  int max_halvings = 20;           // step-halving depth for damped Newton
  double coincident_tol = 1e-9;    // minimal same-line root separation
  double boundary_eps = 1e-6;      // |n| vs n_c ambiguity margin (number units)
  double jump_window = 0.02 * kPi; // eta window around eta_m where counts are not asserted
  double escape_threshold = 25.0;  // |re| beyond which a root counts as escaped
  double escape_park = 30.0;       // where escaped roots are parked (phi at its limit)
  double freeze_re = 12.0;         // |re| beyond which Newton holds a root fixed
                                   // (phi' there is below the residual tolerance)
  double reseed_re = 10.0;         // initial |re| on the new line after a jump
  double xxx_eps = 1e-3;           // eta below which a state counts as "at the XXX point"
  int max_L = 14;                  // exact-diagonalization size cap
  int ed_max_dim = 4000;           // dense-diagonalization dimension cap
  int evolve_steps = 400;          // default sweep resolution
  int bisect_levels = 12;          // step-bisection depth on failed continuation
  double momentum_coincidence = 1e-8;  // quasi-momentum collision threshold
  double marginal_tol = 1e-8;      // residual floor for bound marginal pairs
};

}  // namespace xxz

#endif
