#ifndef XXZ_EVOLUTION_HPP
#define XXZ_EVOLUTION_HPP

#include <string>
#include <vector>

#include "xxz/config.hpp"
#include "xxz/solver.hpp"

namespace xxz {

enum class JumpDirection { RealToShifted, ShiftedToReal };

// One crossing of a jump point. Roots migrate in symmetric batches (the
// complex-root count changes by two at each eta_m), so an event records the
// batch; quantum_number is the largest-|n| migrating label.
struct JumpEvent {
  double eta_at = 0.0;
  Half quantum_number = 0;  // physical window label (doubled)
  JumpDirection direction = JumpDirection::RealToShifted;
  double predicted_eta = 0.0;  // nearest eta_m
  int roots_moved = 1;
};

struct TraceStep {
  double eta;
  RootSet state;
  int R_observed;
  int C_observed;
  double energy;  // relative to the pseudovacuum
};

enum class TraceStatus { Completed, Truncated, StuckAtJump };

struct EvolutionTrace {
  std::vector<TraceStep> steps;
  std::vector<JumpEvent> events;
  PreparedSystem final_sys;  // line tags and equation numbers after all jumps
  TraceStatus status = TraceStatus::Completed;
  std::string message;
};

// Continuation of a fixed-quantum-number eigenstate from eta0 (the eta of
// sys) down to eta_target. Each step is Newton-seeded from the previous one;
// a root pushed to |re| >= cfg.escape_threshold near a jump point is re-seeded
// on the other line with a freshly derived equation number and the solve
// repeated. Steps that fail to converge are bisected up to cfg.bisect_levels.
EvolutionTrace evolve(const PreparedSystem& sys, const RootSet& start,
                      double eta_target, int steps, const RunConfig& cfg = {},
                      bool geometric = false);

struct CountCheck {
  double eta;
  int R_observed;
  int R_formula;  // -1 inside a jump window (not asserted)
  bool in_window;
  bool ok;
};

struct CountReport {
  std::vector<CountCheck> checks;
  bool all_ok_outside_windows = true;
  int violations_in_window = 0;
};

// Compares observed real-root counts along a trace against the closed-form
// vacancy counts, skipping steps within cfg.jump_window of any eta_m.
CountReport check_counts(const EvolutionTrace& trace, const RunConfig& cfg = {});

// XX construction followed by continuation to the requested eta.
struct SolvedState {
  PreparedSystem sys;
  RootSet state;
};

SolvedState solve_at(int L, const QuantumNumbers& numbers, double eta,
                     const RunConfig& cfg = {});

// Machine-readable trace exports.
std::string trace_to_csv(const EvolutionTrace& trace);
std::string trace_to_json(const EvolutionTrace& trace);

}  // namespace xxz

#endif
