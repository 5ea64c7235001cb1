#ifndef XXZ_ERRORS_HPP
#define XXZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xxz {

// Thrown when two roots on the same line come closer than the coincidence
// tolerance; distinct quantum numbers must give distinct roots, so a
// collision signals a solver failure, not physics.
struct CoincidentRoots : std::runtime_error {
  explicit CoincidentRoots(const std::string& what) : std::runtime_error(what) {}
};

// Quantum number within boundary_eps of the critical value n_c; such states
// belong to jump analysis, not static classification.
struct BoundaryAmbiguous : std::runtime_error {
  explicit BoundaryAmbiguous(const std::string& what) : std::runtime_error(what) {}
};

// Vacancy-count formulas are undefined at the jump points eta_m.
struct AtJumpPoint : std::runtime_error {
  explicit AtJumpPoint(const std::string& what) : std::runtime_error(what) {}
};

// Hole-set size disagrees with L - M; indicates a broken window convention.
struct WindowMismatch : std::runtime_error {
  explicit WindowMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SectorTooLarge : std::runtime_error {
  explicit SectorTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// A wavefunction that is identically zero was passed where a state is required.
struct NullState : std::runtime_error {
  explicit NullState(const std::string& what) : std::runtime_error(what) {}
};

// Re-seeding a jumped root failed on both lines.
struct StuckAtJump : std::runtime_error {
  explicit StuckAtJump(const std::string& what) : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xxz

#endif
