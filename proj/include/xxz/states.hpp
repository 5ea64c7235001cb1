#ifndef XXZ_STATES_HPP
#define XXZ_STATES_HPP

#include <vector>

#include "xxz/config.hpp"
#include "xxz/halves.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

// An ordered, parity-checked quantum-number set (physical window labels).
class QuantumNumbers {
 public:
  QuantumNumbers() = default;
  // Validates: distinct, sorted on construction, parity matching M (integers
  // for M odd, half-integers for M even).
  explicit QuantumNumbers(std::vector<Half> twice_values);

  int size() const { return static_cast<int>(w_.size()); }
  const std::vector<Half>& twice() const { return w_; }
  Half twice_at(int i) const { return w_[i]; }
  double value(int i) const { return half_value(w_[i]); }
  int parity_bit() const;  // 0 integers, 1 half-integers
  bool contains(Half w) const;

 private:
  std::vector<Half> w_;
};

struct BetheSystem {
  int L;
  int M;
  Anisotropy a;
  QuantumNumbers numbers;

  BetheSystem(int L_, Anisotropy a_, QuantumNumbers n);
  int excess() const { return M - L / 2; }  // k = M - L/2
};

// Quantum numbers absent from `occupied` within the Brillouin window of the
// same parity class.
struct HoleSet {
  std::vector<Half> twice_values;
};

HoleSet holes_of(const QuantumNumbers& occupied, int L);

// The M consecutive values of the correct parity symmetric about 0.
QuantumNumbers ground_numbers(int L, int M);

// Number of real-axis vacancies, Eq.-(R)/(Rk) closed forms:
//   k >= 0: R = L/2 - k + 2 floor(1/2 + k eta/pi)
//   k <  0: R = L/2 + |k| - 2 floor(1/2 + |k| eta/pi)
// Throws AtJumpPoint when 1/2 + |k| eta/pi is within boundary_eps of an
// integer; the formulas are violated in a window around those points.
int real_vacancies(int L, int k, const Anisotropy& a, double boundary_eps = 1e-6);

// Complex-root count C = M - R = 2k - 2 floor(1/2 + k eta/pi), k >= 0.
int complex_count(int L, int M, const Anisotropy& a, double boundary_eps = 1e-6);

// Jump points eta_m = (pi/k)(m + 1/2) inside (0, pi/2], k >= 1.
std::vector<double> jump_points(int k);

// The jump points relevant to a sweep for excess k (|k| for the hole-side
// states; empty for k = 0).
std::vector<double> jump_points_abs(int k);

// Particle-hole duality, Eq.-(S): the dual system has M* = L - M numbers
//   n* = L/2 - n0   (n0 > 0),   n* = -L/2 - n0   (n0 < 0),
// applied to the holes n0 of the primal set. A hole at n0 = 0 maps to the
// window edge L/2. Throws WindowMismatch if the hole count is not L - M.
struct DualPair {
  BetheSystem primal;
  BetheSystem dual;
  // hole_map[i] = {primal hole, dual number it produced}, doubled units.
  std::vector<std::pair<Half, Half>> hole_map;
};

DualPair dual_numbers(const BetheSystem& primal);

// Raw Eq.-(S) map on a hole set (exposed for involution checks).
std::vector<Half> dual_of_holes(const HoleSet& holes, int L, int M_primal);

// Line assignment at the XX point for a physical number set: RealLine for
// |n| < L/4, ShiftedLine for |n| > L/4; numbers exactly at L/4 sit at the
// classification boundary and follow the sign of k (shifted for k > 0, real
// otherwise), matching the vacancy counts just below eta = pi/2.
std::vector<Line> assign_lines_xx(const QuantumNumbers& numbers, int L);

}  // namespace xxz

#endif
