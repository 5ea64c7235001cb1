#include "xxz/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

QuantumNumbers::QuantumNumbers(std::vector<Half> twice_values) : w_(std::move(twice_values)) {
  std::sort(w_.begin(), w_.end());
  if (std::adjacent_find(w_.begin(), w_.end()) != w_.end())
    throw InputError("quantum numbers must be distinct");
  int par = required_parity(static_cast<int>(w_.size()));
  for (Half w : w_) {
    if (((w % 2) + 2) % 2 != par)
      throw InputError("quantum number parity violates the M-parity rule: " +
                       half_to_string(w) + " with M = " + std::to_string(w_.size()));
  }
}

int QuantumNumbers::parity_bit() const { return required_parity(size()); }

bool QuantumNumbers::contains(Half w) const {
  return std::binary_search(w_.begin(), w_.end(), w);
}

BetheSystem::BetheSystem(int L_, Anisotropy a_, QuantumNumbers n)
    : L(L_), M(n.size()), a(a_), numbers(std::move(n)) {
  if (L <= 0 || L % 2 != 0) throw InputError("L must be even and positive");
  if (M > L) throw InputError("M cannot exceed L");
}

HoleSet holes_of(const QuantumNumbers& occupied, int L) {
  HoleSet h;
  for (Half w : brillouin_window(L, occupied.parity_bit()))
    if (!occupied.contains(w)) h.twice_values.push_back(w);
  return h;
}

QuantumNumbers ground_numbers(int L, int M) {
  if (M < 0 || M > L) throw InputError("M out of range");
  std::vector<Half> w;
  w.reserve(M);
  for (int j = 0; j < M; ++j) w.push_back(-(M - 1) + 2 * j);
  (void)L;
  return QuantumNumbers(std::move(w));
}

namespace {

// floor(1/2 + |k| eta / pi) with a guard window around integer arguments.
int jump_floor(int kabs, const Anisotropy& a, double boundary_eps) {
  double x = 0.5 + static_cast<double>(kabs) * a.eta() / kPi;
  double nearest = std::round(x);
  if (std::abs(x - nearest) < boundary_eps)
    throw AtJumpPoint("eta within boundary_eps of a jump point for k = " +
                      std::to_string(kabs));
  return static_cast<int>(std::floor(x));
}

}  // namespace

int real_vacancies(int L, int k, const Anisotropy& a, double boundary_eps) {
  if (k == 0) return L / 2;
  int kabs = std::abs(k);
  int f = jump_floor(kabs, a, boundary_eps);
  return k > 0 ? L / 2 - k + 2 * f : L / 2 + kabs - 2 * f;
}

int complex_count(int L, int M, const Anisotropy& a, double boundary_eps) {
  int k = M - L / 2;
  if (k < 0) throw InputError("complex_count requires M >= L/2");
  return M - real_vacancies(L, k, a, boundary_eps);
}

std::vector<double> jump_points(int k) {
  if (k < 1) throw InputError("jump_points requires k >= 1");
  std::vector<double> pts;
  for (int m = 0;; ++m) {
    double eta = (kPi / k) * (m + 0.5);
    if (eta > kPi / 2 + 1e-15) break;
    pts.push_back(eta);
  }
  return pts;
}

std::vector<double> jump_points_abs(int k) {
  if (k == 0) return {};
  return jump_points(std::abs(k));
}

std::vector<Half> dual_of_holes(const HoleSet& holes, int L, int M_primal) {
  if (static_cast<int>(holes.twice_values.size()) != L - M_primal)
    throw WindowMismatch("hole count " + std::to_string(holes.twice_values.size()) +
                         " does not equal L - M = " + std::to_string(L - M_primal));
  std::vector<Half> dual;
  dual.reserve(holes.twice_values.size());
  for (Half w0 : holes.twice_values) {
    // doubled units: L/2 - n0 -> L - w0; the n0 = 0 hole keeps the + branch.
    dual.push_back(w0 >= 0 ? L - w0 : -L - w0);
  }
  std::sort(dual.begin(), dual.end());
  return dual;
}

DualPair dual_numbers(const BetheSystem& primal) {
  HoleSet h = holes_of(primal.numbers, primal.L);
  std::vector<Half> dual_w = dual_of_holes(h, primal.L, primal.M);
  std::vector<std::pair<Half, Half>> map;
  map.reserve(h.twice_values.size());
  for (Half w0 : h.twice_values)
    map.emplace_back(w0, w0 >= 0 ? primal.L - w0 : -primal.L - w0);
  BetheSystem dual(primal.L, primal.a, QuantumNumbers(std::move(dual_w)));
  return DualPair{primal, std::move(dual), std::move(map)};
}

std::vector<Line> assign_lines_xx(const QuantumNumbers& numbers, int L) {
  int k = numbers.size() - L / 2;
  std::vector<Line> lines(numbers.size(), Line::Real);
  for (int i = 0; i < numbers.size(); ++i) {
    int aw = std::abs(numbers.twice_at(i));  // doubled |n|; boundary is L/2
    if (aw > L / 2 || (aw == L / 2 && k > 0)) lines[i] = Line::Shifted;
  }
  return lines;
}

}  // namespace xxz
