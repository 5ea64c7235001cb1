#include "xxz/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

double epsilon(double p, const Anisotropy& a) {
  return (kPi / 2.0) * (std::sin(a.eta()) / a.eta()) * std::sin(p);
}

Excitation make_excitation(ExcitationKind kind, double p, const Anisotropy& a) {
  return Excitation{kind, p, epsilon(p, a)};
}

std::pair<double, double> two_excitation(double p1, double p2, const Anisotropy& a) {
  return {epsilon(p1, a) + epsilon(p2, a), p1 + p2};
}

double excitation_momentum(Half w, int L, ExcitationKind kind) {
  double an = std::abs(half_value(w));
  double edge = L / 4.0;
  double sign = w >= 0 ? 1.0 : -1.0;
  double disp = kind == ExcitationKind::Particle ? an - edge : edge - an;
  return sign * 2.0 * kPi * disp / L;
}

QuantumNumbers particle_hole_numbers(int L, Half particle_w, Half hole_w) {
  std::vector<Half> w = ground_numbers(L, L / 2).twice();
  auto it = std::find(w.begin(), w.end(), hole_w);
  if (it == w.end()) throw InputError("hole number is not in the filled sea");
  if (std::abs(particle_w) <= L / 2)
    throw InputError("particle number must lie outside the sea, |n| > L/4");
  *it = particle_w;
  return QuantumNumbers(std::move(w));
}

QuantumNumbers two_particle_numbers(int L, Half p1_w, Half p2_w) {
  if (L % 4 != 0) throw InputError("k = +-1 construction assumes L divisible by 4");
  std::vector<Half> w = ground_numbers(L, L / 2 + 1).twice();
  // the no-hole M = L/2 + 1 set ends at the band-edge slots +-L/4
  if (std::abs(w.front()) != L / 2 || std::abs(w.back()) != L / 2)
    throw InputError("unexpected edge structure of the k=1 sea");
  if (std::abs(p1_w) <= L / 2 || std::abs(p2_w) <= L / 2)
    throw InputError("particle numbers must satisfy |n| > L/4");
  w.front() = p1_w;
  w.back() = p2_w;
  return QuantumNumbers(std::move(w));
}

QuantumNumbers two_hole_numbers(int L, Half h1_w, Half h2_w) {
  if (L % 4 != 0) throw InputError("k = +-1 construction assumes L divisible by 4");
  std::vector<Half> w;
  for (Half x = -L / 2; x <= L / 2; x += 2)
    if (x != h1_w && x != h2_w) w.push_back(x);
  if (static_cast<int>(w.size()) != L / 2 - 1)
    throw InputError("hole numbers must be distinct slots inside |n| <= L/4");
  return QuantumNumbers(std::move(w));
}

}  // namespace xxz
