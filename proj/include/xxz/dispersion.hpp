#ifndef XXZ_DISPERSION_HPP
#define XXZ_DISPERSION_HPP

#include <vector>

#include "xxz/config.hpp"
#include "xxz/states.hpp"

namespace xxz {

enum class ExcitationKind { Particle, Hole };

struct Excitation {
  ExcitationKind kind;
  double p;       // momentum in (-pi, pi]
  double energy;  // epsilon(p)
};

// One-excitation dispersion, identical for particles and holes:
//   epsilon(p) = (pi/2) (sin eta / eta) sin p.
double epsilon(double p, const Anisotropy& a);

Excitation make_excitation(ExcitationKind kind, double p, const Anisotropy& a);

// Additive two-excitation kinematics: dE = eps(p1) + eps(p2), dP = p1 + p2.
std::pair<double, double> two_excitation(double p1, double p2, const Anisotropy& a);

// Momentum of a quantum-number displacement relative to the filled sea edge
// at |n| = L/4: a particle added at n (|n| > L/4) carries
// p = 2 pi (|n| - L/4)/L signed by the edge it sits on; a hole dug at n
// (|n| < L/4) carries p = 2 pi (L/4 - |n|)/L with the same sign convention.
double excitation_momentum(Half twice_n, int L, ExcitationKind kind);

// Quantum-number sets for the finite-size checks (doubled units):
//  - k=0: ground sea with the number at hole_n removed and particle_n added.
//  - k=+1: no-hole sea of M = L/2 + 1 with its two edge particles moved to
//    the given numbers.
//  - k=-1: sea of M = L/2 - 1 with holes dug at the given numbers.
QuantumNumbers particle_hole_numbers(int L, Half particle_w, Half hole_w);
QuantumNumbers two_particle_numbers(int L, Half p1_w, Half p2_w);
QuantumNumbers two_hole_numbers(int L, Half h1_w, Half h2_w);

}  // namespace xxz

#endif
