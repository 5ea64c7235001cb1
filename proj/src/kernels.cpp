#include "xxz/kernels.hpp"

#include "xxz/errors.hpp"

namespace xxz {

namespace {

// phi on the real line with half-angle he = eta_eff/2. Shared between phi
// (he = eta/2) and same-line phi2 (he = eta).
double branch_real(double re, double he) {
  return kPi - 2.0 * std::atan2(std::cosh(re) * std::sin(he),
                                std::sinh(re) * std::cos(he));
}

// phi on the shifted line. Degenerates to a step of height 2 pi at he = pi/2,
// which only occurs for phi2 at the XX point; the dt = 0 value stays pi.
double branch_shifted(double re, double he) {
  if (re == 0.0) return kPi;
  return 2.0 * kPi - 2.0 * std::atan2(std::cosh(re) * std::cos(he),
                                      -std::sinh(re) * std::sin(he));
}

double branch_real_prime(double re, double eta_eff) {
  return 2.0 * std::sin(eta_eff) / (std::cosh(2.0 * re) - std::cos(eta_eff));
}

double branch_shifted_prime(double re, double eta_eff) {
  return -2.0 * std::sin(eta_eff) / (std::cosh(2.0 * re) + std::cos(eta_eff));
}

}  // namespace

double phi(const Rapidity& t, const Anisotropy& a) {
  return t.line == Line::Real ? branch_real(t.re, 0.5 * a.eta())
                              : branch_shifted(t.re, 0.5 * a.eta());
}

double phi_prime(const Rapidity& t, const Anisotropy& a) {
  return t.line == Line::Real ? branch_real_prime(t.re, a.eta())
                              : branch_shifted_prime(t.re, a.eta());
}

double phi2(double dt, bool same_line, const Anisotropy& a) {
  if (same_line) {
    if (dt == 0.0) throw CoincidentRoots("phi2 at zero same-line separation");
    return branch_real(dt, a.eta());
  }
  return branch_shifted(dt, a.eta());
}

double phi2_prime(double dt, bool same_line, const Anisotropy& a) {
  if (same_line) {
    if (dt == 0.0) throw CoincidentRoots("phi2' at zero same-line separation");
    return branch_real_prime(dt, 2.0 * a.eta());
  }
  return branch_shifted_prime(dt, 2.0 * a.eta());
}

}  // namespace xxz
