#ifndef XXZ_KERNELS_HPP
#define XXZ_KERNELS_HPP

#include <cmath>
#include <stdexcept>

#include "xxz/config.hpp"

namespace xxz {

// Which line of the complex plane a root lives on. A Rapidity stores only
// the real part; the represented root is re (RealLine) or re + i*pi/2
// (ShiftedLine).
enum class Line { Real, Shifted };

struct Rapidity {
  double re = 0.0;
  Line line = Line::Real;
};

// Anisotropy eta in (0, pi/2], Delta = cos(eta). The XXX point is reached
// only as a small-eta limit; eta = 0 itself is handled by the rescaled
// isotropic kernels below.
class Anisotropy {
 public:
  explicit Anisotropy(double eta) : eta_(eta) {
    if (!(eta > 0.0) || eta > kPi / 2 + 1e-15)
      throw std::invalid_argument("eta must lie in (0, pi/2]");
  }
  static Anisotropy from_delta(double delta) {
    if (!(delta >= 0.0) || delta >= 1.0)
      throw std::invalid_argument("delta must lie in [0, 1)");
    return Anisotropy(std::acos(delta));
  }
  double eta() const { return eta_; }
  double delta() const { return std::cos(eta_); }

 private:
  double eta_;
};

// Scattering phase phi(t) = (1/i) ln(-sh(t - i eta/2)/sh(t + i eta/2)),
// branch-resolved per line via explicit arctangent decompositions:
//
//   real line:    phi = pi - 2 atan2(cosh(re) sin(eta/2), sinh(re) cos(eta/2))
//                 odd, increasing, range (-(pi-eta), pi-eta)
//   shifted line: phi = 2 pi - 2 atan2(cosh(re) cos(eta/2), -sinh(re) sin(eta/2))
//                 phi(0) = pi, decreasing, range (pi-eta, pi+eta)
//
// No complex logarithms anywhere; winding is fixed by construction.
double phi(const Rapidity& t, const Anisotropy& a);
double phi_prime(const Rapidity& t, const Anisotropy& a);

// Pair phase phi2 = phi with eta -> 2 eta, evaluated on the difference of two
// roots. same_line: both roots on the same line (real difference, odd branch).
// Mixed: exactly one root shifted (difference carries i pi/2); branch fixed by
// the value pi at dt = 0, decreasing, range (pi-2eta, pi+2eta).
double phi2(double dt, bool same_line, const Anisotropy& a);
double phi2_prime(double dt, bool same_line, const Anisotropy& a);

// Limits used by the counting function: phi(+-inf) = +-(pi-eta) on the real
// line; phi2(+-inf) = +-(pi-2eta) same-line, (pi-2eta)/(pi+2eta) mixed.
inline double phi_limit(const Anisotropy& a) { return kPi - a.eta(); }
inline double phi2_limit(const Anisotropy& a) { return kPi - 2.0 * a.eta(); }

// Isotropic (XXX) kernels in the rescaled rapidity lambda = t/eta, the
// eta -> 0 limit of the functions above.
inline double phi_xxx(double lam) { return 2.0 * std::atan(2.0 * lam); }
inline double phi_xxx_prime(double lam) { return 4.0 / (1.0 + 4.0 * lam * lam); }
inline double phi2_xxx(double dlam) { return 2.0 * std::atan(dlam); }
inline double phi2_xxx_prime(double dlam) { return 2.0 / (1.0 + dlam * dlam); }

}  // namespace xxz

#endif
