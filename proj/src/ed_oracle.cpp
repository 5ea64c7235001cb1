#include "xxz/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "xxz/errors.hpp"

namespace xxz {

namespace {
using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
}  // namespace

int SectorBasis::index_of(uint32_t mask) const {
  auto it = std::lower_bound(states.begin(), states.end(), mask);
  if (it == states.end() || *it != mask) return -1;
  return static_cast<int>(it - states.begin());
}

SectorBasis build_basis(int L, int M, const RunConfig& cfg) {
  if (L > cfg.max_L) throw SectorTooLarge("L exceeds the diagonalization cap");
  SectorBasis b{L, M, {}};
  for (uint32_t m = 0; m < (1u << L); ++m)
    if (std::popcount(m) == M) b.states.push_back(m);
  if (b.dim() > cfg.ed_max_dim) throw SectorTooLarge("sector dimension too large");
  return b;
}

Eigen::MatrixXd build_hamiltonian(const SectorBasis& basis, double delta) {
  const int L = basis.L;
  const int dim = basis.dim();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    uint32_t s = basis.states[i];
    double diag = 0.0;
    for (int j = 0; j < L; ++j) {
      int j2 = (j + 1) % L;
      int b1 = (s >> j) & 1, b2 = (s >> j2) & 1;
      if (b1 == b2) {
        diag += 0.25 * delta;
      } else {
        diag -= 0.25 * delta;
        uint32_t t = s ^ ((1u << j) | (1u << j2));
        H(basis.index_of(t), i) += 0.5;
      }
    }
    H(i, i) += diag;
  }
  return H;
}

EigenPairs diagonalize(const Eigen::MatrixXd& H, const RunConfig& cfg) {
  if (H.rows() > cfg.ed_max_dim) throw SectorTooLarge("matrix dimension too large");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  return EigenPairs{es.eigenvalues(), es.eigenvectors()};
}

namespace {

std::string cache_filename(const std::string& dir, int L, int M, double delta) {
  uint64_t bits;
  std::memcpy(&bits, &delta, sizeof(bits));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "/ed_L%d_M%d_%016llx.bin", L, M,
                static_cast<unsigned long long>(bits));
  return dir + buf;
}

constexpr char kCacheMagic[8] = {'X', 'X', 'Z', 'E', 'D', 'C', '0', '1'};

bool load_cached(const std::string& path, int L, int M, double delta, EigenPairs& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  char magic[8];
  int32_t l, m;
  int64_t dim;
  double d;
  f.read(magic, 8);
  f.read(reinterpret_cast<char*>(&l), 4);
  f.read(reinterpret_cast<char*>(&m), 4);
  f.read(reinterpret_cast<char*>(&dim), 8);
  f.read(reinterpret_cast<char*>(&d), 8);
  if (!f || std::memcmp(magic, kCacheMagic, 8) != 0 || l != L || m != M || d != delta)
    return false;
  out.energies.resize(dim);
  out.vectors.resize(dim, dim);
  f.read(reinterpret_cast<char*>(out.energies.data()), dim * 8);
  f.read(reinterpret_cast<char*>(out.vectors.data()), dim * dim * 8);
  return static_cast<bool>(f);
}

void save_cached(const std::string& path, int L, int M, double delta,
                 const EigenPairs& eigs) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return;
  int32_t l = L, m = M;
  int64_t dim = eigs.energies.size();
  f.write(kCacheMagic, 8);
  f.write(reinterpret_cast<const char*>(&l), 4);
  f.write(reinterpret_cast<const char*>(&m), 4);
  f.write(reinterpret_cast<const char*>(&dim), 8);
  f.write(reinterpret_cast<const char*>(&delta), 8);
  f.write(reinterpret_cast<const char*>(eigs.energies.data()), dim * 8);
  f.write(reinterpret_cast<const char*>(eigs.vectors.data()), dim * dim * 8);
}

}  // namespace

EigenPairs diagonalize_sector(int L, int M, double delta,
                              const std::string& cache_dir, const RunConfig& cfg) {
  if (!cache_dir.empty()) {
    EigenPairs cached;
    if (load_cached(cache_filename(cache_dir, L, M, delta), L, M, delta, cached))
      return cached;
  }
  SectorBasis basis = build_basis(L, M, cfg);
  EigenPairs eigs = diagonalize(build_hamiltonian(basis, delta), cfg);
  if (!cache_dir.empty())
    save_cached(cache_filename(cache_dir, L, M, delta), L, M, delta, eigs);
  return eigs;
}

WaveVector bethe_state_from_momenta(const std::vector<double>& momenta,
                                    double delta, const SectorBasis& basis,
                                    const RunConfig& cfg) {
  const int M = static_cast<int>(momenta.size());
  const int L = basis.L;
  if (M != basis.M) throw InputError("momentum count does not match the sector");

  WaveVector out;
  out.amplitudes = Eigen::VectorXcd::Zero(basis.dim());
  if (M == 0) {
    out.amplitudes(0) = 1.0;
    out.norm = 1.0;
    return out;
  }

  // Two-magnon exchange factors; coincident momenta give S = 1 and the
  // permutation sum cancels in pairs (the Bethe form of a Pauli collision).
  std::vector<cplx> S(static_cast<size_t>(M) * M, cplx(1.0));
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      if (a == b) continue;
      cplx esum = std::exp(kI * (momenta[a] + momenta[b]));
      cplx num = 1.0 + esum - 2.0 * delta * std::exp(kI * momenta[a]);
      cplx den = 1.0 + esum - 2.0 * delta * std::exp(kI * momenta[b]);
      if (std::abs(num) < 1e-13 && std::abs(den) < 1e-13)
        S[a * M + b] = 1.0;
      else
        S[a * M + b] = num / den;
    }

  // Phase tables exp(i k x).
  std::vector<cplx> ph(static_cast<size_t>(M) * L);
  for (int i = 0; i < M; ++i)
    for (int x = 0; x < L; ++x) ph[i * L + x] = std::exp(kI * (momenta[i] * x));

  // Up-spin positions per basis state.
  std::vector<int> pos(static_cast<size_t>(basis.dim()) * M);
  for (int s = 0; s < basis.dim(); ++s) {
    uint32_t m = basis.states[s];
    int j = 0;
    for (int x = 0; x < L; ++x)
      if ((m >> x) & 1) pos[s * M + j++] = x;
  }

  // Steinhaus-Johnson-Trotter: every permutation reached by one adjacent
  // transposition, so the amplitude is maintained multiplicatively.
  std::vector<int> perm(M), dir(M, -1), inv(M);
  for (int i = 0; i < M; ++i) perm[i] = inv[i] = i;
  cplx A = 1.0;

  auto accumulate = [&]() {
    for (int s = 0; s < basis.dim(); ++s) {
      cplx term = A;
      const int* xp = &pos[s * M];
      for (int j = 0; j < M; ++j) term *= ph[perm[j] * L + xp[j]];
      out.amplitudes(s) += term;
    }
  };

  accumulate();
  while (true) {
    // largest mobile value
    int mob = -1, mob_pos = -1;
    for (int v = M - 1; v >= 0; --v) {
      int p = inv[v];
      int q = p + dir[v];
      if (q >= 0 && q < M && perm[q] < v) {
        mob = v;
        mob_pos = p;
        break;
      }
    }
    if (mob < 0) break;
    int q = mob_pos + dir[mob];
    int other = perm[q];
    // exchange of adjacent momenta (a, b) -> (b, a) multiplies by -S(b, a);
    // this orientation is what makes the periodicity condition reproduce the
    // logarithmic equations (checked against ED eigenvectors).
    int a = (dir[mob] > 0) ? mob : other;
    int b = (dir[mob] > 0) ? other : mob;
    A *= -S[b * M + a];
    std::swap(perm[mob_pos], perm[q]);
    inv[mob] = q;
    inv[other] = mob_pos;
    for (int v = mob + 1; v < M; ++v) dir[v] = -dir[v];
    accumulate();
  }

  double scale = std::tgamma(M + 1.0);
  double maxabs = out.amplitudes.cwiseAbs().maxCoeff();
  out.norm = out.amplitudes.norm();
  out.is_null = maxabs < 1e-10 * scale;
  return out;
}

std::vector<double> momenta_of(const RootSet& state, const Anisotropy& a) {
  std::vector<double> k;
  k.reserve(state.roots.size());
  for (const auto& r : state.roots) k.push_back(root_momentum(r, a));
  return k;
}

WaveVector bethe_amplitudes(const RootSet& state, const PreparedSystem& sys,
                            const SectorBasis& basis, const RunConfig& cfg) {
  return bethe_state_from_momenta(momenta_of(state, sys.spec.a),
                                  sys.spec.a.delta(), basis, cfg);
}

double energy_from_momenta(const std::vector<double>& momenta, double delta) {
  double e = 0.0;
  for (double k : momenta) e += std::cos(k) - delta;
  return e;
}

double energy_from_roots(const RootSet& state, const PreparedSystem& sys) {
  return energy_from_momenta(momenta_of(state, sys.spec.a), sys.spec.a.delta());
}

SpectralMatch match_state(const WaveVector& v, double bethe_energy_abs,
                          const EigenPairs& eigs, int L, int M,
                          double degeneracy_tol) {
  if (v.is_null || v.norm == 0.0)
    throw NullState("match_state requires a non-null wavevector");
  const int dim = static_cast<int>(eigs.energies.size());
  SpectralMatch best;
  best.L = L;
  best.M = M;
  best.bethe_energy = bethe_energy_abs;

  int g0 = 0;
  double best_ov2 = -1.0;
  while (g0 < dim) {
    int g1 = g0 + 1;
    while (g1 < dim && eigs.energies(g1) - eigs.energies(g1 - 1) < degeneracy_tol)
      ++g1;
    double ov2 = 0.0;
    for (int i = g0; i < g1; ++i) {
      cplx c = eigs.vectors.col(i).cast<cplx>().dot(v.amplitudes);
      ov2 += std::norm(c);
    }
    if (ov2 > best_ov2) {
      best_ov2 = ov2;
      best.ed_energy = eigs.energies(g0);
      best.eigen_index = g0;
    }
    g0 = g1;
  }
  best.overlap = std::sqrt(best_ov2) / v.norm;
  return best;
}

std::complex<double> translation_phase(const WaveVector& v, const SectorBasis& basis) {
  const int L = basis.L;
  const uint32_t full = (1u << L) - 1;
  cplx num = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    uint32_t t = ((basis.states[i] << 1) | (basis.states[i] >> (L - 1))) & full;
    num += std::conj(v.amplitudes(basis.index_of(t))) * v.amplitudes(i);
  }
  return num / (v.norm * v.norm);
}

WaveVector apply_splus(const WaveVector& v, const SectorBasis& from,
                       const SectorBasis& to) {
  if (to.M != from.M + 1 || to.L != from.L)
    throw InputError("apply_splus sector mismatch");
  WaveVector out;
  out.amplitudes = Eigen::VectorXcd::Zero(to.dim());
  for (int i = 0; i < from.dim(); ++i) {
    uint32_t s = from.states[i];
    for (int j = 0; j < from.L; ++j) {
      if ((s >> j) & 1) continue;
      out.amplitudes(to.index_of(s | (1u << j))) += v.amplitudes(i);
    }
  }
  out.norm = out.amplitudes.norm();
  out.is_null = out.norm < 1e-12;
  return out;
}

WaveVector flip_spins(const WaveVector& v, const SectorBasis& from,
                      const SectorBasis& to) {
  if (to.M != from.L - from.M || to.L != from.L)
    throw InputError("flip_spins sector mismatch");
  const uint32_t full = (1u << from.L) - 1;
  WaveVector out;
  out.amplitudes = Eigen::VectorXcd::Zero(to.dim());
  for (int i = 0; i < from.dim(); ++i)
    out.amplitudes(to.index_of(~from.states[i] & full)) = v.amplitudes(i);
  out.norm = v.norm;
  out.is_null = v.is_null;
  return out;
}

XxxLimitReport xxx_limit_check(const PreparedSystem& sys, const RootSet& state,
                               const RunConfig& cfg) {
  const int L = sys.spec.L;
  const int M = sys.spec.M;
  const int k = M - L / 2;
  if (k <= 0) throw InputError("xxx_limit_check requires k > 0");
  double eta = sys.spec.a.eta();
  if (eta > 0.1) throw InputError("xxx_limit_check expects small eta");

  XxxLimitReport rep;
  rep.eta = eta;

  std::vector<Half> particles;
  std::vector<Half> real_w;
  for (int i = 0; i < M; ++i) {
    if (sys.lines[i] == Line::Shifted)
      particles.push_back(sys.spec.numbers.twice_at(i));
    else
      real_w.push_back(sys.spec.numbers.twice_at(i));
  }
  if (static_cast<int>(particles.size()) != 2 * k)
    throw InputError("state does not have 2k shifted roots");

  for (Half w : particles)
    rep.predicted_holes.push_back(w > 0 ? L - w : -L - w);
  std::sort(rep.predicted_holes.begin(), rep.predicted_holes.end());

  // Isotropic reference: M - 2k real roots; its vacancy window is the
  // parity-class slots with |w| <= L - Mf - 1 (doubled units).
  const int Mf = M - 2 * k;  // = L/2 - k
  rep.xxx_numbers = real_w;
  std::sort(rep.xxx_numbers.begin(), rep.xxx_numbers.end());
  // L even makes L - Mf - 1 always the right parity for the Mf-root class.
  const int bound2 = L - Mf - 1;
  for (Half ww = -bound2; ww <= bound2; ww += 2)
    if (!std::binary_search(rep.xxx_numbers.begin(), rep.xxx_numbers.end(), ww))
      rep.xxx_holes.push_back(ww);
  rep.holes_match = rep.xxx_holes == rep.predicted_holes;

  XxxRootSet xroots = xxx_solve(L, QuantumNumbers(rep.xxx_numbers), cfg);
  rep.xxx_converged = xroots.converged;

  std::vector<double> kx;
  for (double lam : xroots.lambdas) kx.push_back(xxx_root_momentum(lam));
  SectorBasis basis_f = build_basis(L, Mf, cfg);
  WaveVector v = bethe_state_from_momenta(kx, 1.0, basis_f, cfg);
  for (int step = 0; step < 2 * k; ++step) {
    SectorBasis next = build_basis(L, Mf + step + 1, cfg);
    v = apply_splus(v, build_basis(L, Mf + step, cfg), next);
  }

  SectorBasis basis_m = build_basis(L, M, cfg);
  WaveVector vxxz = bethe_amplitudes(state, sys, basis_m, cfg);
  cplx ov = v.amplitudes.dot(vxxz.amplitudes);
  rep.overlap = std::abs(ov) / (v.norm * vxxz.norm);
  return rep;
}

}  // namespace xxz
