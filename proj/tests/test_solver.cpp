#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "xxz/errors.hpp"
#include "xxz/solver.hpp"

using namespace xxz;

namespace {

// Independent 1D root of L*phi(t) = 2 pi n on the real line, via bisection of
// the complex-log kernel.
double xx_root_oracle(int L, double n, double eta) {
  double lo = -40.0, hi = 40.0;
  auto g = [&](double re) { return L * oracles::phi_log(re, 0.0, eta) - 2 * kPi * n; };
  REQUIRE(g(lo) < 0.0);
  REQUIRE(g(hi) > 0.0);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("critical_number: closed form and kernel-limit cross-check") {
  // exact rational value at the XX point
  BetheSystem xx(8, Anisotropy(kPi / 2), ground_numbers(8, 4));
  CHECK(critical_number(xx) == 2.0);

  // L=8, M=4, eta=pi/3: (1/2pi)[8*(2pi/3) - 3*(pi/3)] = 13/6
  BetheSystem s(8, Anisotropy(kPi / 3), ground_numbers(8, 4));
  CHECK(critical_number(s) == doctest::Approx(13.0 / 6.0).epsilon(1e-15));

  // numerically: the formula is the composition of the kernel limits
  Anisotropy a(kPi / 3);
  double nc_num = (8 * phi({50.0, Line::Real}, a) - 3 * phi2(100.0, true, a)) /
                  (2 * kPi);
  CHECK(critical_number(s) == doctest::Approx(nc_num).epsilon(1e-12));

  // n_c decreases with M at fixed L, eta < pi/2
  BetheSystem s5(8, Anisotropy(kPi / 3), ground_numbers(8, 5));
  CHECK(critical_number(s5) < critical_number(s));
}

TEST_CASE("classify_number: spec boundary cases") {
  BetheSystem s(8, Anisotropy(kPi / 2), ground_numbers(8, 4));
  CHECK(classify_number(5, s) == Line::Shifted);  // n = 5/2
  CHECK(classify_number(3, s) == Line::Real);     // n = 3/2
  CHECK(classify_number(1, s) == Line::Real);
  CHECK_THROWS_AS(classify_number(4, s), BoundaryAmbiguous);  // n = 2 = n_c
}

TEST_CASE("residual: single free magnon") {
  BetheSystem s(4, Anisotropy(kPi / 2), QuantumNumbers({0}));
  PreparedSystem p = prepare_all_real(s);
  auto F = residual({{0.0, Line::Real}}, p);
  CHECK(F[0] == doctest::Approx(0.0).epsilon(1e-15));
  // M=1 Jacobian is L phi'
  auto J = jacobian({{0.0, Line::Real}}, p);
  CHECK(J[0] == doctest::Approx(4 * phi_prime({0.0, Line::Real}, s.a)));
}

TEST_CASE("newton_solve: XX ground state decouples into 1D roots") {
  int L = 8, M = 4;
  XxConstruction xc = xx_construct(L, ground_numbers(L, M));
  REQUIRE(xc.state.converged);
  CHECK(xc.state.residual_norm < 1e-12);

  // every pairwise phi2 term vanishes at the free-fermion point
  Anisotropy a(kPi / 2);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      if (i == j) continue;
      double t = phi2(xc.state.roots[i].re - xc.state.roots[j].re, true, a);
      CHECK(std::abs(t) < 1e-12);
    }

  // roots agree with the independent 1D bisection oracle
  for (int i = 0; i < M; ++i) {
    double n = ground_numbers(L, M).value(i);
    CHECK(xc.state.roots[i].re ==
          doctest::Approx(xx_root_oracle(L, n, kPi / 2)).epsilon(1e-10));
  }

  // polishing with Newton stays put
  RootSet rs = newton_solve(xc.state.roots, xc.sys);
  CHECK(rs.converged);
  CHECK(rs.iterations <= 2);
}

TEST_CASE("newton_solve: continuation from the XX seed to eta=pi/3") {
  int L = 8, M = 4;
  XxConstruction xc = xx_construct(L, ground_numbers(L, M));
  PreparedSystem p = xc.sys.with_eta(kPi / 3);
  RootSet rs = newton_solve(xc.state.roots, p);
  CHECK(rs.converged);
  CHECK(rs.iterations < 30);
  CHECK(rs.residual_norm < 1e-12);

  // ground-state self-consistency
  auto F = residual(rs.roots, p);
  for (double f : F) CHECK(std::abs(f) < 1e-12);

  // symmetric numbers give a root set symmetric under re -> -re
  for (int i = 0; i < M; ++i)
    CHECK(rs.roots[i].re == doctest::Approx(-rs.roots[M - 1 - i].re).epsilon(1e-10));
}

TEST_CASE("newton_solve rejects a coincident seed") {
  BetheSystem s(8, Anisotropy(kPi / 3), ground_numbers(8, 2));
  PreparedSystem p = prepare_all_real(s);
  std::vector<Rapidity> seed{{0.1, Line::Real}, {0.1 + 1e-12, Line::Real}};
  CHECK_THROWS_AS(newton_solve(seed, p), CoincidentRoots);
}

TEST_CASE("jacobian: row sums and finite differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ur(-0.4, 0.4);
  std::uniform_real_distribution<double> ueta(0.3, kPi / 2 - 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    int L = 8, M = 4;
    BetheSystem s(L, Anisotropy(ueta(rng)), ground_numbers(L, M));
    PreparedSystem p = prepare_all_real(s);
    std::vector<Rapidity> roots;
    for (int i = 0; i < M; ++i)
      roots.push_back({ur(rng) + 1.2 * (i - 1.5), Line::Real});

    auto J = jacobian(roots, p);
    for (int al = 0; al < M; ++al) {
      // pair terms cancel in the row sum
      double rs = 0.0;
      for (int g = 0; g < M; ++g) rs += J[al * M + g];
      CHECK(rs == doctest::Approx(L * phi_prime(roots[al], s.a)).epsilon(1e-12));
    }

    // central finite differences of the residual
    double h = 1e-6;
    for (int g = 0; g < M; ++g) {
      auto rp = roots, rm = roots;
      rp[g].re += h;
      rm[g].re -= h;
      auto Fp = residual(rp, p), Fm = residual(rm, p);
      for (int al = 0; al < M; ++al) {
        double fd = (Fp[al] - Fm[al]) / (2 * h);
        CHECK(J[al * M + g] == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("residual responds linearly to a small root perturbation") {
  XxConstruction xc = xx_construct(8, ground_numbers(8, 4));
  PreparedSystem p = xc.sys.with_eta(kPi / 3);
  RootSet rs = newton_solve(xc.state.roots, p);
  REQUIRE(rs.converged);
  auto J = jacobian(rs.roots, p);
  double delta = 1e-4;
  auto pert = rs.roots;
  pert[0].re += delta;
  auto F = residual(pert, p);
  CHECK(F[0] == doctest::Approx(J[0] * delta).epsilon(1e-3));
}

TEST_CASE("counting function: fixed point, oddness, monotonicity") {
  XxConstruction xc = xx_construct(8, ground_numbers(8, 4));
  PreparedSystem p = xc.sys.with_eta(kPi / 3);
  RootSet rs = newton_solve(xc.state.roots, p);
  REQUIRE(rs.converged);

  for (int i = 0; i < 4; ++i)
    CHECK(counting_function(rs.roots[i], rs.roots, p) ==
          doctest::Approx(p.eq_value(i)).epsilon(1e-10));

  CHECK(counting_function({0.0, Line::Real}, rs.roots, p) ==
        doctest::Approx(0.0).epsilon(1e-12));

  double prev = counting_function({-6.0, Line::Real}, rs.roots, p);
  for (double t = -5.5; t <= 6.0; t += 0.25) {
    double v = counting_function({t, Line::Real}, rs.roots, p);
    CHECK(v > prev);
    prev = v;
  }

  // the all-roots sum saturates one pair-term unit below n_c, and at the
  // same value on both lines
  double nc = critical_number(p.spec);
  CHECK(counting_function({50.0, Line::Real}, rs.roots, p) ==
        doctest::Approx(nc - 0.5 * phi2_limit(p.spec.a) / kPi).epsilon(1e-10));
  CHECK(counting_function({50.0, Line::Real}, rs.roots, p) ==
        doctest::Approx(counting_function({50.0, Line::Shifted}, rs.roots, p))
            .epsilon(1e-9));
}

TEST_CASE("seed_from_xx: named examples") {
  // n = 0 -> re = 0 on the real line
  BetheSystem s1(8, Anisotropy(kPi / 2), QuantumNumbers({0}));
  auto seed1 = seed_from_xx(s1);
  CHECK(seed1[0].line == Line::Real);
  CHECK(seed1[0].re == doctest::Approx(0.0));

  // L=8, n=3: shifted root with phi value 2 pi 3/8 = 3 pi/4
  BetheSystem s2(8, Anisotropy(kPi / 2), QuantumNumbers({0, 6, -6}));
  auto xc = xx_construct(8, s2.numbers);
  REQUIRE(xc.state.converged);
  int i3 = -1;
  for (int i = 0; i < 3; ++i)
    if (s2.numbers.twice_at(i) == 6) i3 = i;
  REQUIRE(i3 >= 0);
  CHECK(xc.state.roots[i3].line == Line::Shifted);
  CHECK(phi(xc.state.roots[i3], s2.a) == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
  CHECK(xc.state.residual_norm < 1e-12);
}

TEST_CASE("xx_construct: mixed and tied configurations are exact solutions") {
  // {1/2, 5/2}: one real + one shifted root
  XxConstruction a = xx_construct(8, QuantumNumbers({1, 5}));
  CHECK(a.state.residual_norm < 1e-12);
  // {1/2, 7/2}: the tied pair (equal positions on the two lines)
  XxConstruction b = xx_construct(8, QuantumNumbers({1, 7}));
  CHECK(b.state.residual_norm < 1e-12);
  CHECK(b.state.roots[0].re == b.state.roots[1].re);
  // no-hole k=2 state at L=12 contains a tie as well
  XxConstruction c = xx_construct(12, ground_numbers(12, 8));
  CHECK(c.state.residual_norm < 1e-11);
  // boundary numbers |n| = L/4 are parked at infinity
  XxConstruction d = xx_construct(8, ground_numbers(8, 5));
  double maxre = 0;
  for (auto& r : d.state.roots) maxre = std::max(maxre, std::abs(r.re));
  CHECK(maxre >= 25.0);
  CHECK(d.state.residual_norm < 1e-10);
}

TEST_CASE("xxx_solve: isotropic reference states") {
  // ground-with-holes reference for L=8, k=1: numbers {-1, 0, 1}
  XxxRootSet xr = xxx_solve(8, QuantumNumbers({-2, 0, 2}));
  CHECK(xr.converged);
  CHECK(xr.residual_norm < 1e-12);
  CHECK(xr.lambdas[0] == doctest::Approx(-xr.lambdas[2]).epsilon(1e-10));
  CHECK(xr.lambdas[1] == doctest::Approx(0.0).epsilon(1e-12));

  // boundary numbers sit at infinite rapidity (zero-momentum magnons)
  XxxRootSet xd = xxx_solve(6, QuantumNumbers({-3, -1, 1, 3}));
  CHECK(xd.converged);
  CHECK(std::abs(xd.lambdas.front()) > 1e8);
  CHECK(std::abs(xd.lambdas.back()) > 1e8);
  CHECK(xxx_root_momentum(xd.lambdas.front()) == 0.0);
}
