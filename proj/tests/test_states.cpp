#include <doctest.h>

#include <algorithm>
#include <random>

#include "xxz/errors.hpp"
#include "xxz/states.hpp"

using namespace xxz;

TEST_CASE("ground_numbers: symmetric fillings") {
  CHECK(ground_numbers(8, 4).twice() == std::vector<Half>{-3, -1, 1, 3});
  CHECK(ground_numbers(8, 3).twice() == std::vector<Half>{-2, 0, 2});
  CHECK(ground_numbers(8, 5).twice() == std::vector<Half>{-4, -2, 0, 2, 4});
}

TEST_CASE("quantum-number parity rule is enforced") {
  CHECK_THROWS_AS(QuantumNumbers({-2, 0, 1}), InputError);  // mixed parity
  CHECK_THROWS_AS(QuantumNumbers({-1, 1, 3, 4}), InputError);
  CHECK_THROWS_AS(QuantumNumbers({0, 2, 4, 6}), InputError);  // M=4 needs halves
  CHECK_THROWS_AS(QuantumNumbers({1, 1, 3}), InputError);     // duplicates
  CHECK_NOTHROW(QuantumNumbers({-2, 0, 2}));
  CHECK_NOTHROW(QuantumNumbers({-3, -1, 1, 3}));
}

TEST_CASE("brillouin window has exactly L slots") {
  for (int L : {6, 8, 12}) {
    CHECK(static_cast<int>(brillouin_window(L, 0).size()) == L);
    CHECK(static_cast<int>(brillouin_window(L, 1).size()) == L);
  }
  CHECK(brillouin_window(8, 0).front() == -6);  // integers: {-3, ..., 4}
  CHECK(brillouin_window(8, 0).back() == 8);
  CHECK(brillouin_window(8, 1).front() == -7);  // halves: {-7/2, ..., 7/2}
  CHECK(brillouin_window(8, 1).back() == 7);
}

TEST_CASE("real_vacancies: closed form at the quoted points") {
  int L = 12;
  // k=2 just below the XX point: R = L/2
  CHECK(real_vacancies(L, 2, Anisotropy(0.49 * kPi)) == L / 2);
  // k=2 at small eta: R = L/2 - 2
  CHECK(real_vacancies(L, 2, Anisotropy(0.1 * kPi)) == L / 2 - 2);
  // k=-2: R = L/2 + 2
  CHECK(real_vacancies(L, -2, Anisotropy(0.1 * kPi)) == L / 2 + 2);
  // hole count R - M is even for k < 0
  for (double e : {0.1, 0.3, 0.45}) {
    for (int k : {-1, -2, -3}) {
      int R = real_vacancies(L, k, Anisotropy(e * kPi));
      int M = L / 2 + k;
      CHECK((R - M) % 2 == 0);
      CHECK(R - M >= 0);
    }
  }
}

TEST_CASE("complex_count: values and jump structure") {
  int L = 12;
  CHECK(complex_count(L, L / 2 + 2, Anisotropy(0.3 * kPi)) == 2);
  CHECK(complex_count(L, L / 2 + 2, Anisotropy(0.2 * kPi)) == 4);
  for (double e : {0.1, 0.25, 0.4})
    CHECK(complex_count(L, L / 2, Anisotropy(e * kPi)) == 0);
  // R + C == M by construction
  for (int k : {1, 2, 3})
    for (double e : {0.12, 0.29, 0.41}) {
      Anisotropy a(e * kPi);
      CHECK(real_vacancies(L, k, a) + complex_count(L, L / 2 + k, a) == L / 2 + k);
    }
}

TEST_CASE("formulas reject eta at a jump point") {
  CHECK_THROWS_AS(real_vacancies(12, 2, Anisotropy(kPi / 4), 1e-6), AtJumpPoint);
  CHECK_THROWS_AS(complex_count(12, 8, Anisotropy(kPi / 4), 1e-6), AtJumpPoint);
}

TEST_CASE("jump_points") {
  CHECK(jump_points(1) == std::vector<double>{kPi / 2});
  CHECK(jump_points(2) == std::vector<double>{kPi / 4});
  auto j3 = jump_points(3);
  REQUIRE(j3.size() == 2);
  CHECK(j3[0] == doctest::Approx(kPi / 6));
  CHECK(j3[1] == doctest::Approx(kPi / 2));
}

TEST_CASE("dual_numbers: worked example L=8 M=3") {
  BetheSystem primal(8, Anisotropy(kPi / 3), QuantumNumbers({-2, 0, 2}));
  DualPair pair = dual_numbers(primal);
  CHECK(pair.dual.M == 5);
  CHECK(pair.dual.numbers.twice() == std::vector<Half>{-4, -2, 0, 2, 4});
  // positive holes land in (0, L/2)
  for (auto [w0, wd] : pair.hole_map)
    if (w0 > 0 && w0 < 8) CHECK((wd >= 0 && wd < 8));
}

TEST_CASE("dual map is an involution on random sets") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    int L = 8;
    std::uniform_int_distribution<int> um(0, L);
    int M = um(rng);
    if (M > L / 2) M = L - M;  // primal side of the pseudovacuum pair
    auto window = brillouin_window(L, required_parity(M));
    std::shuffle(window.begin(), window.end(), rng);
    std::vector<Half> w(window.begin(), window.begin() + M);
    QuantumNumbers qn(w);
    BetheSystem primal(L, Anisotropy(kPi / 3), qn);
    DualPair pair = dual_numbers(primal);
    CHECK(pair.dual.M == L - M);
    DualPair back = dual_numbers(pair.dual);
    CHECK(back.dual.numbers.twice() == qn.twice());
  }
}

TEST_CASE("hole bookkeeping matches the window") {
  QuantumNumbers qn({-2, 0, 2});
  HoleSet h = holes_of(qn, 8);
  CHECK(h.twice_values == std::vector<Half>{-6, -4, 4, 6, 8});
  CHECK_THROWS_AS(dual_of_holes(h, 8, 4), WindowMismatch);  // wrong M
}

TEST_CASE("XX line assignment") {
  // L=8, M=2: |n| > 2 shifted
  auto lines = assign_lines_xx(QuantumNumbers({1, 5}), 8);
  CHECK(lines[0] == Line::Real);
  CHECK(lines[1] == Line::Shifted);
  // boundary slots |n| = L/4 follow the sign of k
  auto l2 = assign_lines_xx(QuantumNumbers({-4, -2, 0, 2, 4}), 8);  // k = 1
  CHECK(l2.front() == Line::Shifted);
  CHECK(l2.back() == Line::Shifted);
  CHECK(l2[2] == Line::Real);
  auto l3 = assign_lines_xx(QuantumNumbers({-4, 0, 4}), 8);  // k = -1
  CHECK(l3.front() == Line::Real);
  CHECK(l3.back() == Line::Real);
}
