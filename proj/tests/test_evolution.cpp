#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "xxz/ed_oracle.hpp"
#include "xxz/errors.hpp"
#include "xxz/evolution.hpp"

using namespace xxz;

TEST_CASE("k=0 ground sweep: no jumps, static counts, smooth energy") {
  int L = 8;
  XxConstruction xc = xx_construct(L, ground_numbers(L, 4));
  EvolutionTrace tr = evolve(xc.sys, xc.state, 0.05 * kPi, 60);
  REQUIRE(tr.status == TraceStatus::Completed);
  CHECK(tr.events.empty());
  for (const auto& st : tr.steps) {
    CHECK(st.R_observed == L / 2);
    CHECK(st.C_observed == 0);
    CHECK(st.state.converged);
  }
  for (size_t i = 1; i < tr.steps.size(); ++i) {
    double de = std::abs(tr.steps[i].energy - tr.steps[i - 1].energy);
    double dg = std::abs(tr.steps[i].eta - tr.steps[i - 1].eta);
    CHECK(de < 20.0 * dg);
  }
  CountReport rep = check_counts(tr);
  CHECK(rep.all_ok_outside_windows);
}

TEST_CASE("k=2 no-hole sweep at L=12: one pair jump near pi/4") {
  int L = 12;
  XxConstruction xc = xx_construct(L, ground_numbers(L, 8));
  PreparedSystem p0 = xc.sys.with_eta(0.49 * kPi);
  RootSet s0 = newton_solve(xc.state.roots, p0);
  REQUIRE(s0.converged);

  EvolutionTrace tr = evolve(p0, s0, 0.05 * kPi, 200);
  REQUIRE(tr.status == TraceStatus::Completed);
  REQUIRE(tr.events.size() == 1);
  CHECK(tr.events[0].direction == JumpDirection::RealToShifted);
  CHECK(tr.events[0].roots_moved == 2);
  CHECK(std::abs(tr.events[0].eta_at - kPi / 4) < 0.02 * kPi);
  CHECK(tr.events[0].predicted_eta == doctest::Approx(kPi / 4));

  // C: 2 -> 4 across the jump
  CHECK(tr.steps.front().C_observed == 2);
  CHECK(tr.steps.back().C_observed == 4);

  CountReport rep = check_counts(tr);
  CHECK(rep.all_ok_outside_windows);

  // root-set symmetry is preserved along the symmetric trace
  for (const auto& st : tr.steps) {
    std::vector<double> re;
    for (auto& r : st.state.roots) re.push_back(r.re);
    std::sort(re.begin(), re.end());
    for (size_t i = 0; i < re.size(); ++i)
      CHECK(re[i] == doctest::Approx(-re[re.size() - 1 - i]).epsilon(1e-8));
  }
}

TEST_CASE("k=1 trace from 0.45 pi: R = L/2 - 1 throughout") {
  int L = 8;
  XxConstruction xc = xx_construct(L, ground_numbers(L, 5));
  PreparedSystem p0 = xc.sys.with_eta(0.45 * kPi);
  RootSet s0 = newton_solve(xc.state.roots, p0);
  REQUIRE(s0.converged);
  EvolutionTrace tr = evolve(p0, s0, 0.05 * kPi, 80);
  REQUIRE(tr.status == TraceStatus::Completed);
  CHECK(tr.events.empty());  // jump_points(1) = {pi/2} only
  for (const auto& st : tr.steps) {
    CHECK(st.R_observed == L / 2 - 1);
    CHECK(st.C_observed == 2);
  }
  CountReport rep = check_counts(tr);
  CHECK(rep.all_ok_outside_windows);
}

TEST_CASE("k=-2 with particles: shifted roots jump down to the real axis") {
  int L = 12;  // M = 4: two real + two shifted numbers
  QuantumNumbers qn({-7, -1, 1, 7});
  XxConstruction xc = xx_construct(L, qn);
  PreparedSystem p0 = xc.sys.with_eta(0.49 * kPi);
  RootSet s0 = newton_solve(xc.state.roots, p0);
  REQUIRE(s0.converged);

  EvolutionTrace tr = evolve(p0, s0, 0.05 * kPi, 200);
  REQUIRE(tr.status == TraceStatus::Completed);
  CHECK(tr.steps.front().C_observed == 2);
  CHECK(tr.steps.back().C_observed == 0);
  REQUIRE(tr.events.size() == 1);
  CHECK(tr.events[0].direction == JumpDirection::ShiftedToReal);
  CHECK(tr.events[0].roots_moved == 2);
}

TEST_CASE("overlap with the ED-tracked eigenvector stays near one") {
  int L = 8;
  XxConstruction xc = xx_construct(L, ground_numbers(L, 5));  // k=1, mixed lines
  PreparedSystem p0 = xc.sys.with_eta(0.45 * kPi);
  RootSet s0 = newton_solve(xc.state.roots, p0);
  REQUIRE(s0.converged);
  EvolutionTrace tr = evolve(p0, s0, 0.1 * kPi, 20);
  REQUIRE(tr.status == TraceStatus::Completed);

  SectorBasis b = build_basis(L, 5);
  for (const auto& st : tr.steps) {
    PreparedSystem ps = tr.final_sys.with_eta(st.eta);
    ps.lines.clear();
    for (auto& r : st.state.roots) ps.lines.push_back(r.line);
    WaveVector v = bethe_amplitudes(st.state, ps, b);
    EigenPairs eigs = diagonalize(build_hamiltonian(b, ps.spec.a.delta()));
    double e_abs = energy_from_roots(st.state, ps) +
                   pseudovacuum_energy(L, ps.spec.a.delta());
    SpectralMatch m = match_state(v, e_abs, eigs, L, 5);
    CHECK(m.overlap > 1.0 - 1e-6);
    CHECK(std::abs(m.bethe_energy - m.ed_energy) < 1e-9);
  }
}

TEST_CASE("trace exports: CSV header and JSON schema") {
  int L = 8;
  XxConstruction xc = xx_construct(L, ground_numbers(L, 4));
  EvolutionTrace tr = evolve(xc.sys, xc.state, 0.3 * kPi, 10);
  std::string csv = trace_to_csv(tr);
  CHECK(csv.rfind("eta,roots,R,C,energy", 0) == 0);
  auto j = nlohmann::json::parse(trace_to_json(tr));
  CHECK(j["schema"] == 1);
  CHECK(j["status"] == "completed");
  CHECK(j["steps"].size() == tr.steps.size());
}

TEST_CASE("solve_at reaches small eta through jumps") {
  SolvedState s = solve_at(12, ground_numbers(12, 8), 0.1 * kPi);
  CHECK(s.state.converged);
  int C = 0;
  for (auto& r : s.state.roots) C += r.line == Line::Shifted;
  CHECK(C == 4);  // complex_count(12, 8, 0.1 pi)
}

TEST_CASE("evolve validates its direction") {
  XxConstruction xc = xx_construct(8, ground_numbers(8, 4));
  PreparedSystem p0 = xc.sys.with_eta(0.3 * kPi);
  RootSet s0 = newton_solve(xc.state.roots, p0);
  CHECK_THROWS_AS(evolve(p0, s0, 0.4 * kPi, 10), InputError);
  CHECK_THROWS_AS(evolve(p0, s0, -0.1, 10), InputError);
}
