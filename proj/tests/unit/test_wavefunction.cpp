// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "csvqe/wavefunction.hpp"
#include "dense_oracle.hpp"

using csvqe::Determinant;
using csvqe::SparseWavefunction;
using csvqe::Spin;
using csvqe::SpinOrbital;

namespace {

std::optional<int> oracle_sign(const Determinant& det, std::vector<SpinOrbital> holes,
                               std::vector<SpinOrbital> particles, int n_orb) {
  std::vector<oracle::Op> ops;
  for (const SpinOrbital p : particles) ops.push_back({true, oracle::global_index(p, n_orb)});
  for (auto it = holes.rbegin(); it != holes.rend(); ++it)
    ops.push_back({false, oracle::global_index(*it, n_orb)});
  const auto res = oracle::apply_ops(oracle::occupation_vector(det, n_orb), ops);
  if (!res) return std::nullopt;
  return res->second;
}

}  // namespace

TEST_CASE("excitation_sign parity examples") {
  const SpinOrbital h0{0, Spin::alpha};

  // alpha={0,1}, move alpha 0 -> 2: crosses the occupied alpha 1
  Determinant d{0b11, 0};
  SpinOrbital p2{2, Spin::alpha};
  CHECK(csvqe::excitation_sign(d, {&h0, 1}, {&p2, 1}) == -1);

  // alpha={0}, move 0 -> 1: nothing in between
  Determinant single{0b1, 0};
  SpinOrbital p1{1, Spin::alpha};
  CHECK(csvqe::excitation_sign(single, {&h0, 1}, {&p1, 1}) == 1);

  // particle already occupied: Pauli-blocked
  SpinOrbital occupied{1, Spin::alpha};
  CHECK(!csvqe::excitation_sign(d, {&h0, 1}, {&occupied, 1}).has_value());
}

TEST_CASE("apply_excitation examples and involution") {
  // H2 reference, double (0a,0b) -> (1a,1b)
  const Determinant hf{0b1, 0b1};
  const std::vector<SpinOrbital> holes{{0, Spin::alpha}, {0, Spin::beta}};
  const std::vector<SpinOrbital> particles{{1, Spin::alpha}, {1, Spin::beta}};
  const auto excited = csvqe::apply_excitation(hf, holes, particles);
  REQUIRE(excited.has_value());
  CHECK(excited->det == Determinant{0b10, 0b10});
  CHECK(excited->sign == 1);

  const auto back = csvqe::apply_excitation(excited->det, particles, holes);
  REQUIRE(back.has_value());
  CHECK(back->det == hf);
  CHECK(back->sign == 1);

  // alpha={0,2}, move 2 -> 1
  const Determinant d{0b101, 0};
  const std::vector<SpinOrbital> h{{2, Spin::alpha}};
  const std::vector<SpinOrbital> p{{1, Spin::alpha}};
  const auto moved = csvqe::apply_excitation(d, h, p);
  REQUIRE(moved.has_value());
  CHECK(moved->det == Determinant{0b011, 0});
  CHECK(moved->sign == 1);
}

TEST_CASE("excitation sign agrees with brute-force operator application") {
  // every determinant and every single/double over 4 orbitals
  const int n_orb = 4;
  std::vector<SpinOrbital> all;
  for (int p = 0; p < n_orb; ++p) {
    all.push_back({p, Spin::alpha});
    all.push_back({p, Spin::beta});
  }
  int checked = 0;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      const Determinant det{a, b};
      for (const SpinOrbital h : all) {
        for (const SpinOrbital p : all) {
          if (h == p) continue;
          const std::vector<SpinOrbital> holes{h}, particles{p};
          const auto mine = csvqe::excitation_sign(det, holes, particles);
          const auto ref = oracle_sign(det, holes, particles, n_orb);
          CHECK(mine.has_value() == ref.has_value());
          if (mine && ref) {
            CHECK(*mine == *ref);
            ++checked;
          }
        }
      }
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
          for (std::size_t k = 0; k < all.size(); ++k)
            for (std::size_t l = k + 1; l < all.size(); ++l) {
              if (all[i] == all[k] || all[i] == all[l] || all[j] == all[k] || all[j] == all[l])
                continue;
              const std::vector<SpinOrbital> holes{all[i], all[j]};
              const std::vector<SpinOrbital> particles{all[k], all[l]};
              const auto mine = csvqe::excitation_sign(det, holes, particles);
              const auto ref = oracle_sign(det, holes, particles, n_orb);
              CHECK(mine.has_value() == ref.has_value());
              if (mine && ref) {
                CHECK(*mine == *ref);
                ++checked;
              }
            }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("inverse excitation composes to identity with positive sign") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> mask(0, 63);
  std::vector<SpinOrbital> all;
  for (int p = 0; p < 6; ++p) {
    all.push_back({p, Spin::alpha});
    all.push_back({p, Spin::beta});
  }
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  int applied = 0;
  for (int trial = 0; trial < 8000; ++trial) {
    const Determinant det{mask(rng), mask(rng)};
    std::vector<SpinOrbital> holes{all[pick(rng)], all[pick(rng)]};
    std::vector<SpinOrbital> particles{all[pick(rng)], all[pick(rng)]};
    if (holes[0] == holes[1] || particles[0] == particles[1]) continue;
    bool overlap = false;
    for (const SpinOrbital h : holes)
      for (const SpinOrbital p : particles) overlap |= (h == p);
    if (overlap) continue;
    const auto fwd = csvqe::apply_excitation(det, holes, particles);
    if (!fwd) continue;
    const auto back = csvqe::apply_excitation(fwd->det, particles, holes);
    REQUIRE(back.has_value());
    CHECK(back->det == det);
    CHECK(back->sign * fwd->sign == 1);
    ++applied;
  }
  CHECK(applied > 100);
}

TEST_CASE("excitation_degree counts spin-orbital moves") {
  const Determinant a{0b11, 0b11};
  CHECK(csvqe::excitation_degree(a, a) == 0);
  CHECK(csvqe::excitation_degree(a, Determinant{0b101, 0b11}) == 1);
  CHECK(csvqe::excitation_degree(a, Determinant{0b101, 0b101}) == 2);
}

TEST_CASE("inner_product examples and exact symmetry") {
  const Determinant d1{0b01, 0b01};
  const Determinant d2{0b10, 0b10};
  const auto unit = SparseWavefunction::single(d1);
  CHECK(inner_product(unit, unit) == 1.0);

  const auto other = SparseWavefunction::single(d2);
  CHECK(inner_product(unit, other) == 0.0);

  const auto a = SparseWavefunction::from_terms({{d1, 0.6}, {d2, 0.8}});
  const auto b = SparseWavefunction::from_terms({{d2, 0.5}});
  CHECK(std::abs(inner_product(a, b) - 0.4) < 1e-15);
  CHECK(inner_product(a, b) == inner_product(b, a));

  const auto wrong_sector = SparseWavefunction::single(Determinant{0b11, 0});
  CHECK_THROWS_AS(inner_product(a, wrong_sector), std::invalid_argument);
}

TEST_CASE("inner_product is exactly symmetric on random states") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const auto random_state = [&](int n_terms) {
    std::vector<SparseWavefunction::Term> terms;
    std::vector<std::uint64_t> masks{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
    for (int i = 0; i < n_terms; ++i) {
      const Determinant d{masks[rng() % masks.size()], masks[rng() % masks.size()]};
      terms.emplace_back(d, amp(rng));
    }
    return SparseWavefunction::from_terms(std::move(terms));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_state(8);
    const auto b = random_state(8);
    CHECK(inner_product(a, b) == inner_product(b, a));
  }
}

TEST_CASE("truncate keeps the largest amplitudes") {
  const Determinant d1{0b001, 0b001};
  const Determinant d2{0b010, 0b010};
  const Determinant d3{0b100, 0b100};
  const auto psi = SparseWavefunction::from_terms({{d1, 0.9}, {d2, 0.3}, {d3, 0.1}});

  const auto kept = truncate(psi, 2);
  CHECK(kept.size() == 2);
  CHECK(kept.amplitude(d1) == 0.9);
  CHECK(kept.amplitude(d2) == 0.3);
  CHECK(kept.amplitude(d3) == 0.0);

  CHECK(truncate(psi, 10).terms() == psi.terms());
  CHECK_THROWS_AS(truncate(psi, 0), std::invalid_argument);
}

TEST_CASE("truncate tie-break prefers the lexicographically smaller determinant") {
  const Determinant d1{0b01, 0b01};
  const Determinant d2{0b10, 0b10};
  REQUIRE(d1 < d2);
  const auto psi = SparseWavefunction::from_terms({{d1, 0.5}, {d2, -0.5}});
  const auto kept = truncate(psi, 1);
  CHECK(kept.size() == 1);
  CHECK(kept.amplitude(d1) == 0.5);
}

TEST_CASE("truncate is idempotent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<SparseWavefunction::Term> terms;
  for (std::uint64_t a = 1; a < 32; a <<= 1)
    for (std::uint64_t b = 1; b < 32; b <<= 1) terms.push_back({Determinant{a, b}, amp(rng)});
  const auto psi = SparseWavefunction::from_terms(std::move(terms));
  for (const std::size_t n : {1ul, 3ul, 7ul, 25ul, 100ul}) {
    const auto once = truncate(psi, n);
    const auto twice = truncate(once, n);
    CHECK(once.terms() == twice.terms());
  }
}

TEST_CASE("no stored amplitude is exactly zero") {
  const Determinant d1{0b01, 0b01};
  const Determinant d2{0b10, 0b10};
  const auto psi = SparseWavefunction::from_terms({{d1, 0.5}, {d2, 0.0}, {d1, -0.5}});
  CHECK(psi.empty());
}

TEST_CASE("wavefunction dump round-trips and is sorted by magnitude") {
  const auto psi = SparseWavefunction::from_terms({{Determinant{0b01, 0b01}, 0.25},
                                                   {Determinant{0b10, 0b10}, -0.9},
                                                   {Determinant{0b01, 0b10}, 0.5}});
  std::ostringstream out;
  write_wavefunction(out, psi);
  std::istringstream lines(out.str());
  std::string first;
  std::getline(lines, first);
  CHECK(first.substr(0, 4) == "2 2 ");  // the -0.9 term leads

  std::istringstream in(out.str());
  const auto back = csvqe::read_wavefunction(in);
  CHECK(back.terms() == psi.terms());
}
