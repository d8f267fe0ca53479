// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "csvqe/fci.hpp"
#include "dense_oracle.hpp"
#include "fixtures.hpp"

using csvqe::Determinant;
using csvqe::FciBasis;
using csvqe::FciOptions;
using csvqe::HamiltonianContext;
using csvqe::IntegralTable;
using csvqe::SparseWavefunction;

TEST_CASE("enumerate_determinants sizes and ordering") {
  const FciBasis small = csvqe::enumerate_determinants(2, 1, 1);
  CHECK(small.size() == 4);

  const FciBasis medium = csvqe::enumerate_determinants(6, 2, 2);
  CHECK(medium.size() == 225);

  const FciBasis vacuum = csvqe::enumerate_determinants(3, 0, 0);
  CHECK(vacuum.size() == 1);
  CHECK(vacuum.determinants[0] == Determinant{0, 0});

  // lexicographic in (alpha, beta), complete, duplicate-free
  CHECK(std::is_sorted(medium.determinants.begin(), medium.determinants.end()));
  for (std::size_t i = 0; i < medium.size(); ++i) {
    CHECK(medium.determinants[i].n_alpha() == 2);
    CHECK(medium.determinants[i].n_beta() == 2);
    CHECK(medium.index.at(medium.determinants[i]) == static_cast<int>(i));
  }

  CHECK_THROWS_AS(csvqe::enumerate_determinants(2, 3, 0), std::invalid_argument);
}

TEST_CASE("one-electron system reduces to the one-body matrix") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  IntegralTable t(3, 1, 1, dist(rng));
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= p; ++q) t.set_one_electron(p, q, dist(rng));
  // two-electron integrals present but irrelevant with a single electron
  t.set_two_electron(1, 1, 1, 1, 0.7);

  Eigen::Matrix3d h;
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) h(p - 1, q - 1) = t.one_electron(p, q);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(h);

  const csvqe::FciResult result = csvqe::fci_ground_energy(t);
  CHECK(std::abs(result.energy - (eig.eigenvalues()(0) + t.core_energy())) < 1e-12);
}

TEST_CASE("H2/STO-3G against the dense 4x4 oracle") {
  const IntegralTable t = fixtures::load_table("h2_sto3g.fcidump");
  const FciBasis basis = csvqe::enumerate_determinants(2, 1, 1);
  const Eigen::MatrixXd h = oracle::dense_hamiltonian(t, basis.determinants);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);

  const csvqe::FciResult result = csvqe::fci_ground_energy(t);
  CHECK(std::abs(result.energy - eig.eigenvalues()(0)) < 1e-12);
  CHECK(result.residual_norm <= 1e-8);
  CHECK(std::abs(result.ground.norm2() - 1.0) < 1e-12);
}

TEST_CASE("fixtures match the external reference energies") {
  for (const char* name : {"h2_sto3g.fcidump", "h2_631g.fcidump", "lih_sto3g.fcidump"}) {
    const IntegralTable t = fixtures::load_table(name);
    const auto entry = fixtures::manifest_entry(name);
    const csvqe::FciResult result = csvqe::fci_ground_energy(t);
    CHECK(std::abs(result.energy - entry["fci_energy"].get<double>()) < 1e-8);
    CHECK(result.residual_norm <= 1e-8);
  }
}

TEST_CASE("iterative path agrees with the dense path") {
  const IntegralTable t = fixtures::load_table("lih_sto3g.fcidump");
  const csvqe::FciResult dense = csvqe::fci_ground_energy(t);
  CHECK(dense.dense_path);

  FciOptions force_iterative;
  force_iterative.dense_cutoff = 10;  // dim 225 goes through Lanczos
  const csvqe::FciResult iterative = csvqe::fci_ground_energy(t, force_iterative);
  CHECK(!iterative.dense_path);
  CHECK(iterative.iterations > 1);
  CHECK(std::abs(iterative.energy - dense.energy) < 1e-9);
  CHECK(iterative.residual_norm <= 1e-8);

  FciOptions tiny_cap;
  tiny_cap.max_dimension = 100;
  CHECK_THROWS_WITH_AS(csvqe::fci_ground_energy(t, tiny_cap), doctest::Contains("capacity"),
                       std::runtime_error);
}

TEST_CASE("ground vector round-trips through the Rayleigh quotient") {
  const IntegralTable t = fixtures::load_table("h2_631g.fcidump");
  const HamiltonianContext ctx(t);
  const csvqe::FciResult result = csvqe::fci_ground_energy(t);
  CHECK(std::abs(ctx.rayleigh_quotient(result.ground) - result.energy) < 1e-10);

  // variational bound for random states in the sector
  const FciBasis basis = csvqe::enumerate_determinants(4, 1, 1);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SparseWavefunction::Term> terms;
    for (const Determinant& d : basis.determinants) terms.emplace_back(d, amp(rng));
    const auto psi = SparseWavefunction::from_terms(std::move(terms));
    if (psi.empty()) continue;
    CHECK(ctx.rayleigh_quotient(psi) >= result.energy - 1e-10);
  }
}
