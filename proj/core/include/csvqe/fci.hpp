// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "csvqe/hamiltonian.hpp"

namespace csvqe {

/// The complete determinant basis of a fixed (n_alpha, n_beta) sector,
/// ordered lexicographically in (alpha_mask, beta_mask).
struct FciBasis {
  std::vector<Determinant> determinants;
  std::unordered_map<Determinant, int, DeterminantHash> index;

  [[nodiscard]] std::size_t size() const noexcept { return determinants.size(); }
};

FciBasis enumerate_determinants(int n_orbitals, int n_alpha, int n_beta);

struct FciOptions {
  std::size_t dense_cutoff = 4000;    // full diagonalization up to here
  std::size_t max_dimension = 100000; // capacity error above here
  double residual_tol = 1e-9;         // iterative path convergence
  int max_iterations = 600;
};

struct FciResult {
  double energy = 0.0;
  SparseWavefunction ground;  // normalized
  double residual_norm = 0.0;
  bool dense_path = true;
  int iterations = 0;
};

/// Lowest eigenpair of the Hamiltonian over the full determinant basis of
/// the table's electron sector.  Dense diagonalization below the cutoff, a
/// deterministic Lanczos iteration (unit start on the first basis
/// determinant, full reorthogonalization) above it.
FciResult fci_ground_energy(const IntegralTable& table, const FciOptions& options = {});

}  // namespace csvqe
