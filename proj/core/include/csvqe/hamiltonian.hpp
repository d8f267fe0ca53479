// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "csvqe/determinant.hpp"
#include "csvqe/integrals.hpp"
#include "csvqe/wavefunction.hpp"

namespace csvqe {

/// Slater-Condon matrix elements of the electronic Hamiltonian defined by
/// an integral table, plus bilinear forms between sparse states.  All
/// operations are pure; the referenced table must outlive the context.
class HamiltonianContext {
 public:
  explicit HamiltonianContext(const IntegralTable& table) : table_(&table) {}

  [[nodiscard]] const IntegralTable& table() const noexcept { return *table_; }

  /// <d|H|d> including the core energy.
  [[nodiscard]] double diagonal_element(const Determinant& d) const;

  /// <a|H|b> for a != b; zero beyond excitation degree two or across
  /// spin sectors.  Throws std::invalid_argument when a == b.
  [[nodiscard]] double offdiagonal_element(const Determinant& a, const Determinant& b) const;

  /// <a|H|b> summed over determinant pairs of degree <= 2.
  [[nodiscard]] double transition_element(const SparseWavefunction& a,
                                          const SparseWavefunction& b) const;

  /// <psi|H|psi> / <psi|psi>; throws on zero norm.
  [[nodiscard]] double rayleigh_quotient(const SparseWavefunction& psi) const;

 private:
  const IntegralTable* table_;
};

}  // namespace csvqe
