// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "csvqe/determinant.hpp"

namespace csvqe {

/// Sparse expansion of a many-electron state: determinant -> real amplitude.
/// Terms are kept sorted by determinant and never hold an exactly-zero
/// amplitude.  All stored determinants share the same electron counts.
class SparseWavefunction {
 public:
  using Term = std::pair<Determinant, double>;

  SparseWavefunction() = default;

  /// Unit (or scaled) amplitude on a single determinant.
  static SparseWavefunction single(const Determinant& d, double amplitude = 1.0);

  /// Build from arbitrary terms: sorts, merges duplicates, drops zeros,
  /// and rejects mixed electron sectors.
  static SparseWavefunction from_terms(std::vector<Term> terms);

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

  /// Amplitude of a determinant, zero if absent.
  [[nodiscard]] double amplitude(const Determinant& d) const;

  [[nodiscard]] double norm2() const noexcept;

  /// (n_alpha, n_beta) of the stored sector; (0, 0) when empty.
  [[nodiscard]] std::pair<int, int> electron_counts() const noexcept;

  [[nodiscard]] SparseWavefunction scaled(double factor) const;

 private:
  std::vector<Term> terms_;  // sorted by determinant
};

/// Sum of amplitude products over shared determinants; exactly symmetric in
/// its arguments.  Throws std::invalid_argument on mismatched sectors.
double inner_product(const SparseWavefunction& a, const SparseWavefunction& b);

/// Keep the n_wf largest-|amplitude| terms, ties resolved toward the
/// determinant that is smaller in (alpha, beta) lexicographic order.
/// Amplitudes are not renormalized.  Throws std::invalid_argument if
/// n_wf is zero.
SparseWavefunction truncate(const SparseWavefunction& psi, std::size_t n_wf);

/// One line per determinant, "alpha_mask_hex beta_mask_hex amplitude",
/// sorted by |amplitude| descending.
void write_wavefunction(std::ostream& out, const SparseWavefunction& psi);
SparseWavefunction read_wavefunction(std::istream& in);

}  // namespace csvqe
