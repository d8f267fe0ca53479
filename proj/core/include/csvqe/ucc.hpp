// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "csvqe/determinant.hpp"
#include "csvqe/integrals.hpp"
#include "csvqe/wavefunction.hpp"

namespace csvqe {

/// One factor exp(theta * (E - E+)) of the factorized unitary ansatz, with
/// E the excitation operator moving electrons from `holes` to `particles`.
/// All spin-orbitals are distinct and stored ascending; rank is 1 for a
/// single excitation, 2 for a double.
struct UccFactor {
  int rank = 0;
  std::array<SpinOrbital, 2> holes{};
  std::array<SpinOrbital, 2> particles{};
  double theta = 0.0;

  [[nodiscard]] std::span<const SpinOrbital> hole_span() const noexcept {
    return {holes.data(), static_cast<std::size_t>(rank)};
  }
  [[nodiscard]] std::span<const SpinOrbital> particle_span() const noexcept {
    return {particles.data(), static_cast<std::size_t>(rank)};
  }
};

/// Validate and canonicalize (spin-orbitals ascending, theta sign adjusted
/// for the reordering parity).
UccFactor make_single(SpinOrbital hole, SpinOrbital particle, double theta);
UccFactor make_double(SpinOrbital hole1, SpinOrbital hole2, SpinOrbital particle1,
                      SpinOrbital particle2, double theta);

/// Deterministic ordering on the (holes, particles) index lists.
bool factor_lex_less(const UccFactor& a, const UccFactor& b) noexcept;
bool same_excitation(const UccFactor& a, const UccFactor& b) noexcept;

/// Ordered factor list applied to a reference determinant, with sparse
/// states truncated to n_wf terms after every factor.
class UccCircuit {
 public:
  UccCircuit(std::vector<UccFactor> factors, Determinant reference, std::size_t n_wf);

  [[nodiscard]] const std::vector<UccFactor>& factors() const noexcept { return factors_; }
  [[nodiscard]] std::size_t size() const noexcept { return factors_.size(); }
  [[nodiscard]] const Determinant& reference() const noexcept { return reference_; }
  [[nodiscard]] std::size_t n_wf() const noexcept { return n_wf_; }

  [[nodiscard]] std::vector<double> thetas() const;
  /// Same factor sequence with replaced angles.
  [[nodiscard]] UccCircuit with_thetas(const std::vector<double>& thetas) const;

 private:
  std::vector<UccFactor> factors_;
  Determinant reference_;
  std::size_t n_wf_ = 0;
};

/// All spin-orbital double excitations out of the closed-shell reference
/// with initial angles t = (ia|jb) / (eps_i + eps_j - eps_a - eps_b),
/// same-spin cases antisymmetrized, using Fock-diagonal orbital energies.
/// Throws when a denominator magnitude falls below 1e-10.
std::vector<UccFactor> mp2_amplitudes(const IntegralTable& table);

/// All spin-conserving single excitations out of the reference, theta = 0.
std::vector<UccFactor> single_excitations(const IntegralTable& table);

/// Keep the max_doubles largest-|theta| doubles from `amplitudes`, add all
/// singles (theta = 0) when requested, and order the result by descending
/// |theta|; exact ties stay lexicographic within each excitation rank with
/// doubles preceding singles.
UccCircuit build_circuit(const IntegralTable& table, const std::vector<UccFactor>& amplitudes,
                         int max_doubles, bool include_singles, std::size_t n_wf);

/// Apply one factor through the two-level rotation rule: a determinant
/// reached by the forward excitation (sign s, image D') contributes
/// cos(theta) on itself and s sin(theta) on D'; one reached by the reverse
/// excitation (sign s', image D'') contributes cos(theta) on itself and
/// -s' sin(theta) on D''; others pass through unchanged.
SparseWavefunction apply_factor(const SparseWavefunction& psi, const UccFactor& factor);

/// |Psi_m> = U_m ... U_1 |reference>, truncated to n_wf after each factor.
SparseWavefunction prefix_state(const UccCircuit& circuit, std::size_t m);

/// One factor per line, "holes particles theta", order-significant.
void write_circuit(std::ostream& out, const UccCircuit& circuit);
std::vector<UccFactor> read_circuit_factors(std::istream& in);

}  // namespace csvqe
