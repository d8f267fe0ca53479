// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "csvqe/determinant.hpp"

namespace csvqe {

/// Core energy plus one- and two-electron integrals of a molecular
/// Hamiltonian.  Two-electron values are in chemists' notation (pq|rs)
/// and are stored once under the canonical representative of the 8-fold
/// index symmetry; absent indices read as exactly zero.  Orbital indices
/// in the public interface are 1-based, matching the FCIDUMP convention.
/// Immutable after parsing, safe for concurrent reads.
class IntegralTable {
 public:
  IntegralTable(int n_orbitals, int n_electrons, int ms2, double core_energy = 0.0);

  /// Parse an FCIDUMP stream: a namelist header with NORB/NELEC/MS2
  /// terminated by "&END" or "/", then "value i j k l" records.  The
  /// i=j=k=l=0 record sets the core energy, k=l=0 records one-electron
  /// integrals, fully indexed records two-electron integrals; later
  /// duplicates overwrite.  Only MS2=0 systems are accepted.
  static IntegralTable parse_fcidump(std::istream& in);
  static IntegralTable parse_fcidump_file(const std::string& path);

  [[nodiscard]] int n_orbitals() const noexcept { return n_orbitals_; }
  [[nodiscard]] int n_electrons() const noexcept { return n_electrons_; }
  [[nodiscard]] int ms2() const noexcept { return ms2_; }
  [[nodiscard]] double core_energy() const noexcept { return core_energy_; }

  void set_core_energy(double value) noexcept { core_energy_ = value; }
  void set_one_electron(int p, int q, double value);
  void set_two_electron(int p, int q, int r, int s, double value);

  [[nodiscard]] double one_electron(int p, int q) const;
  [[nodiscard]] double two_electron(int p, int q, int r, int s) const;

  /// Closed-shell reference determinant: the first n_electrons/2 orbitals
  /// doubly occupied.  Throws for odd electron counts.
  [[nodiscard]] Determinant hf_determinant() const;

  /// Closed-shell restricted Hartree-Fock energy of that determinant.
  [[nodiscard]] double hf_energy() const;

  /// Emit the table in FCIDUMP form (canonical entries only).
  void write_fcidump(std::ostream& out) const;

 private:
  void check_range(int index) const;

  int n_orbitals_ = 0;
  int n_electrons_ = 0;
  int ms2_ = 0;
  double core_energy_ = 0.0;
  std::unordered_map<std::uint64_t, double> one_electron_;
  std::unordered_map<std::uint64_t, double> two_electron_;
};

}  // namespace csvqe
