// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/hamiltonian.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <vector>

namespace csvqe {

namespace {

// occupied spin-orbitals in global (alpha block, then beta) order
void collect_occupied(const Determinant& d, std::vector<SpinOrbital>& out) {
  out.clear();
  for (std::uint64_t m = d.alpha; m; m &= m - 1)
    out.push_back({std::countr_zero(m), Spin::alpha});
  for (std::uint64_t m = d.beta; m; m &= m - 1)
    out.push_back({std::countr_zero(m), Spin::beta});
}

// spin-orbitals set in `mask` for one spin sector, ascending
void collect_bits(std::uint64_t mask, Spin spin, std::array<SpinOrbital, 2>& out, int& count) {
  for (std::uint64_t m = mask; m; m &= m - 1) out[count++] = {std::countr_zero(m), spin};
}

}  // namespace

double HamiltonianContext::diagonal_element(const Determinant& d) const {
  const IntegralTable& t = *table_;
  std::vector<SpinOrbital> occ;
  collect_occupied(d, occ);
  double e = t.core_energy();
  for (const SpinOrbital p : occ) e += t.one_electron(p.orbital + 1, p.orbital + 1);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const int pi = occ[i].orbital + 1;
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      const int pj = occ[j].orbital + 1;
      e += t.two_electron(pi, pi, pj, pj);
      if (occ[i].spin == occ[j].spin) e -= t.two_electron(pi, pj, pj, pi);
    }
  }
  return e;
}

double HamiltonianContext::offdiagonal_element(const Determinant& a, const Determinant& b) const {
  if (a == b) throw std::invalid_argument("offdiagonal_element: determinants are equal");
  // Spin-sector changing elements vanish for a particle- and Sz-conserving
  // Hamiltonian.
  if (a.n_alpha() != b.n_alpha() || a.n_beta() != b.n_beta()) return 0.0;

  const std::uint64_t ax = a.alpha ^ b.alpha;
  const std::uint64_t bx = a.beta ^ b.beta;
  const int degree = (std::popcount(ax) + std::popcount(bx)) / 2;
  if (degree > 2) return 0.0;

  const IntegralTable& t = *table_;
  // excitation taking b to a: holes occupied in b only, particles in a only
  std::array<SpinOrbital, 2> holes{}, particles{};
  int nh = 0, np = 0;
  collect_bits(ax & b.alpha, Spin::alpha, holes, nh);
  collect_bits(bx & b.beta, Spin::beta, holes, nh);
  collect_bits(ax & a.alpha, Spin::alpha, particles, np);
  collect_bits(bx & a.beta, Spin::beta, particles, np);

  if (degree == 1) {
    const SpinOrbital h = holes[0];
    const SpinOrbital p = particles[0];
    if (h.spin != p.spin) return 0.0;
    const int hi = h.orbital + 1, pi = p.orbital + 1;
    double val = t.one_electron(hi, pi);
    std::vector<SpinOrbital> occ;
    collect_occupied(b, occ);
    for (const SpinOrbital m : occ) {
      if (m == h) continue;
      const int mi = m.orbital + 1;
      val += t.two_electron(hi, pi, mi, mi);
      if (m.spin == h.spin) val -= t.two_electron(hi, mi, mi, pi);
    }
    const auto sign = excitation_sign(b, {holes.data(), 1}, {particles.data(), 1});
    return *sign * val;
  }

  // degree 2: holes (h1, h2) and particles (p1, p2) each ascending; the
  // direct term pairs h1-p1/h2-p2, the exchange term h1-p2/h2-p1, each
  // surviving only when the paired spins match.
  const SpinOrbital h1 = holes[0], h2 = holes[1];
  const SpinOrbital p1 = particles[0], p2 = particles[1];
  double val = 0.0;
  if (h1.spin == p1.spin && h2.spin == p2.spin)
    val += t.two_electron(h1.orbital + 1, p1.orbital + 1, h2.orbital + 1, p2.orbital + 1);
  if (h1.spin == p2.spin && h2.spin == p1.spin)
    val -= t.two_electron(h1.orbital + 1, p2.orbital + 1, h2.orbital + 1, p1.orbital + 1);
  if (val == 0.0) return 0.0;
  const auto sign = excitation_sign(b, {holes.data(), 2}, {particles.data(), 2});
  return *sign * val;
}

double HamiltonianContext::transition_element(const SparseWavefunction& a,
                                              const SparseWavefunction& b) const {
  if (a.empty() || b.empty()) return 0.0;
  if (a.electron_counts() != b.electron_counts())
    throw std::invalid_argument("transition_element: mismatched electron sectors");
  double sum = 0.0;
  for (const auto& [da, ca] : a.terms()) {
    for (const auto& [db, cb] : b.terms()) {
      const int degree =
          (std::popcount(da.alpha ^ db.alpha) + std::popcount(da.beta ^ db.beta)) / 2;
      if (degree > 2) continue;
      const double el = degree == 0 ? diagonal_element(da) : offdiagonal_element(da, db);
      sum += ca * el * cb;
    }
  }
  return sum;
}

double HamiltonianContext::rayleigh_quotient(const SparseWavefunction& psi) const {
  const double n2 = psi.norm2();
  if (n2 == 0.0) throw std::invalid_argument("rayleigh_quotient: zero-norm state");
  return transition_element(psi, psi) / n2;
}

}  // namespace csvqe
