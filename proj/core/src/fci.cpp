// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/fci.hpp"

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csvqe {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// bit masks with `count` set bits over `width` bits, ascending (Gosper)
std::vector<std::uint64_t> masks_with_popcount(int width, int count) {
  std::vector<std::uint64_t> out;
  if (count == 0) {
    out.push_back(0);
    return out;
  }
  std::uint64_t v = (std::uint64_t{1} << count) - 1;
  const std::uint64_t limit = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width);
  while (width >= 64 || v < limit) {
    out.push_back(v);
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    if (r == 0) break;  // wrapped past the top
    v = (((r ^ v) >> 2) / c) | r;
    if (width < 64 && v >= limit) break;
  }
  return out;
}

void collect_empty(std::uint64_t mask, int n_orbitals, Spin spin, std::vector<SpinOrbital>& out) {
  for (int p = 0; p < n_orbitals; ++p)
    if (!((mask >> p) & 1u)) out.push_back({p, spin});
}

void collect_set(std::uint64_t mask, Spin spin, std::vector<SpinOrbital>& out) {
  for (std::uint64_t m = mask; m; m &= m - 1) out.push_back({std::countr_zero(m), spin});
}

// y += H x over the full basis, one column at a time through single and
// double excitations.
void apply_hamiltonian(const HamiltonianContext& ctx, const FciBasis& basis, int n_orbitals,
                       const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.setZero();
  std::vector<SpinOrbital> occ, empty;
  std::array<SpinOrbital, 2> holes{}, particles{};
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const double xj = x(static_cast<Eigen::Index>(col));
    if (xj == 0.0) continue;
    const Determinant& det = basis.determinants[col];
    y(static_cast<Eigen::Index>(col)) += ctx.diagonal_element(det) * xj;

    occ.clear();
    empty.clear();
    collect_set(det.alpha, Spin::alpha, occ);
    collect_set(det.beta, Spin::beta, occ);
    collect_empty(det.alpha, n_orbitals, Spin::alpha, empty);
    collect_empty(det.beta, n_orbitals, Spin::beta, empty);

    // singles
    for (const SpinOrbital h : occ) {
      for (const SpinOrbital p : empty) {
        if (h.spin != p.spin) continue;
        holes[0] = h;
        particles[0] = p;
        const auto image = apply_excitation(det, {holes.data(), 1}, {particles.data(), 1});
        const auto it = basis.index.find(image->det);
        y(it->second) += ctx.offdiagonal_element(image->det, det) * xj;
      }
    }
    // doubles: unordered hole and particle pairs with matching spin content
    for (std::size_t a = 0; a < occ.size(); ++a) {
      for (std::size_t b = a + 1; b < occ.size(); ++b) {
        const int spin_holes = static_cast<int>(occ[a].spin) + static_cast<int>(occ[b].spin);
        for (std::size_t c = 0; c < empty.size(); ++c) {
          for (std::size_t d = c + 1; d < empty.size(); ++d) {
            if (static_cast<int>(empty[c].spin) + static_cast<int>(empty[d].spin) != spin_holes)
              continue;
            holes = {occ[a], occ[b]};
            particles = {empty[c], empty[d]};
            const auto image = apply_excitation(det, {holes.data(), 2}, {particles.data(), 2});
            if (!image) continue;
            const auto it = basis.index.find(image->det);
            y(it->second) += ctx.offdiagonal_element(image->det, det) * xj;
          }
        }
      }
    }
  }
}

SparseWavefunction to_wavefunction(const FciBasis& basis, const Eigen::VectorXd& v) {
  std::vector<SparseWavefunction::Term> terms;
  terms.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double amp = v(static_cast<Eigen::Index>(i));
    if (amp != 0.0) terms.emplace_back(basis.determinants[i], amp);
  }
  return SparseWavefunction::from_terms(std::move(terms));
}

}  // namespace

FciBasis enumerate_determinants(int n_orbitals, int n_alpha, int n_beta) {
  if (n_orbitals < 1 || n_orbitals > 64)
    throw std::invalid_argument("enumerate_determinants: n_orbitals must be in [1, 64]");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals)
    throw std::invalid_argument("enumerate_determinants: electron count exceeds orbital count");
  FciBasis basis;
  const auto amasks = masks_with_popcount(n_orbitals, n_alpha);
  const auto bmasks = masks_with_popcount(n_orbitals, n_beta);
  basis.determinants.reserve(amasks.size() * bmasks.size());
  for (const std::uint64_t a : amasks)
    for (const std::uint64_t b : bmasks) basis.determinants.push_back({a, b});
  basis.index.reserve(basis.determinants.size());
  for (std::size_t i = 0; i < basis.determinants.size(); ++i)
    basis.index.emplace(basis.determinants[i], static_cast<int>(i));
  return basis;
}

FciResult fci_ground_energy(const IntegralTable& table, const FciOptions& options) {
  const int n = table.n_orbitals();
  if ((table.n_electrons() + table.ms2()) % 2 != 0)
    throw std::invalid_argument("fci_ground_energy: inconsistent electron count and ms2");
  const int n_alpha = (table.n_electrons() + table.ms2()) / 2;
  const int n_beta = (table.n_electrons() - table.ms2()) / 2;
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n || n_beta > n)
    throw std::invalid_argument("fci_ground_energy: electron count exceeds orbital count");

  const double dim_estimate = binomial(n, n_alpha) * binomial(n, n_beta);
  if (dim_estimate > static_cast<double>(options.max_dimension))
    throw std::runtime_error("fci_ground_energy: basis dimension " +
                             std::to_string(static_cast<std::size_t>(dim_estimate)) +
                             " exceeds the capacity limit");

  const FciBasis basis = enumerate_determinants(n, n_alpha, n_beta);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const HamiltonianContext ctx(table);

  FciResult result;
  Eigen::VectorXd ground(dim);

  if (basis.size() <= options.dense_cutoff) {
    Eigen::MatrixXd h(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Determinant& di = basis.determinants[static_cast<std::size_t>(i)];
      h(i, i) = ctx.diagonal_element(di);
      for (Eigen::Index j = i + 1; j < dim; ++j) {
        const Determinant& dj = basis.determinants[static_cast<std::size_t>(j)];
        const double el =
            excitation_degree(di, dj) > 2 ? 0.0 : ctx.offdiagonal_element(di, dj);
        h(i, j) = el;
        h(j, i) = el;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success) throw std::runtime_error("fci_ground_energy: eigensolve failed");
    result.energy = eig.eigenvalues()(0);
    ground = eig.eigenvectors().col(0);
    result.dense_path = true;
  } else {
    // Lanczos with full reorthogonalization and a deterministic unit start
    // on the first basis determinant.
    const int max_iter = std::min<int>(options.max_iterations, static_cast<int>(dim));
    std::vector<Eigen::VectorXd> krylov;
    std::vector<double> alphas, betas;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(0) = 1.0;
    krylov.push_back(v);
    Eigen::VectorXd w(dim);
    bool converged = false;
    int k = 0;
    for (; k < max_iter; ++k) {
      apply_hamiltonian(ctx, basis, n, krylov.back(), w);
      const double alpha = krylov.back().dot(w);
      alphas.push_back(alpha);
      // full reorthogonalization, twice
      for (int pass = 0; pass < 2; ++pass)
        for (const Eigen::VectorXd& q : krylov) w -= q.dot(w) * q;

      // Ritz value/vector of the current tridiagonal block
      const auto kk = static_cast<Eigen::Index>(alphas.size());
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(kk, kk);
      for (Eigen::Index i = 0; i < kk; ++i) {
        tri(i, i) = alphas[static_cast<std::size_t>(i)];
        if (i + 1 < kk) {
          tri(i, i + 1) = betas[static_cast<std::size_t>(i)];
          tri(i + 1, i) = betas[static_cast<std::size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri_eig(tri);
      const double theta = tri_eig.eigenvalues()(0);
      const double beta_next = w.norm();
      const double residual_estimate =
          std::abs(beta_next * tri_eig.eigenvectors().col(0)(kk - 1));
      if (residual_estimate <= options.residual_tol || beta_next < 1e-14 || k + 1 == max_iter) {
        result.energy = theta;
        ground.setZero();
        for (Eigen::Index j = 0; j < kk; ++j)
          ground += tri_eig.eigenvectors().col(0)(j) * krylov[static_cast<std::size_t>(j)];
        converged = residual_estimate <= options.residual_tol || beta_next < 1e-14;
        break;
      }
      betas.push_back(beta_next);
      krylov.push_back(w / beta_next);
    }
    result.dense_path = false;
    result.iterations = k + 1;
    if (!converged)
      throw std::runtime_error("fci_ground_energy: Lanczos failed to reach the residual tolerance");
  }

  ground.normalize();
  Eigen::VectorXd hv(dim);
  apply_hamiltonian(ctx, basis, n, ground, hv);
  result.residual_norm = (hv - result.energy * ground).norm();
  result.ground = to_wavefunction(basis, ground);
  return result;
}

}  // namespace csvqe
