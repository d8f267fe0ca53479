// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "csvqe/hamiltonian.hpp"
#include "csvqe/ucc.hpp"

namespace csvqe {

enum class SelectionKind { even, front_loaded, back_loaded, random };

/// How to pick the M circuit-prefix states entering the subspace; every
/// produced index set contains the final state N.
struct SelectionStrategy {
  SelectionKind kind = SelectionKind::even;
  int m = 1;
  std::uint64_t seed = 0;  // random selection only
};

/// The projected eigenproblem: H and S over the chosen prefix states.
struct SubspaceProblem {
  Eigen::MatrixXd h;
  Eigen::MatrixXd s;
  std::vector<int> state_indices;
};

struct GepSolution {
  double energy = 0.0;
  Eigen::VectorXd coefficients;  // in the original state basis
  int retained_rank = 0;
};

constexpr double kDefaultOverlapThreshold = 1e-10;

/// Index set of size M for a circuit of N gates (states 0..N).
std::vector<int> select_states(const SelectionStrategy& strategy, int n_gates);

/// All N+1 prefix states of a circuit, computed in one sweep.
std::vector<SparseWavefunction> prefix_states(const UccCircuit& circuit);

/// Assemble H_ij and S_ij over the selected prefix states (upper triangle
/// computed, mirrored).
SubspaceProblem build_subspace_problem(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                       const std::vector<int>& indices);
SubspaceProblem build_subspace_problem(const HamiltonianContext& ctx,
                                       const std::vector<SparseWavefunction>& states,
                                       const std::vector<int>& indices);

/// H and S over all N+1 prefix states of one circuit; computing them once
/// lets many index subsets be solved as submatrix problems.
struct SubspaceMatrices {
  Eigen::MatrixXd h;
  Eigen::MatrixXd s;

  [[nodiscard]] int n_gates() const { return static_cast<int>(h.rows()) - 1; }
};

SubspaceMatrices build_subspace_matrices(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                         int threads = 1);
SubspaceProblem extract_problem(const SubspaceMatrices& matrices, const std::vector<int>& indices);

/// Solve the generalized eigenvalue problem by canonical orthogonalization:
/// eigendecompose S, drop eigenvalues at or below the threshold, transform H
/// into the retained well-conditioned basis, and take the lowest eigenpair.
GepSolution solve_gep(const SubspaceProblem& problem,
                      double threshold = kDefaultOverlapThreshold);

/// select_states -> build_subspace_problem -> solve_gep for a circuit with
/// fixed angles.
GepSolution csvqe_energy(const HamiltonianContext& ctx, const UccCircuit& circuit,
                         const SelectionStrategy& strategy,
                         double threshold = kDefaultOverlapThreshold);

struct RandomSearchResult {
  std::vector<std::vector<int>> index_sets;
  std::vector<double> energies;
  std::vector<int> retained_ranks;
  std::size_t best_index = 0;

  [[nodiscard]] double best_energy() const { return energies[best_index]; }
};

/// Evaluate n_samples distinct random index sets of size M (always
/// containing N); falls back to exhaustive enumeration when fewer than
/// n_samples distinct sets exist.  Deterministic given the seed for any
/// thread count.
RandomSearchResult random_search(const HamiltonianContext& ctx, const UccCircuit& circuit, int m,
                                 std::size_t n_samples, std::uint64_t seed,
                                 double threshold = kDefaultOverlapThreshold, int threads = 1);
RandomSearchResult random_search(const SubspaceMatrices& matrices, int m, std::size_t n_samples,
                                 std::uint64_t seed, double threshold = kDefaultOverlapThreshold,
                                 int threads = 1);

struct SampleStatistics {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
};

/// Statistics of (energy - reference) over a nonempty sample list.
SampleStatistics sample_statistics(const std::vector<double>& energies, double reference);

}  // namespace csvqe
