// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "csvqe/parallel.hpp"
#include "csvqe/rng.hpp"

namespace csvqe {

std::vector<int> select_states(const SelectionStrategy& strategy, int n_gates) {
  const int m = strategy.m;
  const int n = n_gates;
  if (m < 1) throw std::invalid_argument("select_states: M must be at least 1");
  if (m > n + 1) throw std::invalid_argument("select_states: M exceeds the state count N+1");
  if (m == 1) return {n};

  std::vector<int> out;
  switch (strategy.kind) {
    case SelectionKind::even: {
      std::set<int> chosen;
      for (int k = 0; k <= m - 2; ++k)
        chosen.insert(static_cast<int>((static_cast<long long>(k) * n) / (m - 1)));
      chosen.insert(n);
      // floor collisions for small N: fill with the smallest unused indices
      for (int candidate = 0; static_cast<int>(chosen.size()) < m; ++candidate)
        chosen.insert(candidate);
      out.assign(chosen.begin(), chosen.end());
      break;
    }
    case SelectionKind::back_loaded: {
      for (int i = n - m + 1; i <= n; ++i) out.push_back(i);
      break;
    }
    case SelectionKind::front_loaded: {
      for (int i = 0; i <= m - 2; ++i) out.push_back(i);
      out.push_back(n);
      break;
    }
    case SelectionKind::random: {
      std::mt19937_64 rng(strategy.seed);
      std::set<int> chosen;
      while (static_cast<int>(chosen.size()) < m - 1) {
        std::uniform_int_distribution<int> dist(0, n - 1);
        chosen.insert(dist(rng));
      }
      chosen.insert(n);
      out.assign(chosen.begin(), chosen.end());
      break;
    }
  }
  return out;
}

std::vector<SparseWavefunction> prefix_states(const UccCircuit& circuit) {
  std::vector<SparseWavefunction> states;
  states.reserve(circuit.size() + 1);
  SparseWavefunction psi = SparseWavefunction::single(circuit.reference());
  states.push_back(psi);
  for (const UccFactor& f : circuit.factors()) {
    psi = truncate(apply_factor(psi, f), circuit.n_wf());
    states.push_back(psi);
  }
  return states;
}

SubspaceProblem build_subspace_problem(const HamiltonianContext& ctx,
                                       const std::vector<SparseWavefunction>& states,
                                       const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("build_subspace_problem: empty index set");
  const auto m = static_cast<Eigen::Index>(indices.size());
  SubspaceProblem problem;
  problem.state_indices = indices;
  problem.h.resize(m, m);
  problem.s.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const SparseWavefunction& psi_i = states.at(static_cast<std::size_t>(indices[i]));
    for (Eigen::Index j = i; j < m; ++j) {
      const SparseWavefunction& psi_j = states.at(static_cast<std::size_t>(indices[j]));
      const double hij = ctx.transition_element(psi_i, psi_j);
      const double sij = inner_product(psi_i, psi_j);
      problem.h(i, j) = hij;
      problem.h(j, i) = hij;
      problem.s(i, j) = sij;
      problem.s(j, i) = sij;
    }
  }
  return problem;
}

SubspaceProblem build_subspace_problem(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                       const std::vector<int>& indices) {
  for (const int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) > circuit.size())
      throw std::invalid_argument("build_subspace_problem: state index out of range");
  }
  return build_subspace_problem(ctx, prefix_states(circuit), indices);
}

GepSolution solve_gep(const SubspaceProblem& problem, double threshold) {
  const Eigen::Index m = problem.s.rows();
  if (m == 0 || problem.h.rows() != m)
    throw std::invalid_argument("solve_gep: malformed subspace problem");

  // a single-state subspace is that state's Rayleigh quotient, exactly
  if (m == 1) {
    if (problem.s(0, 0) <= threshold)
      throw std::runtime_error("solve_gep: degenerate overlap, no directions above threshold");
    GepSolution solution;
    solution.energy = problem.h(0, 0) / problem.s(0, 0);
    solution.coefficients = Eigen::VectorXd::Constant(1, 1.0 / std::sqrt(problem.s(0, 0)));
    solution.retained_rank = 1;
    return solution;
  }

  const Eigen::MatrixXd s_sym = 0.5 * (problem.s + problem.s.transpose());
  const Eigen::MatrixXd h_sym = 0.5 * (problem.h + problem.h.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(s_sym);
  if (s_eig.info() != Eigen::Success) throw std::runtime_error("solve_gep: overlap eigensolve failed");

  std::vector<Eigen::Index> retained;
  for (Eigen::Index k = 0; k < m; ++k)
    if (s_eig.eigenvalues()(k) > threshold) retained.push_back(k);
  if (retained.empty())
    throw std::runtime_error("solve_gep: degenerate overlap, no directions above threshold");

  const auto r = static_cast<Eigen::Index>(retained.size());
  Eigen::MatrixXd basis(m, r);  // canonical orthogonalization V * Lambda^{-1/2}
  for (Eigen::Index c = 0; c < r; ++c)
    basis.col(c) = s_eig.eigenvectors().col(retained[static_cast<std::size_t>(c)]) /
                   std::sqrt(s_eig.eigenvalues()(retained[static_cast<std::size_t>(c)]));

  const Eigen::MatrixXd h_reduced = basis.transpose() * h_sym * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> h_eig(h_reduced);
  if (h_eig.info() != Eigen::Success) throw std::runtime_error("solve_gep: reduced eigensolve failed");

  GepSolution solution;
  solution.energy = h_eig.eigenvalues()(0);
  solution.coefficients = basis * h_eig.eigenvectors().col(0);
  solution.retained_rank = static_cast<int>(r);
  return solution;
}

GepSolution csvqe_energy(const HamiltonianContext& ctx, const UccCircuit& circuit,
                         const SelectionStrategy& strategy, double threshold) {
  const std::vector<int> indices = select_states(strategy, static_cast<int>(circuit.size()));
  return solve_gep(build_subspace_problem(ctx, circuit, indices), threshold);
}

namespace {

// C(n, k) saturated at `cap` to sidestep overflow.
std::size_t combination_count_capped(int n, int k, std::size_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const double projected = static_cast<double>(result) * (n - k + i) / i;
    if (projected >= static_cast<double>(cap)) return cap;
    result = result * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  }
  return std::min(result, cap);
}

std::vector<int> draw_index_set(std::mt19937_64& rng, int n_gates, int m) {
  std::set<int> chosen;
  while (static_cast<int>(chosen.size()) < m - 1) {
    std::uniform_int_distribution<int> dist(0, n_gates - 1);
    chosen.insert(dist(rng));
  }
  std::vector<int> out(chosen.begin(), chosen.end());
  out.push_back(n_gates);
  return out;
}

std::vector<std::vector<int>> generate_index_sets(int n_gates, int m, std::size_t n_samples,
                                                  std::uint64_t seed) {
  std::vector<std::vector<int>> sets;
  const std::size_t distinct = combination_count_capped(n_gates, m - 1, n_samples + 1);
  if (distinct <= n_samples) {
    // fewer distinct sets than requested samples: enumerate them all
    std::vector<int> combo(static_cast<std::size_t>(m - 1));
    for (int i = 0; i < m - 1; ++i) combo[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<int> set = combo;
      set.push_back(n_gates);
      sets.push_back(std::move(set));
      int pos = m - 2;
      while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == n_gates - (m - 1) + pos) --pos;
      if (pos < 0) break;
      ++combo[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < m - 1; ++q)
        combo[static_cast<std::size_t>(q)] = combo[static_cast<std::size_t>(q - 1)] + 1;
    }
    return sets;
  }
  std::set<std::vector<int>> seen;
  for (std::size_t k = 0; k < n_samples; ++k) {
    std::mt19937_64 rng = make_stream(seed, "sample", k);
    std::vector<int> set = draw_index_set(rng, n_gates, m);
    while (!seen.insert(set).second) set = draw_index_set(rng, n_gates, m);
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace

SubspaceMatrices build_subspace_matrices(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                         int threads) {
  const std::vector<SparseWavefunction> states = prefix_states(circuit);
  const auto n_states = static_cast<int>(states.size());
  SubspaceMatrices matrices;
  matrices.h = Eigen::MatrixXd::Zero(n_states, n_states);
  matrices.s = Eigen::MatrixXd::Zero(n_states, n_states);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_states) * (n_states + 1) / 2);
  for (int i = 0; i < n_states; ++i)
    for (int j = i; j < n_states; ++j) pairs.emplace_back(i, j);
  // each pair owns its slots, so the fill parallelizes deterministically
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double hij = ctx.transition_element(states[static_cast<std::size_t>(i)],
                                              states[static_cast<std::size_t>(j)]);
    const double sij = inner_product(states[static_cast<std::size_t>(i)],
                                     states[static_cast<std::size_t>(j)]);
    matrices.h(i, j) = hij;
    matrices.h(j, i) = hij;
    matrices.s(i, j) = sij;
    matrices.s(j, i) = sij;
  });
  return matrices;
}

SubspaceProblem extract_problem(const SubspaceMatrices& matrices, const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("extract_problem: empty index set");
  const auto m = static_cast<Eigen::Index>(indices.size());
  SubspaceProblem problem;
  problem.state_indices = indices;
  problem.h.resize(m, m);
  problem.s.resize(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      problem.h(a, b) =
          matrices.h(indices[static_cast<std::size_t>(a)], indices[static_cast<std::size_t>(b)]);
      problem.s(a, b) =
          matrices.s(indices[static_cast<std::size_t>(a)], indices[static_cast<std::size_t>(b)]);
    }
  return problem;
}

RandomSearchResult random_search(const SubspaceMatrices& matrices, int m, std::size_t n_samples,
                                 std::uint64_t seed, double threshold, int threads) {
  if (n_samples == 0) throw std::invalid_argument("random_search: n_samples must be at least 1");
  const int n_gates = matrices.n_gates();
  if (m < 1 || m > n_gates + 1) throw std::invalid_argument("random_search: M out of range");

  RandomSearchResult result;
  result.index_sets = generate_index_sets(n_gates, m, n_samples, seed);
  result.energies.resize(result.index_sets.size());
  result.retained_ranks.resize(result.index_sets.size());
  parallel_for(result.index_sets.size(), threads, [&](std::size_t k) {
    const GepSolution solution = solve_gep(extract_problem(matrices, result.index_sets[k]), threshold);
    result.energies[k] = solution.energy;
    result.retained_ranks[k] = solution.retained_rank;
  });

  result.best_index = 0;
  for (std::size_t k = 1; k < result.energies.size(); ++k)
    if (result.energies[k] < result.energies[result.best_index]) result.best_index = k;
  return result;
}

RandomSearchResult random_search(const HamiltonianContext& ctx, const UccCircuit& circuit, int m,
                                 std::size_t n_samples, std::uint64_t seed, double threshold,
                                 int threads) {
  return random_search(build_subspace_matrices(ctx, circuit, threads), m, n_samples, seed,
                       threshold, threads);
}

SampleStatistics sample_statistics(const std::vector<double>& energies, double reference) {
  if (energies.empty()) throw std::invalid_argument("sample_statistics: empty sample list");
  SampleStatistics stats;
  stats.min = std::numeric_limits<double>::infinity();
  for (const double e : energies) {
    const double err = e - reference;
    stats.mean += err;
    stats.min = std::min(stats.min, err);
  }
  stats.mean /= static_cast<double>(energies.size());
  double var = 0.0;
  for (const double e : energies) {
    const double d = (e - reference) - stats.mean;
    var += d * d;
  }
  stats.stddev = std::sqrt(var / static_cast<double>(energies.size()));
  return stats;
}

}  // namespace csvqe
