// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

// Microbenchmarks for the hot paths: factor application, bilinear forms
// between prefix states, subspace matrix assembly, and the generalized
// eigensolve.

#include <benchmark/benchmark.h>

#include <random>

#include "csvqe/fci.hpp"
#include "csvqe/hamiltonian.hpp"
#include "csvqe/integrals.hpp"
#include "csvqe/subspace.hpp"
#include "csvqe/ucc.hpp"
#include "csvqe/vqe.hpp"

namespace {

using csvqe::HamiltonianContext;
using csvqe::IntegralTable;
using csvqe::SparseWavefunction;
using csvqe::UccCircuit;

std::string data_path(const char* name) { return std::string(CSVQE_DATA_DIR) + "/" + name; }

const IntegralTable& lih_table() {
  static const IntegralTable table = IntegralTable::parse_fcidump_file(data_path("lih_sto3g.fcidump"));
  return table;
}

UccCircuit lih_circuit() {
  const IntegralTable& t = lih_table();
  return csvqe::build_circuit(t, csvqe::mp2_amplitudes(t), 50, true, 50000);
}

SparseWavefunction lih_final_state() {
  static const SparseWavefunction state = [] {
    const UccCircuit circuit = lih_circuit();
    return prefix_state(circuit, circuit.size());
  }();
  return state;
}

void bench_apply_factor(benchmark::State& state) {
  const UccCircuit circuit = lih_circuit();
  const SparseWavefunction psi = lih_final_state();
  const csvqe::UccFactor factor = circuit.factors().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_factor(psi, factor));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(psi.size()));
}
BENCHMARK(bench_apply_factor);

void bench_full_circuit(benchmark::State& state) {
  const UccCircuit circuit = lih_circuit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(prefix_state(circuit, circuit.size()));
  }
}
BENCHMARK(bench_full_circuit);

void bench_transition_element(benchmark::State& state) {
  const HamiltonianContext ctx(lih_table());
  const SparseWavefunction psi = lih_final_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.transition_element(psi, psi));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(psi.size() * psi.size()));
}
BENCHMARK(bench_transition_element);

void bench_subspace_matrices(benchmark::State& state) {
  const HamiltonianContext ctx(lih_table());
  const UccCircuit circuit = lih_circuit();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_subspace_matrices(ctx, circuit, threads));
  }
}
BENCHMARK(bench_subspace_matrices)->Arg(1)->Arg(4);

void bench_solve_gep(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd a(m, m), b(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      a(i, j) = dist(rng);
      b(i, j) = dist(rng);
    }
  csvqe::SubspaceProblem problem;
  problem.h = 0.5 * (a + a.transpose());
  problem.s = b * b.transpose() + Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index i = 0; i < m; ++i) problem.state_indices.push_back(static_cast<int>(i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gep(problem));
  }
}
BENCHMARK(bench_solve_gep)->Arg(4)->Arg(12)->Arg(32)->Arg(67);

void bench_fci_lih(benchmark::State& state) {
  const IntegralTable& t = lih_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(csvqe::fci_ground_energy(t));
  }
}
BENCHMARK(bench_fci_lih);

}  // namespace

BENCHMARK_MAIN();
