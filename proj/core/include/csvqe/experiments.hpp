// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csvqe/subspace.hpp"
#include "csvqe/vqe.hpp"

namespace csvqe {

/// Sentinel in m-value lists meaning "all N+1 states", resolved once the
/// circuit size is known (spelled "full" in config files).
constexpr int kFullSubspace = -1;

/// Everything a study run needs, read from a sectioned key = value file.
/// The seed is mandatory; no study ever samples from the wall clock.
struct ExperimentConfig {
  std::string fcidump_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::string out_dir;  // empty: no files written
  double gep_threshold = kDefaultOverlapThreshold;

  // [circuit]
  int max_doubles = 50;
  bool include_singles = true;
  std::size_t n_wf = 50000;

  // [optimizer]
  OptimizerSettings optimizer;

  // [selection_study]
  std::vector<int> selection_m_values{2, 4, 8};
  std::size_t selection_n_samples = 1000;

  // [opt_trace_study]
  std::vector<int> trace_m_values{4, 12, kFullSubspace};
  std::size_t trace_n_samples = 1000;

  // [local_minima_study]
  int lm_n_trials = 30;
  std::vector<int> lm_m_values{4, 8, 12};
  std::size_t lm_n_samples = 10000;
  std::size_t lm_n_wf = 30000;
  double lm_init_scale = 3.14159265358979323846;

  // [csvqe]
  std::string csvqe_strategy = "random";
  int csvqe_m = 4;
  std::size_t csvqe_n_samples = 1000;

  static ExperimentConfig load(const std::string& path);
  void validate() const;
};

struct SelectionStudyRow {
  std::string strategy;
  int m = 0;
  double energy = 0.0;
  double error = 0.0;
};

struct SelectionStudyResult {
  double e_fci = 0.0;
  double vqe_energy = 0.0;
  int n_factors = 0;
  int opt_step = 0;  // trace step the studied circuit was taken from
  std::vector<SelectionStudyRow> rows;
};

/// State-selection comparison on the circuit after the first optimization
/// step: even / front-loaded / back-loaded strategies at each configured M
/// plus the best of the random search, with the plain VQE baseline row.
SelectionStudyResult run_selection_study(const ExperimentConfig& config);

struct TraceStudyRow {
  int step = 0;
  double vqe_error = 0.0;
  std::vector<double> csvqe_errors;  // one per resolved m value
};

struct OptTraceStudyResult {
  double e_fci = 0.0;
  int n_factors = 0;
  std::vector<int> m_values;  // resolved (kFullSubspace -> N+1)
  std::vector<TraceStudyRow> rows;
};

/// Optimize from the MP2 initialization, then per recorded optimizer step
/// rebuild the circuit and report the best subspace energy at each M.
OptTraceStudyResult run_opt_trace_study(const ExperimentConfig& config);

struct LocalMinimaTrial {
  int trial = 0;
  double vqe_energy = 0.0;
  double vqe_error = 0.0;
  std::vector<double> csvqe_errors;
};

struct LocalMinimaStudyResult {
  double e_fci = 0.0;
  int n_factors = 0;
  std::vector<int> m_values;
  std::vector<LocalMinimaTrial> trials;  // ascending by final VQE error
  int best_trial = 0;
  int worst_trial = 0;
  std::vector<TraceStudyRow> best_trace;
  std::vector<TraceStudyRow> worst_trace;
};

/// Randomly initialized optimization trials with subspace post-processing
/// of every final circuit, plus full per-step traces for the best and
/// worst trials.
LocalMinimaStudyResult run_local_minima_study(const ExperimentConfig& config);

struct CsvqeSampleRow {
  std::size_t sample_index = 0;
  int m = 0;
  std::vector<int> indices;
  double energy = 0.0;
  double error = 0.0;
  int retained_rank = 0;
};

struct CsvqeRunResult {
  double e_fci = 0.0;
  double vqe_energy = 0.0;
  int n_factors = 0;
  std::vector<CsvqeSampleRow> rows;
  std::size_t best_index = 0;
};

/// Optimize, then apply the subspace solve with the configured strategy;
/// one row per evaluated index set.
CsvqeRunResult run_csvqe(const ExperimentConfig& config);

struct VqeRunResult {
  double e_fci = 0.0;
  double e_hf = 0.0;
  int n_factors = 0;
  OptimizationTrace trace;
};

/// Plain optimization from the MP2 initialization.
VqeRunResult run_vqe(const ExperimentConfig& config);

}  // namespace csvqe
