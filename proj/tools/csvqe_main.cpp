// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: FCIDUMP inspection, exact diagonalization, VQE
// optimization, and the subspace post-processing studies.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "csvqe/experiments.hpp"
#include "csvqe/fci.hpp"
#include "csvqe/integrals.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("config", flags.config_path, "experiment config file")->required();
  cmd->add_option("--out-dir", flags.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", flags.seed, "root seed (overrides config)")
      ->each([&](const std::string&) { flags.seed_given = true; });
  cmd->add_option("--threads", flags.threads, "worker threads (overrides config)");
}

csvqe::ExperimentConfig load_config(const CommonFlags& flags) {
  csvqe::ExperimentConfig config = csvqe::ExperimentConfig::load(flags.config_path);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.seed_given) {
    config.seed = flags.seed;
    config.seed_set = true;
  }
  if (flags.threads > 0) config.threads = flags.threads;
  config.validate();
  return config;
}

void print_energy(const char* label, double value) {
  std::printf("%-14s %18.12f Ha\n", label, value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-determinant simulator for factorized unitary coupled-cluster "
               "circuits with subspace post-processing"};
  app.require_subcommand(1);

  std::string fcidump_path;
  auto* parse_cmd = app.add_subcommand("parse-check", "parse an FCIDUMP file and print a summary");
  parse_cmd->add_option("fcidump", fcidump_path, "FCIDUMP file")->required();

  auto* fci_cmd = app.add_subcommand("fci", "exact ground-state energy by full diagonalization");
  fci_cmd->add_option("fcidump", fcidump_path, "FCIDUMP file")->required();

  CommonFlags vqe_flags, csvqe_flags, selection_flags, trace_flags, minima_flags;
  auto* vqe_cmd = app.add_subcommand("vqe", "optimize the circuit and store the trace");
  add_common(vqe_cmd, vqe_flags);
  auto* csvqe_cmd = app.add_subcommand("csvqe", "subspace solve on the optimized circuit");
  add_common(csvqe_cmd, csvqe_flags);
  auto* selection_cmd =
      app.add_subcommand("selection-study", "state-selection strategy comparison");
  add_common(selection_cmd, selection_flags);
  auto* trace_cmd =
      app.add_subcommand("opt-trace-study", "subspace errors along the optimization trace");
  add_common(trace_cmd, trace_flags);
  auto* minima_cmd =
      app.add_subcommand("local-minima-study", "randomly initialized trials and recovery");
  add_common(minima_cmd, minima_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) {
      const csvqe::IntegralTable table = csvqe::IntegralTable::parse_fcidump_file(fcidump_path);
      std::printf("n_orbitals    %d\n", table.n_orbitals());
      std::printf("n_electrons   %d\n", table.n_electrons());
      print_energy("core_energy", table.core_energy());
      print_energy("hf_energy", table.hf_energy());
      return 0;
    }
    if (fci_cmd->parsed()) {
      const csvqe::IntegralTable table = csvqe::IntegralTable::parse_fcidump_file(fcidump_path);
      const csvqe::FciResult fci = csvqe::fci_ground_energy(table);
      print_energy("e_hf", table.hf_energy());
      print_energy("e_fci", fci.energy);
      print_energy("correlation", fci.energy - table.hf_energy());
      std::printf("residual      %.3e\n", fci.residual_norm);
      return 0;
    }
    if (vqe_cmd->parsed()) {
      const csvqe::ExperimentConfig config = load_config(vqe_flags);
      const csvqe::VqeRunResult result = csvqe::run_vqe(config);
      std::printf("factors       %d\n", result.n_factors);
      std::printf("steps         %zu\n", result.trace.steps.size());
      std::printf("converged     %s\n", result.trace.converged ? "yes" : "no");
      print_energy("e_vqe", result.trace.steps.back().energy);
      print_energy("e_fci", result.e_fci);
      std::printf("error         %.6e Ha\n", result.trace.steps.back().energy - result.e_fci);
      return 0;
    }
    if (csvqe_cmd->parsed()) {
      const csvqe::ExperimentConfig config = load_config(csvqe_flags);
      const csvqe::CsvqeRunResult result = csvqe::run_csvqe(config);
      print_energy("e_vqe", result.vqe_energy);
      print_energy("e_csvqe", result.rows[result.best_index].energy);
      print_energy("e_fci", result.e_fci);
      std::printf("vqe_error     %.6e Ha\n", result.vqe_energy - result.e_fci);
      std::printf("csvqe_error   %.6e Ha\n", result.rows[result.best_index].error);
      std::printf("samples       %zu\n", result.rows.size());
      return 0;
    }
    if (selection_cmd->parsed()) {
      const csvqe::ExperimentConfig config = load_config(selection_flags);
      const csvqe::SelectionStudyResult result = csvqe::run_selection_study(config);
      std::printf("rows          %zu (circuit from optimization step %d)\n", result.rows.size(),
                  result.opt_step);
      print_energy("e_vqe", result.vqe_energy);
      print_energy("e_fci", result.e_fci);
      return 0;
    }
    if (trace_cmd->parsed()) {
      const csvqe::ExperimentConfig config = load_config(trace_flags);
      const csvqe::OptTraceStudyResult result = csvqe::run_opt_trace_study(config);
      std::printf("steps         %zu\n", result.rows.size());
      std::printf("final vqe_error   %.6e Ha\n", result.rows.back().vqe_error);
      std::printf("final csvqe_error %.6e Ha\n", result.rows.back().csvqe_errors.back());
      return 0;
    }
    if (minima_cmd->parsed()) {
      const csvqe::ExperimentConfig config = load_config(minima_flags);
      const csvqe::LocalMinimaStudyResult result = csvqe::run_local_minima_study(config);
      std::printf("trials        %zu\n", result.trials.size());
      std::printf("best trial    %d (vqe_error %.6e)\n", result.best_trial,
                  result.trials.front().vqe_error);
      std::printf("worst trial   %d (vqe_error %.6e)\n", result.worst_trial,
                  result.trials.back().vqe_error);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
