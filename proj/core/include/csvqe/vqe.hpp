// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "csvqe/hamiltonian.hpp"
#include "csvqe/ucc.hpp"

namespace csvqe {

struct OptimizerSettings {
  double grad_tol = 1e-6;
  int max_iter = 200;
  double fd_step = 1e-6;
};

struct TraceStep {
  std::vector<double> theta;
  double energy = 0.0;
};

/// Angles and energy at the starting point and after every accepted
/// line-search step of the optimizer.
struct OptimizationTrace {
  std::vector<TraceStep> steps;
  bool converged = false;
  int iterations = 0;

  [[nodiscard]] const TraceStep& best() const;
};

/// Energy of the full circuit evaluated at the given angles.
double energy_objective(const HamiltonianContext& ctx, const UccCircuit& circuit,
                        const std::vector<double>& theta);

/// Central-difference gradient of an arbitrary objective.
std::vector<double> gradient_fd(const std::function<double(const std::vector<double>&)>& objective,
                                const std::vector<double>& theta, double step);

std::vector<double> gradient_fd(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                const std::vector<double>& theta, double step = 1e-6);

/// Quasi-Newton minimization (BFGS inverse-Hessian update, backtracking
/// line search with an Armijo sufficient-decrease condition).  Deterministic
/// given (theta0, settings); records only accepted iterates.
OptimizationTrace optimize(const HamiltonianContext& ctx, const UccCircuit& circuit,
                           const std::vector<double>& theta0, const OptimizerSettings& settings = {});

OptimizationTrace optimize_objective(const std::function<double(const std::vector<double>&)>& objective,
                                     const std::vector<double>& theta0,
                                     const OptimizerSettings& settings);

/// n angles i.i.d. uniform on [-scale, scale), deterministic given the seed.
std::vector<double> random_init(std::size_t n, std::uint64_t seed, double scale);

/// Trace file: one line per step, "step_index energy theta_1 ... theta_N".
void write_trace(std::ostream& out, const OptimizationTrace& trace);
OptimizationTrace read_trace(std::istream& in);

}  // namespace csvqe
