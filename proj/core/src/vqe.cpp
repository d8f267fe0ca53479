// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/vqe.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace csvqe {

const TraceStep& OptimizationTrace::best() const {
  if (steps.empty()) throw std::logic_error("OptimizationTrace: empty trace");
  const TraceStep* best = &steps.front();
  for (const TraceStep& s : steps)
    if (s.energy < best->energy) best = &s;
  return *best;
}

double energy_objective(const HamiltonianContext& ctx, const UccCircuit& circuit,
                        const std::vector<double>& theta) {
  if (theta.size() != circuit.size())
    throw std::invalid_argument("energy_objective: angle vector size mismatch");
  const UccCircuit at_theta = circuit.with_thetas(theta);
  return ctx.rayleigh_quotient(prefix_state(at_theta, at_theta.size()));
}

std::vector<double> gradient_fd(const std::function<double(const std::vector<double>&)>& objective,
                                const std::vector<double>& theta, double step) {
  if (step <= 0.0) throw std::invalid_argument("gradient_fd: step must be positive");
  std::vector<double> grad(theta.size());
  std::vector<double> probe = theta;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    probe[k] = theta[k] + step;
    const double plus = objective(probe);
    probe[k] = theta[k] - step;
    const double minus = objective(probe);
    probe[k] = theta[k];
    grad[k] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

std::vector<double> gradient_fd(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                const std::vector<double>& theta, double step) {
  return gradient_fd(
      [&](const std::vector<double>& t) { return energy_objective(ctx, circuit, t); }, theta, step);
}

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

OptimizationTrace optimize_objective(const std::function<double(const std::vector<double>&)>& objective,
                                     const std::vector<double>& theta0,
                                     const OptimizerSettings& settings) {
  const std::size_t n = theta0.size();
  std::vector<double> x = theta0;
  double fx = objective(x);
  if (!std::isfinite(fx))
    throw std::invalid_argument("optimize: objective is not finite at the starting point");

  OptimizationTrace trace;
  trace.steps.push_back({x, fx});
  if (n == 0) {
    trace.converged = true;
    return trace;
  }

  std::vector<double> g = gradient_fd(objective, x, settings.fd_step);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
  constexpr double armijo_c1 = 1e-4;

  for (int it = 0; it < settings.max_iter; ++it) {
    if (norm(g) <= settings.grad_tol) {
      trace.converged = true;
      break;
    }
    const Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(n));
    Eigen::VectorXd p = -(h_inv * gv);
    double gtp = gv.dot(p);
    if (gtp >= 0.0) {
      h_inv.setIdentity();
      p = -gv;
      gtp = gv.dot(p);
    }

    double alpha = 1.0;
    double fnew = fx;
    std::vector<double> xnew(n);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t k = 0; k < n; ++k) xnew[k] = x[k] + alpha * p(static_cast<Eigen::Index>(k));
      fnew = objective(xnew);
      if (std::isfinite(fnew) && fnew <= fx + armijo_c1 * alpha * gtp) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // line search exhausted; report unconverged

    std::vector<double> gnew = gradient_fd(objective, xnew, settings.fd_step);
    Eigen::VectorXd s(static_cast<Eigen::Index>(n)), y(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      s(static_cast<Eigen::Index>(k)) = xnew[k] - x[k];
      y(static_cast<Eigen::Index>(k)) = gnew[k] - g[k];
    }
    const double ys = y.dot(s);
    if (ys > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / ys;
      const Eigen::MatrixXd identity =
          Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      h_inv = (identity - rho * s * y.transpose()) * h_inv * (identity - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }

    x = std::move(xnew);
    fx = fnew;
    g = std::move(gnew);
    trace.steps.push_back({x, fx});
    trace.iterations = it + 1;
  }
  if (!trace.converged) trace.converged = norm(g) <= settings.grad_tol;
  return trace;
}

OptimizationTrace optimize(const HamiltonianContext& ctx, const UccCircuit& circuit,
                           const std::vector<double>& theta0, const OptimizerSettings& settings) {
  if (theta0.size() != circuit.size())
    throw std::invalid_argument("optimize: angle vector size mismatch");
  return optimize_objective(
      [&](const std::vector<double>& t) { return energy_objective(ctx, circuit, t); }, theta0,
      settings);
}

std::vector<double> random_init(std::size_t n, std::uint64_t seed, double scale) {
  if (scale <= 0.0) throw std::invalid_argument("random_init: scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> out(n);
  for (double& x : out) x = dist(rng);
  return out;
}

void write_trace(std::ostream& out, const OptimizationTrace& trace) {
  char buf[48];
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    out << i;
    std::snprintf(buf, sizeof(buf), " %.17g", trace.steps[i].energy);
    out << buf;
    for (const double t : trace.steps[i].theta) {
      std::snprintf(buf, sizeof(buf), " %.17g", t);
      out << buf;
    }
    out << '\n';
  }
}

OptimizationTrace read_trace(std::istream& in) {
  OptimizationTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ss(line);
    std::size_t index = 0;
    TraceStep step;
    if (!(ss >> index >> step.energy))
      throw std::runtime_error("trace: malformed line: " + line);
    double theta = 0.0;
    while (ss >> theta) step.theta.push_back(theta);
    trace.steps.push_back(std::move(step));
  }
  trace.iterations = trace.steps.empty() ? 0 : static_cast<int>(trace.steps.size()) - 1;
  return trace;
}

}  // namespace csvqe
