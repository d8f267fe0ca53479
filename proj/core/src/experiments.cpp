// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "csvqe/fci.hpp"
#include "csvqe/integrals.hpp"
#include "csvqe/parallel.hpp"
#include "csvqe/rng.hpp"

namespace csvqe {

namespace {

// ---------------------------------------------------------------------------
// config file parsing

std::string trim(const std::string& s) {
  const std::size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const std::size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::runtime_error("config: bad boolean for " + key + ": " + value);
}

std::vector<int> parse_m_values(const std::string& value, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "full") {
      out.push_back(kFullSubspace);
      continue;
    }
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::runtime_error("config: bad integer in " + key + ": " + item);
    }
  }
  if (out.empty()) throw std::runtime_error("config: empty list for " + key);
  return out;
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
  std::istringstream ss(value);
  T parsed{};
  if (!(ss >> parsed)) throw std::runtime_error("config: bad value for " + key + ": " + value);
  std::string rest;
  if (ss >> rest) throw std::runtime_error("config: trailing data for " + key + ": " + value);
  return parsed;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  ExperimentConfig config;
  std::string section;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config: malformed section at line " + std::to_string(line_number));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value at line " + std::to_string(line_number));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full_key = section.empty() ? key : section + "." + key;

    if (full_key == "fcidump") {
      config.fcidump_path = value;
    } else if (full_key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, full_key);
      config.seed_set = true;
    } else if (full_key == "threads") {
      config.threads = parse_number<int>(value, full_key);
    } else if (full_key == "out_dir") {
      config.out_dir = value;
    } else if (full_key == "gep_threshold") {
      config.gep_threshold = parse_number<double>(value, full_key);
    } else if (full_key == "circuit.max_doubles") {
      config.max_doubles = parse_number<int>(value, full_key);
    } else if (full_key == "circuit.include_singles") {
      config.include_singles = parse_bool(value, full_key);
    } else if (full_key == "circuit.n_wf") {
      config.n_wf = parse_number<std::size_t>(value, full_key);
    } else if (full_key == "optimizer.grad_tol") {
      config.optimizer.grad_tol = parse_number<double>(value, full_key);
    } else if (full_key == "optimizer.max_iter") {
      config.optimizer.max_iter = parse_number<int>(value, full_key);
    } else if (full_key == "optimizer.fd_step") {
      config.optimizer.fd_step = parse_number<double>(value, full_key);
    } else if (full_key == "selection_study.m_values") {
      config.selection_m_values = parse_m_values(value, full_key);
    } else if (full_key == "selection_study.n_samples") {
      config.selection_n_samples = parse_number<std::size_t>(value, full_key);
    } else if (full_key == "opt_trace_study.m_values") {
      config.trace_m_values = parse_m_values(value, full_key);
    } else if (full_key == "opt_trace_study.n_samples") {
      config.trace_n_samples = parse_number<std::size_t>(value, full_key);
    } else if (full_key == "local_minima_study.n_trials") {
      config.lm_n_trials = parse_number<int>(value, full_key);
    } else if (full_key == "local_minima_study.m_values") {
      config.lm_m_values = parse_m_values(value, full_key);
    } else if (full_key == "local_minima_study.n_samples") {
      config.lm_n_samples = parse_number<std::size_t>(value, full_key);
    } else if (full_key == "local_minima_study.n_wf") {
      config.lm_n_wf = parse_number<std::size_t>(value, full_key);
    } else if (full_key == "local_minima_study.init_scale") {
      config.lm_init_scale = parse_number<double>(value, full_key);
    } else if (full_key == "csvqe.strategy") {
      config.csvqe_strategy = value;
    } else if (full_key == "csvqe.m") {
      config.csvqe_m = parse_number<int>(value, full_key);
    } else if (full_key == "csvqe.n_samples") {
      config.csvqe_n_samples = parse_number<std::size_t>(value, full_key);
    } else {
      throw std::runtime_error("config: unknown key " + full_key + " at line " +
                               std::to_string(line_number));
    }
  }
  return config;
}

void ExperimentConfig::validate() const {
  if (fcidump_path.empty()) throw std::runtime_error("config: fcidump path is required");
  if (!std::filesystem::exists(fcidump_path))
    throw std::runtime_error("config: fcidump file does not exist: " + fcidump_path);
  if (!seed_set) throw std::runtime_error("config: seed is required (no wall-clock seeding)");
  if (threads < 1) throw std::runtime_error("config: threads must be positive");
  if (n_wf == 0 || lm_n_wf == 0) throw std::runtime_error("config: n_wf must be positive");
  if (max_doubles < 0) throw std::runtime_error("config: max_doubles must be non-negative");
  if (optimizer.max_iter < 1) throw std::runtime_error("config: max_iter must be positive");
  if (optimizer.grad_tol <= 0 || optimizer.fd_step <= 0)
    throw std::runtime_error("config: optimizer tolerances must be positive");
  if (selection_n_samples == 0 || trace_n_samples == 0 || lm_n_samples == 0 ||
      csvqe_n_samples == 0)
    throw std::runtime_error("config: sample counts must be positive");
  if (lm_n_trials < 1) throw std::runtime_error("config: n_trials must be positive");
  if (lm_init_scale <= 0) throw std::runtime_error("config: init_scale must be positive");
  if (gep_threshold <= 0) throw std::runtime_error("config: gep_threshold must be positive");
  for (const auto& values : {selection_m_values, trace_m_values, lm_m_values}) {
    for (const int m : values)
      if (m != kFullSubspace && m < 1) throw std::runtime_error("config: m values must be positive");
  }
  if (csvqe_m != kFullSubspace && csvqe_m < 1)
    throw std::runtime_error("config: csvqe m must be positive");
  if (csvqe_strategy != "even" && csvqe_strategy != "front_loaded" &&
      csvqe_strategy != "back_loaded" && csvqe_strategy != "random")
    throw std::runtime_error("config: unknown csvqe strategy " + csvqe_strategy);
}

namespace {

// ---------------------------------------------------------------------------
// shared study plumbing

struct StudySetup {
  IntegralTable table;
  double e_fci = 0.0;
  double e_hf = 0.0;

  explicit StudySetup(const ExperimentConfig& config)
      : table(IntegralTable::parse_fcidump_file(config.fcidump_path)) {
    e_fci = fci_ground_energy(table).energy;
    e_hf = table.hf_energy();
  }
};

UccCircuit mp2_circuit(const IntegralTable& table, const ExperimentConfig& config,
                       std::size_t n_wf) {
  return build_circuit(table, mp2_amplitudes(table), config.max_doubles, config.include_singles,
                       n_wf);
}

int resolve_m(int m, int n_factors) { return m == kFullSubspace ? n_factors + 1 : m; }

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string m_column_name(int raw_m) {
  return raw_m == kFullSubspace ? std::string("csvqe_error_full")
                                : "csvqe_error_m" + std::to_string(raw_m);
}

void write_text_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

nlohmann::ordered_json config_json(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["fcidump"] = config.fcidump_path;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  j["out_dir"] = config.out_dir;
  j["gep_threshold"] = config.gep_threshold;
  j["circuit"] = {{"max_doubles", config.max_doubles},
                  {"include_singles", config.include_singles},
                  {"n_wf", config.n_wf}};
  j["optimizer"] = {{"grad_tol", config.optimizer.grad_tol},
                    {"max_iter", config.optimizer.max_iter},
                    {"fd_step", config.optimizer.fd_step}};
  j["selection_study"] = {{"m_values", config.selection_m_values},
                          {"n_samples", config.selection_n_samples}};
  j["opt_trace_study"] = {{"m_values", config.trace_m_values},
                          {"n_samples", config.trace_n_samples}};
  j["local_minima_study"] = {{"n_trials", config.lm_n_trials},
                             {"m_values", config.lm_m_values},
                             {"n_samples", config.lm_n_samples},
                             {"n_wf", config.lm_n_wf},
                             {"init_scale", config.lm_init_scale}};
  j["csvqe"] = {{"strategy", config.csvqe_strategy},
                {"m", config.csvqe_m},
                {"n_samples", config.csvqe_n_samples}};
  return j;
}

void write_manifest(const ExperimentConfig& config, const std::string& study,
                    const std::vector<std::string>& outputs, const StudySetup& setup,
                    int n_factors) {
  if (config.out_dir.empty()) return;
  nlohmann::ordered_json j;
  j["study"] = study;
  j["version"] = "0.1.0";
  j["seed"] = config.seed;
  j["config"] = config_json(config);
  j["derived"] = {{"n_factors", n_factors},
                  {"e_hf", setup.e_hf},
                  {"e_fci", setup.e_fci}};
  j["outputs"] = outputs;
  write_text_file(config.out_dir, study + "_manifest.json", j.dump(2) + "\n");
}

}  // namespace

// ---------------------------------------------------------------------------
// studies

VqeRunResult run_vqe(const ExperimentConfig& config) {
  const StudySetup setup(config);
  const UccCircuit circuit = mp2_circuit(setup.table, config, config.n_wf);
  const HamiltonianContext ctx(setup.table);

  VqeRunResult result;
  result.e_fci = setup.e_fci;
  result.e_hf = setup.e_hf;
  result.n_factors = static_cast<int>(circuit.size());
  result.trace = optimize(ctx, circuit, circuit.thetas(), config.optimizer);

  if (!config.out_dir.empty()) {
    std::ostringstream trace_text;
    write_trace(trace_text, result.trace);
    write_text_file(config.out_dir, "vqe_trace.txt", trace_text.str());
    write_manifest(config, "vqe", {"vqe_trace.txt"}, setup, result.n_factors);
  }
  return result;
}

SelectionStudyResult run_selection_study(const ExperimentConfig& config) {
  const StudySetup setup(config);
  const UccCircuit circuit = mp2_circuit(setup.table, config, config.n_wf);
  const HamiltonianContext ctx(setup.table);
  const int n_factors = static_cast<int>(circuit.size());

  const OptimizationTrace trace = optimize(ctx, circuit, circuit.thetas(), config.optimizer);
  const int step = std::min<int>(1, static_cast<int>(trace.steps.size()) - 1);
  const UccCircuit studied = circuit.with_thetas(trace.steps[static_cast<std::size_t>(step)].theta);
  const std::vector<SparseWavefunction> states = prefix_states(studied);

  SelectionStudyResult result;
  result.e_fci = setup.e_fci;
  result.n_factors = n_factors;
  result.opt_step = step;
  result.vqe_energy = ctx.rayleigh_quotient(states.back());
  result.rows.push_back({"vqe", 1, result.vqe_energy, result.vqe_energy - setup.e_fci});

  const SubspaceMatrices matrices = build_subspace_matrices(ctx, studied, config.threads);
  for (const int raw_m : config.selection_m_values) {
    const int m = resolve_m(raw_m, n_factors);
    for (const auto& [kind, name] :
         {std::pair{SelectionKind::even, "even"}, {SelectionKind::front_loaded, "front_loaded"},
          {SelectionKind::back_loaded, "back_loaded"}}) {
      const std::vector<int> indices = select_states({kind, m}, n_factors);
      const GepSolution sol = solve_gep(extract_problem(matrices, indices), config.gep_threshold);
      result.rows.push_back({name, m, sol.energy, sol.energy - setup.e_fci});
    }
    const RandomSearchResult search =
        random_search(matrices, m, config.selection_n_samples,
                      derive_seed(config.seed, "selection-random", static_cast<std::uint64_t>(m)),
                      config.gep_threshold, config.threads);
    result.rows.push_back(
        {"random_best", m, search.best_energy(), search.best_energy() - setup.e_fci});
  }

  if (!config.out_dir.empty()) {
    std::string csv = "strategy,m,energy,error\n";
    for (const auto& row : result.rows) {
      csv += row.strategy + "," + std::to_string(row.m) + "," + format_value(row.energy) + "," +
             format_value(row.error) + "\n";
    }
    write_text_file(config.out_dir, "selection_study.csv", csv);
    write_manifest(config, "selection_study", {"selection_study.csv"}, setup, n_factors);
  }
  return result;
}

namespace {

// Best subspace error at each resolved M for one fixed-angle circuit; the
// prefix-state matrices are assembled once and shared across the M values.
std::vector<double> csvqe_errors_at(const HamiltonianContext& ctx, const UccCircuit& circuit,
                                    const std::vector<int>& raw_m_values, std::size_t n_samples,
                                    std::uint64_t seed, double threshold, double e_fci,
                                    int threads) {
  const int n_factors = static_cast<int>(circuit.size());
  const SubspaceMatrices matrices = build_subspace_matrices(ctx, circuit, threads);
  std::vector<double> errors;
  errors.reserve(raw_m_values.size());
  for (std::size_t mi = 0; mi < raw_m_values.size(); ++mi) {
    const int m = resolve_m(raw_m_values[mi], n_factors);
    if (m == n_factors + 1) {
      // the full set is the single deterministic sample
      std::vector<int> all(static_cast<std::size_t>(n_factors) + 1);
      for (int i = 0; i <= n_factors; ++i) all[static_cast<std::size_t>(i)] = i;
      const GepSolution sol = solve_gep(extract_problem(matrices, all), threshold);
      errors.push_back(sol.energy - e_fci);
    } else {
      const RandomSearchResult search =
          random_search(matrices, m, n_samples,
                        derive_seed(seed, "m", static_cast<std::uint64_t>(m)), threshold, threads);
      errors.push_back(search.best_energy() - e_fci);
    }
  }
  return errors;
}

std::string trace_csv_header(const std::vector<int>& raw_m_values) {
  std::string header = "step,vqe_error";
  for (const int raw_m : raw_m_values) header += "," + m_column_name(raw_m);
  header += "\n";
  return header;
}

std::string trace_csv_body(const std::vector<TraceStudyRow>& rows) {
  std::string body;
  for (const auto& row : rows) {
    body += std::to_string(row.step) + "," + format_value(row.vqe_error);
    for (const double e : row.csvqe_errors) body += "," + format_value(e);
    body += "\n";
  }
  return body;
}

}  // namespace

OptTraceStudyResult run_opt_trace_study(const ExperimentConfig& config) {
  const StudySetup setup(config);
  const UccCircuit circuit = mp2_circuit(setup.table, config, config.n_wf);
  const HamiltonianContext ctx(setup.table);
  const int n_factors = static_cast<int>(circuit.size());

  const OptimizationTrace trace = optimize(ctx, circuit, circuit.thetas(), config.optimizer);

  OptTraceStudyResult result;
  result.e_fci = setup.e_fci;
  result.n_factors = n_factors;
  for (const int raw_m : config.trace_m_values) result.m_values.push_back(resolve_m(raw_m, n_factors));

  result.rows.resize(trace.steps.size());
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const UccCircuit at_step = circuit.with_thetas(trace.steps[s].theta);
    TraceStudyRow row;
    row.step = static_cast<int>(s);
    row.vqe_error = trace.steps[s].energy - setup.e_fci;
    row.csvqe_errors = csvqe_errors_at(ctx, at_step, config.trace_m_values, config.trace_n_samples,
                                       derive_seed(config.seed, "trace-step", s),
                                       config.gep_threshold, setup.e_fci, config.threads);
    result.rows[s] = std::move(row);
  }

  if (!config.out_dir.empty()) {
    const std::string csv = trace_csv_header(config.trace_m_values) + trace_csv_body(result.rows);
    write_text_file(config.out_dir, "opt_trace.csv", csv);
    write_manifest(config, "opt_trace_study", {"opt_trace.csv"}, setup, n_factors);
  }
  return result;
}

LocalMinimaStudyResult run_local_minima_study(const ExperimentConfig& config) {
  const StudySetup setup(config);
  const UccCircuit circuit = mp2_circuit(setup.table, config, config.lm_n_wf);
  const HamiltonianContext ctx(setup.table);
  const int n_factors = static_cast<int>(circuit.size());

  LocalMinimaStudyResult result;
  result.e_fci = setup.e_fci;
  result.n_factors = n_factors;
  for (const int raw_m : config.lm_m_values) result.m_values.push_back(resolve_m(raw_m, n_factors));

  const auto n_trials = static_cast<std::size_t>(config.lm_n_trials);
  std::vector<LocalMinimaTrial> trials(n_trials);
  std::vector<OptimizationTrace> traces(n_trials);
  // trials are independent; the inner search stays serial when the trial
  // loop is parallel
  const int outer_threads = config.threads;
  const int inner_threads = outer_threads > 1 ? 1 : config.threads;
  parallel_for(n_trials, outer_threads, [&](std::size_t t) {
    const std::vector<double> theta0 =
        random_init(static_cast<std::size_t>(n_factors), derive_seed(config.seed, "lm-init", t),
                    config.lm_init_scale);
    traces[t] = optimize(ctx, circuit, theta0, config.optimizer);
    const TraceStep& last = traces[t].steps.back();
    LocalMinimaTrial trial;
    trial.trial = static_cast<int>(t);
    trial.vqe_energy = last.energy;
    trial.vqe_error = last.energy - setup.e_fci;
    const UccCircuit final_circuit = circuit.with_thetas(last.theta);
    trial.csvqe_errors = csvqe_errors_at(ctx, final_circuit, config.lm_m_values,
                                         config.lm_n_samples, derive_seed(config.seed, "lm-search", t),
                                         config.gep_threshold, setup.e_fci, inner_threads);
    trials[t] = std::move(trial);
  });

  std::sort(trials.begin(), trials.end(), [](const LocalMinimaTrial& a, const LocalMinimaTrial& b) {
    if (a.vqe_error != b.vqe_error) return a.vqe_error < b.vqe_error;
    return a.trial < b.trial;
  });
  result.trials = std::move(trials);
  result.best_trial = result.trials.front().trial;
  result.worst_trial = result.trials.back().trial;

  const auto trial_trace = [&](int t) {
    const OptimizationTrace& trace = traces[static_cast<std::size_t>(t)];
    std::vector<TraceStudyRow> rows(trace.steps.size());
    parallel_for(trace.steps.size(), config.threads, [&](std::size_t s) {
      const UccCircuit at_step = circuit.with_thetas(trace.steps[s].theta);
      TraceStudyRow row;
      row.step = static_cast<int>(s);
      row.vqe_error = trace.steps[s].energy - setup.e_fci;
      row.csvqe_errors = csvqe_errors_at(
          ctx, at_step, config.lm_m_values, config.lm_n_samples,
          derive_seed(config.seed, "lm-trace", static_cast<std::uint64_t>(t), s),
          config.gep_threshold, setup.e_fci, 1);
      rows[s] = std::move(row);
    });
    return rows;
  };
  result.best_trace = trial_trace(result.best_trial);
  result.worst_trace = trial_trace(result.worst_trial);

  if (!config.out_dir.empty()) {
    std::string csv = "rank,trial,vqe_energy,vqe_error";
    for (const int raw_m : config.lm_m_values) csv += "," + m_column_name(raw_m);
    csv += "\n";
    for (std::size_t rank = 0; rank < result.trials.size(); ++rank) {
      const LocalMinimaTrial& trial = result.trials[rank];
      csv += std::to_string(rank + 1) + "," + std::to_string(trial.trial) + "," +
             format_value(trial.vqe_energy) + "," + format_value(trial.vqe_error);
      for (const double e : trial.csvqe_errors) csv += "," + format_value(e);
      csv += "\n";
    }
    write_text_file(config.out_dir, "local_minima.csv", csv);
    write_text_file(config.out_dir, "local_minima_trace_best.csv",
                    trace_csv_header(config.lm_m_values) + trace_csv_body(result.best_trace));
    write_text_file(config.out_dir, "local_minima_trace_worst.csv",
                    trace_csv_header(config.lm_m_values) + trace_csv_body(result.worst_trace));
    write_manifest(config, "local_minima_study",
                   {"local_minima.csv", "local_minima_trace_best.csv",
                    "local_minima_trace_worst.csv"},
                   setup, n_factors);
  }
  return result;
}

CsvqeRunResult run_csvqe(const ExperimentConfig& config) {
  const StudySetup setup(config);
  const UccCircuit circuit = mp2_circuit(setup.table, config, config.n_wf);
  const HamiltonianContext ctx(setup.table);
  const int n_factors = static_cast<int>(circuit.size());

  const OptimizationTrace trace = optimize(ctx, circuit, circuit.thetas(), config.optimizer);
  const UccCircuit optimized = circuit.with_thetas(trace.steps.back().theta);

  CsvqeRunResult result;
  result.e_fci = setup.e_fci;
  result.n_factors = n_factors;
  result.vqe_energy = trace.steps.back().energy;

  const int m = resolve_m(config.csvqe_m, n_factors);
  if (config.csvqe_strategy == "random") {
    const RandomSearchResult search =
        random_search(ctx, optimized, m, config.csvqe_n_samples,
                      derive_seed(config.seed, "csvqe-samples"), config.gep_threshold,
                      config.threads);
    for (std::size_t k = 0; k < search.index_sets.size(); ++k) {
      result.rows.push_back({k, m, search.index_sets[k], search.energies[k],
                             search.energies[k] - setup.e_fci, search.retained_ranks[k]});
    }
    result.best_index = search.best_index;
  } else {
    SelectionKind kind = SelectionKind::even;
    if (config.csvqe_strategy == "front_loaded") kind = SelectionKind::front_loaded;
    if (config.csvqe_strategy == "back_loaded") kind = SelectionKind::back_loaded;
    const std::vector<int> indices = select_states({kind, m}, n_factors);
    const GepSolution sol =
        solve_gep(build_subspace_problem(ctx, optimized, indices), config.gep_threshold);
    result.rows.push_back({0, m, indices, sol.energy, sol.energy - setup.e_fci, sol.retained_rank});
    result.best_index = 0;
  }

  if (!config.out_dir.empty()) {
    std::string csv = "sample_index,m,indices,energy,error,retained_rank\n";
    for (const auto& row : result.rows) {
      std::string idx;
      for (std::size_t i = 0; i < row.indices.size(); ++i) {
        if (i) idx += ' ';
        idx += std::to_string(row.indices[i]);
      }
      csv += std::to_string(row.sample_index) + "," + std::to_string(row.m) + "," + idx + "," +
             format_value(row.energy) + "," + format_value(row.error) + "," +
             std::to_string(row.retained_rank) + "\n";
    }
    write_text_file(config.out_dir, "csvqe_samples.csv", csv);
    write_manifest(config, "csvqe", {"csvqe_samples.csv"}, setup, n_factors);
  }
  return result;
}

}  // namespace csvqe
