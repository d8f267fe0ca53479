// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csvqe/experiments.hpp"
#include "fixtures.hpp"

using csvqe::ExperimentConfig;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "csvqe_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_config(const std::filesystem::path& dir, const std::string& body) {
  const auto path = dir / "config.ini";
  std::ofstream out(path);
  out << body;
  return path.string();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig h2_config(const std::filesystem::path& dir, const std::string& extra) {
  const std::string body = "fcidump = " + fixtures::data_path("h2_631g.fcidump") +
                           "\n"
                           "seed = 42\n"
                           "out_dir = " +
                           (dir / "out").string() +
                           "\n"
                           "[circuit]\n"
                           "n_wf = 30000\n" +
                           extra;
  return ExperimentConfig::load(write_config(dir, body));
}

}  // namespace

TEST_CASE("config parsing, defaults, and validation") {
  const auto dir = scratch_dir("config");
  const std::string path = write_config(dir,
                                        "fcidump = " + fixtures::data_path("h2_sto3g.fcidump") +
                                            "\n"
                                            "seed = 7\n"
                                            "threads = 2\n"
                                            "# comment line\n"
                                            "[circuit]\n"
                                            "max_doubles = 10\n"
                                            "include_singles = false\n"
                                            "[opt_trace_study]\n"
                                            "m_values = 4, 12, full\n"
                                            "n_samples = 50\n");
  const ExperimentConfig config = ExperimentConfig::load(path);
  CHECK(config.seed == 7);
  CHECK(config.threads == 2);
  CHECK(config.max_doubles == 10);
  CHECK(!config.include_singles);
  CHECK(config.trace_m_values == std::vector<int>{4, 12, csvqe::kFullSubspace});
  CHECK(config.trace_n_samples == 50);
  CHECK(config.n_wf == 50000);        // default
  CHECK(config.lm_n_wf == 30000);     // default
  CHECK(config.lm_n_trials == 30);    // default
  CHECK(config.lm_n_samples == 10000);  // default
  config.validate();

  // missing seed rejected
  const std::string no_seed =
      write_config(scratch_dir("config2"), "fcidump = " + fixtures::data_path("h2_sto3g.fcidump") + "\n");
  CHECK_THROWS_WITH_AS(ExperimentConfig::load(no_seed).validate(), doctest::Contains("seed"),
                       std::runtime_error);

  // missing file rejected
  ExperimentConfig bad = config;
  bad.fcidump_path = "/nonexistent/file.fcidump";
  CHECK_THROWS_AS(bad.validate(), std::runtime_error);

  // unknown keys rejected
  const std::string unknown = write_config(scratch_dir("config3"), "bogus = 1\n");
  CHECK_THROWS_WITH_AS(ExperimentConfig::load(unknown), doctest::Contains("unknown key"),
                       std::runtime_error);
}

TEST_CASE("selection study rows and the final-state guarantee") {
  const auto dir = scratch_dir("selection");
  ExperimentConfig config = h2_config(dir,
                                      "[selection_study]\n"
                                      "m_values = 2, 4\n"
                                      "n_samples = 40\n");
  config.validate();
  const csvqe::SelectionStudyResult result = run_selection_study(config);

  // one vqe baseline row plus 4 rows per m
  CHECK(result.rows.size() == 1 + 2 * 4);
  CHECK(result.rows[0].strategy == "vqe");
  const double vqe_error = result.rows[0].error;
  int random_rows = 0;
  for (const auto& row : result.rows) {
    CHECK(row.error <= vqe_error + 1e-10);
    CHECK(std::abs((row.energy - result.e_fci) - row.error) < 1e-12);
    if (row.strategy == "random_best") ++random_rows;
  }
  CHECK(random_rows == 2);

  // files exist and are well-formed
  CHECK(std::filesystem::exists(dir / "out" / "selection_study.csv"));
  const std::string csv = slurp(dir / "out" / "selection_study.csv");
  CHECK(csv.rfind("strategy,m,energy,error\n", 0) == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "selection_study_manifest.json"));
  CHECK(manifest["seed"] == 42);
  CHECK(manifest["derived"]["n_factors"] == result.n_factors);
}

TEST_CASE("opt trace study dominance per step") {
  const auto dir = scratch_dir("trace");
  ExperimentConfig config = h2_config(dir,
                                      "[optimizer]\n"
                                      "max_iter = 12\n"
                                      "[opt_trace_study]\n"
                                      "m_values = 4, full\n"
                                      "n_samples = 30\n");
  config.validate();
  const csvqe::OptTraceStudyResult result = run_opt_trace_study(config);
  REQUIRE(!result.rows.empty());
  CHECK(result.rows.front().step == 0);
  CHECK(result.m_values.back() == result.n_factors + 1);
  for (const auto& row : result.rows) {
    for (const double err : row.csvqe_errors) CHECK(err <= row.vqe_error + 1e-10);
  }
  CHECK(std::filesystem::exists(dir / "out" / "opt_trace.csv"));
  const std::string csv = slurp(dir / "out" / "opt_trace.csv");
  CHECK(csv.rfind("step,vqe_error,csvqe_error_m4,csvqe_error_full\n", 0) == 0);
}

TEST_CASE("local minima study ordering and traces") {
  const auto dir = scratch_dir("minima");
  ExperimentConfig config = h2_config(dir,
                                      "[optimizer]\n"
                                      "max_iter = 40\n"
                                      "[local_minima_study]\n"
                                      "n_trials = 4\n"
                                      "m_values = 4, 8\n"
                                      "n_samples = 60\n"
                                      "n_wf = 30000\n");
  config.validate();
  const csvqe::LocalMinimaStudyResult result = run_local_minima_study(config);
  REQUIRE(result.trials.size() == 4);
  for (std::size_t i = 1; i < result.trials.size(); ++i)
    CHECK(result.trials[i - 1].vqe_error <= result.trials[i].vqe_error);
  CHECK(result.best_trial == result.trials.front().trial);
  CHECK(result.worst_trial == result.trials.back().trial);
  REQUIRE(!result.best_trace.empty());
  REQUIRE(!result.worst_trace.empty());
  for (const auto& row : result.worst_trace)
    for (const double err : row.csvqe_errors) CHECK(err <= row.vqe_error + 1e-10);
  CHECK(std::filesystem::exists(dir / "out" / "local_minima.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "local_minima_trace_best.csv"));
  CHECK(std::filesystem::exists(dir / "out" / "local_minima_trace_worst.csv"));
}

TEST_CASE("csvqe run emits one row per sample with the sampled indices") {
  const auto dir = scratch_dir("csvqe_run");
  ExperimentConfig config = h2_config(dir,
                                      "[csvqe]\n"
                                      "strategy = random\n"
                                      "m = 4\n"
                                      "n_samples = 25\n");
  config.validate();
  const csvqe::CsvqeRunResult result = run_csvqe(config);
  CHECK(result.rows.size() == 25);
  for (const auto& row : result.rows) {
    CHECK(row.m == 4);
    CHECK(row.indices.size() == 4);
    CHECK(row.indices.back() == result.n_factors);
    CHECK(row.retained_rank >= 1);
    CHECK(row.energy <= result.vqe_energy + 1e-10);
  }
  const std::string csv = slurp(dir / "out" / "csvqe_samples.csv");
  CHECK(csv.rfind("sample_index,m,indices,energy,error,retained_rank\n", 0) == 0);
}

TEST_CASE("study reruns are byte-identical, including threaded runs") {
  const auto dir_a = scratch_dir("det_a");
  const auto dir_b = scratch_dir("det_b");
  const auto dir_c = scratch_dir("det_c");
  const std::string study =
      "[optimizer]\n"
      "max_iter = 8\n"
      "[opt_trace_study]\n"
      "m_values = 4\n"
      "n_samples = 25\n"
      "[local_minima_study]\n"
      "n_trials = 3\n"
      "m_values = 4\n"
      "n_samples = 40\n"
      "n_wf = 30000\n";

  ExperimentConfig a = h2_config(dir_a, study);
  ExperimentConfig b = h2_config(dir_b, study);
  ExperimentConfig c = h2_config(dir_c, study);
  c.threads = 4;
  a.validate();
  b.validate();
  c.validate();

  run_opt_trace_study(a);
  run_opt_trace_study(b);
  run_opt_trace_study(c);
  CHECK(slurp(dir_a / "out" / "opt_trace.csv") == slurp(dir_b / "out" / "opt_trace.csv"));
  CHECK(slurp(dir_a / "out" / "opt_trace.csv") == slurp(dir_c / "out" / "opt_trace.csv"));

  run_local_minima_study(a);
  run_local_minima_study(c);
  CHECK(slurp(dir_a / "out" / "local_minima.csv") == slurp(dir_c / "out" / "local_minima.csv"));
}
