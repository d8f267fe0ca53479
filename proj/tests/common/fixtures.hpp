// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "csvqe/integrals.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(CSVQE_DATA_DIR) + "/" + name;
}

inline csvqe::IntegralTable load_table(const std::string& name) {
  return csvqe::IntegralTable::parse_fcidump_file(data_path(name));
}

// manifest entry for one fixture, by file name
inline nlohmann::json manifest_entry(const std::string& file) {
  std::ifstream in(data_path("manifest.json"));
  if (!in) throw std::runtime_error("missing data/manifest.json");
  nlohmann::json manifest;
  in >> manifest;
  for (const auto& entry : manifest.at("fixtures")) {
    if (entry.at("file") == file) return entry;
  }
  throw std::runtime_error("fixture not in manifest: " + file);
}

}  // namespace fixtures
