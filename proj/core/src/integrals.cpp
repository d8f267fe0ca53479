// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace csvqe {

namespace {

// triangular pair index over 0-based p >= q
std::uint64_t pair_index(int p, int q) {
  if (p < q) std::swap(p, q);
  return static_cast<std::uint64_t>(p) * (p + 1) / 2 + q;
}

std::uint64_t one_key(int p, int q) { return pair_index(p - 1, q - 1); }

std::uint64_t two_key(int p, int q, int r, int s) {
  const std::uint64_t pq = pair_index(p - 1, q - 1);
  const std::uint64_t rs = pair_index(r - 1, s - 1);
  const std::uint64_t hi = std::max(pq, rs);
  const std::uint64_t lo = std::min(pq, rs);
  return hi * (hi + 1) / 2 + lo;
}

}  // namespace

IntegralTable::IntegralTable(int n_orbitals, int n_electrons, int ms2, double core_energy)
    : n_orbitals_(n_orbitals), n_electrons_(n_electrons), ms2_(ms2), core_energy_(core_energy) {
  if (n_orbitals_ < 1 || n_orbitals_ > 64)
    throw std::invalid_argument("IntegralTable: n_orbitals must be in [1, 64]");
  if (n_electrons_ < 1) throw std::invalid_argument("IntegralTable: n_electrons must be at least 1");
  if (n_electrons_ > 2 * n_orbitals_)
    throw std::invalid_argument("IntegralTable: n_electrons exceeds 2 * n_orbitals");
}

void IntegralTable::check_range(int index) const {
  if (index < 1 || index > n_orbitals_)
    throw std::out_of_range("IntegralTable: orbital index out of range");
}

void IntegralTable::set_one_electron(int p, int q, double value) {
  check_range(p);
  check_range(q);
  one_electron_[one_key(p, q)] = value;
}

void IntegralTable::set_two_electron(int p, int q, int r, int s, double value) {
  check_range(p);
  check_range(q);
  check_range(r);
  check_range(s);
  two_electron_[two_key(p, q, r, s)] = value;
}

double IntegralTable::one_electron(int p, int q) const {
  check_range(p);
  check_range(q);
  const auto it = one_electron_.find(one_key(p, q));
  return it == one_electron_.end() ? 0.0 : it->second;
}

double IntegralTable::two_electron(int p, int q, int r, int s) const {
  check_range(p);
  check_range(q);
  check_range(r);
  check_range(s);
  const auto it = two_electron_.find(two_key(p, q, r, s));
  return it == two_electron_.end() ? 0.0 : it->second;
}

Determinant IntegralTable::hf_determinant() const {
  if (n_electrons_ % 2 != 0)
    throw std::runtime_error("IntegralTable: unsupported system, odd electron count is not closed-shell");
  const int nocc = n_electrons_ / 2;
  const std::uint64_t mask = nocc == 0 ? 0 : ((std::uint64_t{1} << nocc) - 1);
  return Determinant{mask, mask};
}

double IntegralTable::hf_energy() const {
  if (n_electrons_ % 2 != 0)
    throw std::runtime_error("IntegralTable: unsupported system, odd electron count is not closed-shell");
  const int nocc = n_electrons_ / 2;
  double e = core_energy_;
  for (int i = 1; i <= nocc; ++i) e += 2.0 * one_electron(i, i);
  for (int i = 1; i <= nocc; ++i)
    for (int j = 1; j <= nocc; ++j)
      e += 2.0 * two_electron(i, i, j, j) - two_electron(i, j, j, i);
  return e;
}

namespace {

struct HeaderFields {
  long norb = -1;
  long nelec = -1;
  long ms2_value = -1;
  bool has_ms2 = false;
};

// Parse KEY=value pairs from the namelist text; ORBSYM/ISYM and any other
// keys are accepted and ignored.
void scan_header(const std::string& text, HeaderFields& fields) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && !std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string key = text.substr(start, pos - start);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != '=') continue;
    ++pos;
    std::size_t vstart = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != '=' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string value = text.substr(vstart, pos - vstart);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (key != "NORB" && key != "NELEC" && key != "MS2") continue;
    long parsed = 0;
    try {
      std::size_t used = 0;
      parsed = std::stol(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::runtime_error("fcidump parse error: non-numeric value for " + key);
    }
    if (key == "NORB") fields.norb = parsed;
    if (key == "NELEC") fields.nelec = parsed;
    if (key == "MS2") {
      fields.ms2_value = parsed;
      fields.has_ms2 = true;
    }
  }
}

bool header_terminator(const std::string& line, std::size_t& end_pos) {
  const std::size_t amp = line.find("&END");
  if (amp != std::string::npos) {
    end_pos = amp;
    return true;
  }
  const std::size_t slash = line.find('/');
  if (slash != std::string::npos) {
    end_pos = slash;
    return true;
  }
  return false;
}

}  // namespace

IntegralTable IntegralTable::parse_fcidump(std::istream& in) {
  std::string line;
  std::string header;
  int line_number = 0;
  bool terminated = false;
  while (std::getline(in, line)) {
    ++line_number;
    std::size_t end_pos = 0;
    if (header_terminator(line, end_pos)) {
      header += line.substr(0, end_pos);
      terminated = true;
      break;
    }
    header += line;
    header += ' ';
  }
  if (!terminated) throw std::runtime_error("fcidump parse error: missing header terminator");

  HeaderFields fields;
  scan_header(header, fields);
  if (fields.norb < 0) throw std::runtime_error("fcidump parse error: missing NORB");
  if (fields.nelec < 0) throw std::runtime_error("fcidump parse error: missing NELEC");
  if (!fields.has_ms2) throw std::runtime_error("fcidump parse error: missing MS2");
  if (fields.ms2_value != 0)
    throw std::runtime_error("fcidump: unsupported system, MS2 must be 0 (closed-shell only)");

  IntegralTable table(static_cast<int>(fields.norb), static_cast<int>(fields.nelec), 0);

  const auto record_error = [&](const std::string& what) {
    return std::runtime_error("fcidump parse error: line " + std::to_string(line_number) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ss(line);
    double value = 0.0;
    long i = 0, j = 0, k = 0, l = 0;
    if (!(ss >> value >> i >> j >> k >> l)) throw record_error("non-numeric field");
    std::string rest;
    if (ss >> rest) throw record_error("trailing data");
    for (long idx : {i, j, k, l}) {
      if (idx < 0 || idx > fields.norb) throw record_error("index out of [0, NORB]");
    }
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      table.set_core_energy(value);
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0) throw record_error("unrecognized index pattern");
      table.set_one_electron(static_cast<int>(i), static_cast<int>(j), value);
    } else if (i != 0 && j != 0 && k != 0 && l != 0) {
      table.set_two_electron(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k),
                             static_cast<int>(l), value);
    } else {
      throw record_error("unrecognized index pattern");
    }
  }
  return table;
}

IntegralTable IntegralTable::parse_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fcidump: cannot open " + path);
  return parse_fcidump(in);
}

void IntegralTable::write_fcidump(std::ostream& out) const {
  out << "&FCI NORB=" << n_orbitals_ << ",NELEC=" << n_electrons_ << ",MS2=" << ms2_ << ",\n";
  out << " ISYM=1,\n";
  out << "&END\n";
  char buf[128];
  // canonical order: two-electron, one-electron, core
  for (int p = 1; p <= n_orbitals_; ++p)
    for (int q = 1; q <= p; ++q)
      for (int r = 1; r <= p; ++r)
        for (int s = 1; s <= (r == p ? q : r); ++s) {
          const auto it = two_electron_.find(two_key(p, q, r, s));
          if (it == two_electron_.end()) continue;
          std::snprintf(buf, sizeof(buf), " %.16e %3d %3d %3d %3d\n", it->second, p, q, r, s);
          out << buf;
        }
  for (int p = 1; p <= n_orbitals_; ++p)
    for (int q = 1; q <= p; ++q) {
      const auto it = one_electron_.find(one_key(p, q));
      if (it == one_electron_.end()) continue;
      std::snprintf(buf, sizeof(buf), " %.16e %3d %3d %3d %3d\n", it->second, p, q, 0, 0);
      out << buf;
    }
  std::snprintf(buf, sizeof(buf), " %.16e %3d %3d %3d %3d\n", core_energy_, 0, 0, 0, 0);
  out << buf;
}

}  // namespace csvqe
