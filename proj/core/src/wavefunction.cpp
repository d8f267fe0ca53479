// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace csvqe {

SparseWavefunction SparseWavefunction::single(const Determinant& d, double amplitude) {
  SparseWavefunction psi;
  if (amplitude != 0.0) psi.terms_.emplace_back(d, amplitude);
  return psi;
}

SparseWavefunction SparseWavefunction::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  SparseWavefunction psi;
  psi.terms_.reserve(terms.size());
  for (const auto& [det, amp] : terms) {
    if (!psi.terms_.empty() && psi.terms_.back().first == det) {
      psi.terms_.back().second += amp;
      if (psi.terms_.back().second == 0.0) psi.terms_.pop_back();
      continue;
    }
    if (amp != 0.0) psi.terms_.emplace_back(det, amp);
  }
  if (!psi.terms_.empty()) {
    const int na = psi.terms_.front().first.n_alpha();
    const int nb = psi.terms_.front().first.n_beta();
    for (const auto& [det, amp] : psi.terms_) {
      if (det.n_alpha() != na || det.n_beta() != nb)
        throw std::invalid_argument("SparseWavefunction: mixed electron sectors");
    }
  }
  return psi;
}

double SparseWavefunction::amplitude(const Determinant& d) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), d,
                                   [](const Term& t, const Determinant& key) { return t.first < key; });
  if (it == terms_.end() || !(it->first == d)) return 0.0;
  return it->second;
}

double SparseWavefunction::norm2() const noexcept {
  double s = 0.0;
  for (const auto& [det, amp] : terms_) s += amp * amp;
  return s;
}

std::pair<int, int> SparseWavefunction::electron_counts() const noexcept {
  if (terms_.empty()) return {0, 0};
  return {terms_.front().first.n_alpha(), terms_.front().first.n_beta()};
}

SparseWavefunction SparseWavefunction::scaled(double factor) const {
  SparseWavefunction out;
  if (factor == 0.0) return out;
  out.terms_ = terms_;
  for (auto& [det, amp] : out.terms_) amp *= factor;
  return out;
}

double inner_product(const SparseWavefunction& a, const SparseWavefunction& b) {
  if (a.empty() || b.empty()) return 0.0;
  if (a.electron_counts() != b.electron_counts())
    throw std::invalid_argument("inner_product: mismatched electron sectors");
  double s = 0.0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

SparseWavefunction truncate(const SparseWavefunction& psi, std::size_t n_wf) {
  if (n_wf == 0) throw std::invalid_argument("truncate: n_wf must be at least 1");
  if (psi.size() <= n_wf) return psi;
  std::vector<SparseWavefunction::Term> terms = psi.terms();
  // magnitude descending, ties keep the lexicographically smaller determinant
  std::nth_element(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(n_wf) - 1, terms.end(),
                   [](const auto& x, const auto& y) {
                     const double ax = std::abs(x.second), ay = std::abs(y.second);
                     if (ax != ay) return ax > ay;
                     return x.first < y.first;
                   });
  terms.resize(n_wf);
  return SparseWavefunction::from_terms(std::move(terms));
}

void write_wavefunction(std::ostream& out, const SparseWavefunction& psi) {
  std::vector<SparseWavefunction::Term> terms = psi.terms();
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    const double ax = std::abs(x.second), ay = std::abs(y.second);
    if (ax != ay) return ax > ay;
    return x.first < y.first;
  });
  char buf[96];
  for (const auto& [det, amp] : terms) {
    std::snprintf(buf, sizeof(buf), "%llx %llx %.17g\n",
                  static_cast<unsigned long long>(det.alpha),
                  static_cast<unsigned long long>(det.beta), amp);
    out << buf;
  }
}

SparseWavefunction read_wavefunction(std::istream& in) {
  std::vector<SparseWavefunction::Term> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string ahex, bhex;
    double amp = 0.0;
    if (!(ss >> ahex >> bhex >> amp))
      throw std::runtime_error("read_wavefunction: malformed line: " + line);
    Determinant d{std::stoull(ahex, nullptr, 16), std::stoull(bhex, nullptr, 16)};
    terms.emplace_back(d, amp);
  }
  return SparseWavefunction::from_terms(std::move(terms));
}

}  // namespace csvqe
