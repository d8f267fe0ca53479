// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "csvqe/ucc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace csvqe {

UccFactor make_single(SpinOrbital hole, SpinOrbital particle, double theta) {
  if (hole == particle) throw std::invalid_argument("UccFactor: repeated spin-orbital index");
  if (hole.spin != particle.spin)
    throw std::invalid_argument("UccFactor: excitation must conserve per-spin electron counts");
  UccFactor f;
  f.rank = 1;
  f.holes[0] = hole;
  f.particles[0] = particle;
  f.theta = theta;
  return f;
}

UccFactor make_double(SpinOrbital hole1, SpinOrbital hole2, SpinOrbital particle1,
                      SpinOrbital particle2, double theta) {
  const std::array<SpinOrbital, 4> all{hole1, hole2, particle1, particle2};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i] == all[j]) throw std::invalid_argument("UccFactor: repeated spin-orbital index");
  const auto alpha_count = [](SpinOrbital a, SpinOrbital b) {
    return static_cast<int>(a.spin == Spin::alpha) + static_cast<int>(b.spin == Spin::alpha);
  };
  if (alpha_count(hole1, hole2) != alpha_count(particle1, particle2))
    throw std::invalid_argument("UccFactor: excitation must conserve per-spin electron counts");
  UccFactor f;
  f.rank = 2;
  f.holes = {hole1, hole2};
  f.particles = {particle1, particle2};
  // canonicalize to ascending index lists; each swap reorders a fermionic
  // operator pair and flips the sign of the generator
  if (f.holes[1] < f.holes[0]) {
    std::swap(f.holes[0], f.holes[1]);
    theta = -theta;
  }
  if (f.particles[1] < f.particles[0]) {
    std::swap(f.particles[0], f.particles[1]);
    theta = -theta;
  }
  f.theta = theta;
  return f;
}

bool factor_lex_less(const UccFactor& a, const UccFactor& b) noexcept {
  const auto key = [](const UccFactor& f, std::size_t i) {
    return i < static_cast<std::size_t>(f.rank) ? f.holes[i].position() : 1000;
  };
  for (std::size_t i = 0; i < 2; ++i) {
    if (key(a, i) != key(b, i)) return key(a, i) < key(b, i);
  }
  const auto pkey = [](const UccFactor& f, std::size_t i) {
    return i < static_cast<std::size_t>(f.rank) ? f.particles[i].position() : 1000;
  };
  for (std::size_t i = 0; i < 2; ++i) {
    if (pkey(a, i) != pkey(b, i)) return pkey(a, i) < pkey(b, i);
  }
  return false;
}

bool same_excitation(const UccFactor& a, const UccFactor& b) noexcept {
  return a.rank == b.rank && a.holes == b.holes && a.particles == b.particles;
}

UccCircuit::UccCircuit(std::vector<UccFactor> factors, Determinant reference, std::size_t n_wf)
    : factors_(std::move(factors)), reference_(reference), n_wf_(n_wf) {
  if (n_wf_ == 0) throw std::invalid_argument("UccCircuit: n_wf must be at least 1");
}

std::vector<double> UccCircuit::thetas() const {
  std::vector<double> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = factors_[i].theta;
  return out;
}

UccCircuit UccCircuit::with_thetas(const std::vector<double>& thetas) const {
  if (thetas.size() != factors_.size())
    throw std::invalid_argument("UccCircuit: angle vector size mismatch");
  std::vector<UccFactor> factors = factors_;
  for (std::size_t i = 0; i < factors.size(); ++i) factors[i].theta = thetas[i];
  return UccCircuit(std::move(factors), reference_, n_wf_);
}

namespace {

std::vector<double> orbital_energies(const IntegralTable& t) {
  const int nocc = t.n_electrons() / 2;
  std::vector<double> eps(static_cast<std::size_t>(t.n_orbitals()));
  for (int p = 1; p <= t.n_orbitals(); ++p) {
    double e = t.one_electron(p, p);
    for (int j = 1; j <= nocc; ++j)
      e += 2.0 * t.two_electron(p, p, j, j) - t.two_electron(p, j, j, p);
    eps[static_cast<std::size_t>(p - 1)] = e;
  }
  return eps;
}

}  // namespace

std::vector<UccFactor> mp2_amplitudes(const IntegralTable& table) {
  if (table.n_electrons() % 2 != 0)
    throw std::runtime_error("mp2_amplitudes: unsupported system, odd electron count");
  const int nocc = table.n_electrons() / 2;
  const int norb = table.n_orbitals();
  const std::vector<double> eps = orbital_energies(table);

  const auto denominator = [&](int i, int j, int a, int b) {
    const double denom = eps[static_cast<std::size_t>(i)] + eps[static_cast<std::size_t>(j)] -
                         eps[static_cast<std::size_t>(a)] - eps[static_cast<std::size_t>(b)];
    if (std::abs(denom) < 1e-10) {
      char msg[160];
      std::snprintf(msg, sizeof(msg),
                    "mp2_amplitudes: degenerate denominator for excitation (%d,%d -> %d,%d)",
                    i + 1, j + 1, a + 1, b + 1);
      throw std::runtime_error(msg);
    }
    return denom;
  };

  std::vector<UccFactor> out;
  // same-spin pairs: antisymmetrized spatial amplitude
  for (const Spin spin : {Spin::alpha, Spin::beta}) {
    for (int i = 0; i < nocc; ++i)
      for (int j = i + 1; j < nocc; ++j)
        for (int a = nocc; a < norb; ++a)
          for (int b = a + 1; b < norb; ++b) {
            const double numer = table.two_electron(i + 1, a + 1, j + 1, b + 1) -
                                 table.two_electron(i + 1, b + 1, j + 1, a + 1);
            out.push_back(make_double({i, spin}, {j, spin}, {a, spin}, {b, spin},
                                      numer / denominator(i, j, a, b)));
          }
  }
  // mixed-spin pairs: the alpha hole pairs with the alpha particle, so every
  // ordered (occupied, occupied) x (virtual, virtual) combination is a
  // distinct excitation
  for (int i = 0; i < nocc; ++i)
    for (int j = 0; j < nocc; ++j)
      for (int a = nocc; a < norb; ++a)
        for (int b = nocc; b < norb; ++b) {
          const double numer = table.two_electron(i + 1, a + 1, j + 1, b + 1);
          out.push_back(make_double({i, Spin::alpha}, {j, Spin::beta}, {a, Spin::alpha},
                                    {b, Spin::beta}, numer / denominator(i, j, a, b)));
        }
  return out;
}

std::vector<UccFactor> single_excitations(const IntegralTable& table) {
  if (table.n_electrons() % 2 != 0)
    throw std::runtime_error("single_excitations: unsupported system, odd electron count");
  const int nocc = table.n_electrons() / 2;
  std::vector<UccFactor> out;
  for (const Spin spin : {Spin::alpha, Spin::beta}) {
    for (int i = 0; i < nocc; ++i)
      for (int a = nocc; a < table.n_orbitals(); ++a)
        out.push_back(make_single({i, spin}, {a, spin}, 0.0));
  }
  return out;
}

UccCircuit build_circuit(const IntegralTable& table, const std::vector<UccFactor>& amplitudes,
                         int max_doubles, bool include_singles, std::size_t n_wf) {
  std::vector<UccFactor> doubles;
  for (const UccFactor& f : amplitudes) {
    if (f.rank == 2) doubles.push_back(f);
  }
  std::sort(doubles.begin(), doubles.end(), [](const UccFactor& a, const UccFactor& b) {
    const double ma = std::abs(a.theta), mb = std::abs(b.theta);
    if (ma != mb) return ma > mb;
    return factor_lex_less(a, b);
  });
  if (max_doubles >= 0 && doubles.size() > static_cast<std::size_t>(max_doubles))
    doubles.resize(static_cast<std::size_t>(max_doubles));

  std::vector<UccFactor> factors = std::move(doubles);
  if (include_singles) {
    std::vector<UccFactor> singles = single_excitations(table);
    std::sort(singles.begin(), singles.end(), factor_lex_less);
    factors.insert(factors.end(), singles.begin(), singles.end());
  }
  if (factors.empty()) throw std::invalid_argument("build_circuit: empty circuit");
  // stable: equal-|theta| runs keep their lexicographic order, doubles first
  std::stable_sort(factors.begin(), factors.end(), [](const UccFactor& a, const UccFactor& b) {
    return std::abs(a.theta) > std::abs(b.theta);
  });
  return UccCircuit(std::move(factors), table.hf_determinant(), n_wf);
}

SparseWavefunction apply_factor(const SparseWavefunction& psi, const UccFactor& factor) {
  const double c = std::cos(factor.theta);
  const double s = std::sin(factor.theta);
  std::vector<SparseWavefunction::Term> terms;
  terms.reserve(2 * psi.size());
  for (const auto& [det, amp] : psi.terms()) {
    if (const auto fwd = apply_excitation(det, factor.hole_span(), factor.particle_span())) {
      terms.emplace_back(det, c * amp);
      terms.emplace_back(fwd->det, fwd->sign * s * amp);
    } else if (const auto rev = apply_excitation(det, factor.particle_span(), factor.hole_span())) {
      terms.emplace_back(det, c * amp);
      terms.emplace_back(rev->det, -rev->sign * s * amp);
    } else {
      terms.emplace_back(det, amp);
    }
  }
  return SparseWavefunction::from_terms(std::move(terms));
}

SparseWavefunction prefix_state(const UccCircuit& circuit, std::size_t m) {
  if (m > circuit.size()) throw std::invalid_argument("prefix_state: m exceeds the factor count");
  SparseWavefunction psi = SparseWavefunction::single(circuit.reference());
  for (std::size_t k = 0; k < m; ++k)
    psi = truncate(apply_factor(psi, circuit.factors()[k]), circuit.n_wf());
  return psi;
}

namespace {

std::string spin_orbital_token(SpinOrbital so) {
  return std::to_string(so.orbital) + (so.spin == Spin::alpha ? 'a' : 'b');
}

SpinOrbital parse_spin_orbital(const std::string& token) {
  if (token.size() < 2) throw std::runtime_error("circuit: bad spin-orbital token: " + token);
  const char spin_char = token.back();
  if (spin_char != 'a' && spin_char != 'b')
    throw std::runtime_error("circuit: bad spin-orbital token: " + token);
  return {std::stoi(token.substr(0, token.size() - 1)),
          spin_char == 'a' ? Spin::alpha : Spin::beta};
}

std::string join_tokens(std::span<const SpinOrbital> sos) {
  std::string out;
  for (std::size_t i = 0; i < sos.size(); ++i) {
    if (i) out += ',';
    out += spin_orbital_token(sos[i]);
  }
  return out;
}

std::vector<SpinOrbital> split_tokens(const std::string& field) {
  std::vector<SpinOrbital> out;
  std::size_t start = 0;
  while (start <= field.size()) {
    std::size_t comma = field.find(',', start);
    if (comma == std::string::npos) comma = field.size();
    out.push_back(parse_spin_orbital(field.substr(start, comma - start)));
    start = comma + 1;
    if (comma == field.size()) break;
  }
  return out;
}

}  // namespace

void write_circuit(std::ostream& out, const UccCircuit& circuit) {
  char buf[48];
  for (const UccFactor& f : circuit.factors()) {
    std::snprintf(buf, sizeof(buf), " %.17g\n", f.theta);
    out << join_tokens(f.hole_span()) << ' ' << join_tokens(f.particle_span()) << buf;
  }
}

std::vector<UccFactor> read_circuit_factors(std::istream& in) {
  std::vector<UccFactor> factors;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string holes_field, particles_field;
    double theta = 0.0;
    if (!(ss >> holes_field >> particles_field >> theta))
      throw std::runtime_error("circuit: malformed factor line: " + line);
    const auto holes = split_tokens(holes_field);
    const auto particles = split_tokens(particles_field);
    if (holes.size() != particles.size() || holes.empty() || holes.size() > 2)
      throw std::runtime_error("circuit: malformed factor line: " + line);
    if (holes.size() == 1) {
      factors.push_back(make_single(holes[0], particles[0], theta));
    } else {
      factors.push_back(make_double(holes[0], holes[1], particles[0], particles[1], theta));
    }
  }
  return factors;
}

}  // namespace csvqe
