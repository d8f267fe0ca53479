// Copyright 2026 The CSVQE Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "csvqe/hamiltonian.hpp"
#include "csvqe/integrals.hpp"
#include "fixtures.hpp"

using csvqe::IntegralTable;

namespace {

IntegralTable toy_table() {
  std::istringstream in(
      "&FCI NORB=1,NELEC=2,MS2=0,\n"
      "/\n"
      " -1.0 1 1 0 0\n"
      " 0.5 1 1 1 1\n"
      " 0.7 0 0 0 0\n");
  return IntegralTable::parse_fcidump(in);
}

}  // namespace

TEST_CASE("parse_fcidump maps records onto the table") {
  const IntegralTable t = toy_table();
  CHECK(t.n_orbitals() == 1);
  CHECK(t.n_electrons() == 2);
  CHECK(t.ms2() == 0);
  CHECK(t.one_electron(1, 1) == -1.0);
  CHECK(t.two_electron(1, 1, 1, 1) == 0.5);
  CHECK(t.core_energy() == 0.7);
}

TEST_CASE("parse_fcidump requires NORB, NELEC and MS2") {
  std::istringstream missing_ms2("&FCI NORB=1,NELEC=2,\n/\n");
  CHECK_THROWS_WITH_AS(IntegralTable::parse_fcidump(missing_ms2),
                       doctest::Contains("MS2"), std::runtime_error);
  std::istringstream missing_norb("&FCI NELEC=2,MS2=0,\n/\n");
  CHECK_THROWS_WITH_AS(IntegralTable::parse_fcidump(missing_norb),
                       doctest::Contains("NORB"), std::runtime_error);
  std::istringstream missing_nelec("&FCI NORB=1,MS2=0,\n/\n");
  CHECK_THROWS_WITH_AS(IntegralTable::parse_fcidump(missing_nelec),
                       doctest::Contains("NELEC"), std::runtime_error);
}

TEST_CASE("parse_fcidump rejects open-shell headers") {
  std::istringstream in("&FCI NORB=2,NELEC=3,MS2=1,\n/\n");
  CHECK_THROWS_WITH_AS(IntegralTable::parse_fcidump(in), doctest::Contains("unsupported"),
                       std::runtime_error);
}

TEST_CASE("parse_fcidump reports bad records with their line number") {
  std::istringstream bad_field("&FCI NORB=2,NELEC=2,MS2=0,\n/\n 1.0 1 x 0 0\n");
  CHECK_THROWS_WITH_AS(IntegralTable::parse_fcidump(bad_field), doctest::Contains("line 3"),
                       std::runtime_error);
  std::istringstream bad_index("&FCI NORB=2,NELEC=2,MS2=0,\n/\n 1.0 3 1 0 0\n");
  CHECK_THROWS_WITH_AS(IntegralTable::parse_fcidump(bad_index),
                       doctest::Contains("index out of [0, NORB]"), std::runtime_error);
  std::istringstream bad_pattern("&FCI NORB=2,NELEC=2,MS2=0,\n/\n 1.0 1 0 1 0\n");
  CHECK_THROWS_AS(IntegralTable::parse_fcidump(bad_pattern), std::runtime_error);
}

TEST_CASE("parse_fcidump accepts ORBSYM/ISYM and multi-line headers") {
  std::istringstream in(
      "&FCI NORB=2,NELEC=2,MS2=0,\n"
      " ORBSYM=1,1,\n"
      " ISYM=1,\n"
      "&END\n"
      " 0.25 1 2 0 0\n");
  const IntegralTable t = IntegralTable::parse_fcidump(in);
  CHECK(t.one_electron(2, 1) == 0.25);
}

TEST_CASE("duplicate records overwrite earlier ones") {
  std::istringstream in(
      "&FCI NORB=1,NELEC=2,MS2=0,\n/\n"
      " 0.5 1 1 1 1\n"
      " 0.9 1 1 1 1\n");
  const IntegralTable t = IntegralTable::parse_fcidump(in);
  CHECK(t.two_electron(1, 1, 1, 1) == 0.9);
}

TEST_CASE("two_electron honors the 8-fold symmetry and zero default") {
  IntegralTable t(2, 2, 0);
  t.set_two_electron(1, 2, 1, 1, 0.3);  // (12|11)
  const int perms[8][4] = {{1, 2, 1, 1}, {2, 1, 1, 1}, {1, 2, 1, 1}, {2, 1, 1, 1},
                           {1, 1, 1, 2}, {1, 1, 2, 1}, {1, 1, 1, 2}, {1, 1, 2, 1}};
  for (const auto& p : perms)
    CHECK(t.two_electron(p[0], p[1], p[2], p[3]) == 0.3);
  CHECK(t.two_electron(1, 1, 2, 1) == 0.3);
  CHECK(t.two_electron(2, 2, 2, 2) == 0.0);
  CHECK_THROWS_AS((void)t.two_electron(0, 1, 1, 1), std::out_of_range);
  CHECK_THROWS_AS((void)t.two_electron(1, 1, 1, 3), std::out_of_range);
}

TEST_CASE("hf_energy closed forms") {
  const IntegralTable t = toy_table();
  CHECK(std::abs(t.hf_energy() - (-0.8)) < 1e-14);

  IntegralTable zeros(3, 4, 0, 1.25);
  CHECK(zeros.hf_energy() == 1.25);

  IntegralTable odd(2, 3, 1);
  CHECK_THROWS_WITH_AS((void)odd.hf_energy(), doctest::Contains("unsupported"), std::runtime_error);
}

TEST_CASE("fcidump round-trip reproduces every lookup exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int norb = 1; norb <= 4; ++norb) {
    IntegralTable t(norb, 2, 0, dist(rng));
    for (int p = 1; p <= norb; ++p)
      for (int q = 1; q <= p; ++q) t.set_one_electron(p, q, dist(rng));
    for (int p = 1; p <= norb; ++p)
      for (int q = 1; q <= norb; ++q)
        for (int r = 1; r <= norb; ++r)
          for (int s = 1; s <= norb; ++s) t.set_two_electron(p, q, r, s, dist(rng));

    std::ostringstream out;
    t.write_fcidump(out);
    std::istringstream in(out.str());
    const IntegralTable back = IntegralTable::parse_fcidump(in);

    CHECK(back.core_energy() == t.core_energy());
    for (int p = 1; p <= norb; ++p)
      for (int q = 1; q <= norb; ++q) {
        CHECK(back.one_electron(p, q) == t.one_electron(p, q));
        for (int r = 1; r <= norb; ++r)
          for (int s = 1; s <= norb; ++s)
            CHECK(back.two_electron(p, q, r, s) == t.two_electron(p, q, r, s));
      }
  }
}

TEST_CASE("H2/STO-3G fixture matches the generating package") {
  const IntegralTable t = fixtures::load_table("h2_sto3g.fcidump");
  const auto entry = fixtures::manifest_entry("h2_sto3g.fcidump");
  CHECK(t.n_orbitals() == 2);
  CHECK(t.n_electrons() == 2);
  CHECK(std::abs(t.one_electron(1, 1) - entry["h11"].get<double>()) < 1e-10);
  CHECK(std::abs(t.two_electron(1, 1, 1, 1) - entry["g1111"].get<double>()) < 1e-10);
  CHECK(std::abs(t.two_electron(1, 1, 2, 2) - entry["g1122"].get<double>()) < 1e-10);
  CHECK(std::abs(t.hf_energy() - entry["scf_energy"].get<double>()) < 1e-8);
}

TEST_CASE("hf_energy equals the diagonal element of the HF determinant") {
  for (const char* name : {"h2_sto3g.fcidump", "h2_631g.fcidump", "lih_sto3g.fcidump"}) {
    const IntegralTable t = fixtures::load_table(name);
    const csvqe::HamiltonianContext ctx(t);
    CHECK(std::abs(t.hf_energy() - ctx.diagonal_element(t.hf_determinant())) < 1e-12);
  }
}
