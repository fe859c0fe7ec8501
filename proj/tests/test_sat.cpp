#include <doctest.h>

#include <random>

#include "lassynt/sat.hpp"

using namespace lassynt;

namespace {

Cnf random_cnf(std::mt19937 &rng, std::uint32_t vars, std::size_t clauses, std::size_t width) {
  Cnf f;
  f.num_vars = vars;
  for (std::size_t c = 0; c < clauses; ++c) {
    std::vector<int> cl;
    for (std::size_t i = 0; i < width; ++i) {
      const int v = static_cast<int>(1 + rng() % vars);
      cl.push_back(rng() % 2 ? v : -v);
    }
    f.clauses.push_back(cl);
  }
  return f;
}

bool satisfies(const Cnf &f, std::uint32_t mask) {
  for (const auto &cl : f.clauses) {
    bool sat = false;
    for (int l : cl)
      sat |= (((mask >> (std::abs(l) - 1)) & 1) != 0) == (l > 0);
    if (!sat)
      return false;
  }
  return true;
}

bool truth_table_sat(const Cnf &f, std::span<const int> assumptions = {}) {
  for (std::uint32_t m = 0; m < (1u << f.num_vars); ++m) {
    bool ok = true;
    for (int a : assumptions)
      ok &= (((m >> (std::abs(a) - 1)) & 1) != 0) == (a > 0);
    if (ok && satisfies(f, m))
      return true;
  }
  return false;
}

}  // namespace

TEST_CASE("small examples") {
  CHECK_FALSE(sat_solve({1, {{1}, {-1}}}));
  const auto m = sat_solve({2, {{1, 2}, {-1}}});
  REQUIRE(m);
  CHECK((*m)[2]);
  CHECK_FALSE((*m)[1]);
  CHECK(sat_solve({0, {}}));
  CHECK_FALSE(sat_solve({1, {{}}}));
}

TEST_CASE("random 3-CNF agrees with the truth table") {
  std::mt19937 rng(5);
  for (int round = 0; round < 400; ++round) {
    const auto f = random_cnf(rng, 12, 30 + rng() % 40, 3);
    const auto m = sat_solve(f);
    REQUIRE(m.has_value() == truth_table_sat(f));
    if (m) {
      std::uint32_t mask = 0;
      for (std::uint32_t v = 1; v <= f.num_vars; ++v)
        mask |= std::uint32_t((*m)[v]) << (v - 1);
      REQUIRE(satisfies(f, mask));
    }
  }
}

TEST_CASE("assumptions and incremental clauses") {
  std::mt19937 rng(9);
  for (int round = 0; round < 100; ++round) {
    auto f = random_cnf(rng, 10, 25, 3);
    SatSolver s;
    s.ensure_vars(f.num_vars);
    for (const auto &cl : f.clauses)
      s.add_clause(cl);
    for (int q = 0; q < 5; ++q) {
      std::vector<int> as;
      for (int i = 0; i < 3; ++i) {
        const int v = static_cast<int>(1 + rng() % 10);
        as.push_back(rng() % 2 ? v : -v);
      }
      const auto r = s.solve(as);
      REQUIRE((r == SatSolver::Result::Sat) == truth_table_sat(f, as));
      if (r == SatSolver::Result::Sat)
        for (int a : as)
          REQUIRE(s.value(std::abs(a)) == (a > 0));
      // grow the formula between calls
      const auto extra = random_cnf(rng, 10, 1, 3).clauses[0];
      s.add_clause(extra);
      f.clauses.push_back(extra);
    }
  }
}

TEST_CASE("conflict limit yields unknown on a hard instance") {
  // pigeonhole 8 -> 7
  SatSolver s;
  const int p = 8, h = 7;
  auto var = [&](int i, int j) { return i * h + j + 1; };
  s.ensure_vars(p * h);
  for (int i = 0; i < p; ++i) {
    std::vector<int> cl;
    for (int j = 0; j < h; ++j)
      cl.push_back(var(i, j));
    s.add_clause(cl);
  }
  for (int j = 0; j < h; ++j)
    for (int a = 0; a < p; ++a)
      for (int b = a + 1; b < p; ++b)
        s.add_clause({-var(a, j), -var(b, j)});
  CHECK(s.solve({}, 10) == SatSolver::Result::Unknown);
}

TEST_CASE("unit propagation closure") {
  SatSolver s;
  s.ensure_vars(4);
  s.add_clause({-1, 2});
  s.add_clause({-2, 3});
  s.add_clause({-3, -4});
  const auto imp = s.implied(std::vector<int>{1});
  REQUIRE(imp);
  CHECK((*imp)[2] == 1);
  CHECK((*imp)[3] == 1);
  CHECK((*imp)[4] == 0);
  const auto none = s.implied(std::vector<int>{});
  REQUIRE(none);
  CHECK((*none)[1] == -1);
  CHECK_FALSE(s.implied(std::vector<int>{1, 4}));
  CHECK(s.solve(std::vector<int>{1}) == SatSolver::Result::Sat);
}
