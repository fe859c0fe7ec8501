#include <doctest.h>

#include <random>

#include "lassynt/bool_expr.hpp"
#include "lassynt/qbf.hpp"
#include "lassynt/sat.hpp"

using namespace lassynt;

namespace {

ExprPool::Ref random_expr(ExprPool &pool, std::mt19937 &rng, std::uint32_t vars, int depth) {
  const int op = depth <= 0 ? 0 : static_cast<int>(rng() % 6);
  auto sub = [&] { return random_expr(pool, rng, vars, depth - 1); };
  switch (op) {
  case 0:
    return pool.var(1 + rng() % vars);
  case 1:
    return pool.negate(sub());
  case 2:
    return pool.conj({sub(), sub(), sub()});
  case 3:
    return pool.disj(sub(), sub());
  case 4:
    return pool.iff(sub(), sub());
  default:
    return rng() % 8 == 0 ? pool.constant(rng() % 2) : pool.implies(sub(), sub());
  }
}

}  // namespace

TEST_CASE("constant folding and sharing") {
  ExprPool p;
  const auto a = p.var(1), b = p.var(2);
  CHECK(p.conj(a, p.top()) == a);
  CHECK(p.conj(a, p.bottom()) == p.bottom());
  CHECK(p.disj(a, p.top()) == p.top());
  CHECK(p.conj(a, p.negate(a)) == p.bottom());
  CHECK(p.disj(a, p.negate(a)) == p.top());
  CHECK(p.negate(p.negate(a)) == a);
  CHECK(p.conj(a, b) == p.conj(b, a));
  CHECK(p.conj(a, a) == a);
  CHECK(p.conj(std::vector<ExprPool::Ref>{}) == p.top());
  CHECK(p.disj(std::vector<ExprPool::Ref>{}) == p.bottom());
  CHECK(p.conj(p.conj(a, b), a) == p.conj(a, b));
}

TEST_CASE("exactly_one semantics") {
  ExprPool p;
  std::vector<ExprPool::Ref> xs{p.var(1), p.var(2), p.var(3)};
  const auto e = p.exactly_one(xs);
  for (unsigned m = 0; m < 8; ++m)
    CHECK(p.evaluate(e, [&](std::uint32_t v) { return (m >> (v - 1)) & 1; }) ==
          (m == 1 || m == 2 || m == 4));
}

TEST_CASE("Tseitin of small expressions") {
  {
    ExprPool p;
    VarTable vars;
    vars.add(VarRole::System, "a");
    const auto t = tseitin(p, p.var(1), vars);
    CHECK(t.cnf.clauses.size() == 1);
    CHECK(t.root == 1);
    CHECK(vars.size() == 1);
  }
  {
    ExprPool p;
    VarTable vars;
    vars.add(VarRole::System, "a");
    vars.add(VarRole::System, "b");
    const auto t = tseitin(p, p.conj(p.var(1), p.var(2)), vars);
    CHECK(t.cnf.clauses.size() == 4);  // three for d <-> a & b, one unit
    CHECK(t.root == 3);
    CHECK(t.first_definitional == 3);
    CHECK(vars.role(3) == VarRole::Definitional);
  }
}

TEST_CASE("Tseitin preserves projected model counts") {
  std::mt19937 rng(17);
  for (int round = 0; round < 60; ++round) {
    const std::uint32_t n = 2 + rng() % 5;
    ExprPool p;
    VarTable vars;
    for (std::uint32_t v = 1; v <= n; ++v)
      vars.add(VarRole::Input, "x" + std::to_string(v));
    const auto e = random_expr(p, rng, n, 4);
    std::uint64_t truth = 0;
    for (unsigned m = 0; m < (1u << n); ++m)
      truth += p.evaluate(e, [&](std::uint32_t v) { return (m >> (v - 1)) & 1; });
    const auto t = tseitin(p, e, vars);
    std::vector<std::uint32_t> orig;
    for (std::uint32_t v = 1; v <= n; ++v)
      orig.push_back(v);
    REQUIRE(projected_count(t.cnf, orig) == truth);
    // every model restricted to the originals satisfies the expression
    if (auto m = sat_solve(t.cnf))
      REQUIRE(p.evaluate(e, [&](std::uint32_t v) { return (*m)[v]; }));
    else
      REQUIRE(truth == 0);
  }
}

TEST_CASE("extra roots are defined but not asserted") {
  ExprPool p;
  VarTable vars;
  vars.add(VarRole::Input, "a");
  vars.add(VarRole::Input, "b");
  const auto a = p.var(1), b = p.var(2);
  const std::vector<ExprPool::Ref> extra{p.conj(a, b)};
  const auto t = tseitin(p, p.disj(a, b), vars, extra);
  REQUIRE(t.extra.size() == 1);
  CHECK(projected_count(t.cnf, {1, 2}) == 3);
  CHECK(projected_count(t.cnf, {1, 2}, {t.extra[0]}) == 1);
  CHECK(projected_count(t.cnf, {1, 2}, {-t.extra[0]}) == 2);
}

TEST_CASE("variable table") {
  VarTable t;
  CHECK(t.add(VarRole::System, "x") == 1);
  CHECK(t.add(VarRole::Label, "y") == 2);
  CHECK(t.add(VarRole::System, "z") == 3);
  CHECK(t.with_role(VarRole::System) == std::vector<std::uint32_t>{1, 3});
  CHECK(t.name(2) == "y");
  CHECK(std::string(role_name(VarRole::RunLoop)).size() > 0);
}
