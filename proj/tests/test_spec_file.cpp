#include <doctest.h>

#include <filesystem>

#include "lassynt/spec_file.hpp"

using namespace lassynt;

namespace {
const std::filesystem::path kSpecs{LASSYNT_SPEC_DIR};
}

TEST_CASE("parse a spec") {
  const auto s = parse_spec("# arbiter\n[inputs] r w\n[outputs] g\n\n[ltl] G(!w -> X !g) & G(r -> F g)\n");
  CHECK(s.inputs == std::vector<std::string>{"r", "w"});
  CHECK(s.outputs == std::vector<std::string>{"g"});
  CHECK(s.props() == std::vector<std::string>{"r", "w", "g"});
  CHECK(parse_spec(s.to_text()).formula == s.formula);
}

TEST_CASE("spec errors carry line numbers") {
  CHECK_THROWS_AS(parse_spec("[inputs] r\n[outputs] g\n"), SpecError);
  try {
    parse_spec("[inputs] r\n[outputs] g\n[ltl] G(r -> F q)\n");
    FAIL("undeclared atom accepted");
  } catch (const SpecError &e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_spec("[inputs] r\nbogus\n[ltl] r\n");
    FAIL("stray line accepted");
  } catch (const SpecError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_spec("[inputs] r\n[outputs] r\n[ltl] r\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("[inputs] X\n[ltl] true\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("[inputs] 1r\n[ltl] true\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("[ltl] true\n[ltl] false\n"), SpecError);
  CHECK_THROWS_AS(load_spec("/nonexistent/x.spec"), std::system_error);
}

TEST_CASE("bundled corpus parses and round-trips") {
  for (const char *name : {"greedy1", "greedy1-literal", "greedy2", "greedy3", "rr2", "simple"}) {
    CAPTURE(name);
    const auto s = load_spec(kSpecs / (std::string(name) + ".spec"));
    CHECK(to_nnf(s.formula).is_nnf());
    const auto again = parse_spec(s.to_text());
    CHECK(again.formula == s.formula);
    CHECK(again.inputs == s.inputs);
    CHECK(again.outputs == s.outputs);
  }
}

TEST_CASE("round-robin spec shape") {
  const auto s = load_spec(kSpecs / "rr2.spec");
  CHECK(s.inputs == std::vector<std::string>{"w"});
  CHECK(s.outputs == std::vector<std::string>{"g1", "g2"});
}

TEST_CASE("two-client greedy spec is mutex, response and release") {
  const auto s = load_spec(kSpecs / "greedy2.spec");
  const std::set<std::string> atoms{"r1", "r2", "g1", "g2"};
  const auto expected = parse_ltl(
      "G !(g1 & g2) & G((r1 -> F g1) & (r2 -> F g2)) & "
      "G(((g1 & r1 & F !r1) -> X g1) & ((g2 & r2 & F !r2) -> X g2))",
      atoms);
  CHECK(s.formula == expected);
}
