#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "lassynt/synth.hpp"

using namespace lassynt;

namespace {

SpecFile spec(const char *name) { return load_spec(std::string(LASSYNT_SPEC_DIR) + "/" + name); }

SynthOptions with_backend(Backend b) {
  SynthOptions o;
  o.backend = b;
  return o;
}

}  // namespace

TEST_CASE("backends agree on the corpus") {
  for (const char *name : {"greedy1.spec", "greedy1-literal.spec", "rr2.spec", "simple.spec", "greedy2.spec"})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 1; n * k <= 6; ++k) {
        const auto s = spec(name);
        if (system_count(n, s.inputs.size(), s.outputs.size()) > 200'000)
          continue;
        INFO(name << " n=" << n << " k=" << k);
        const auto q = synthesize(s, n, k);
        const auto b = synthesize(s, n, k, with_backend(Backend::BruteForce));
        REQUIRE(q.verdict == b.verdict);
        REQUIRE(q.verdict != Verdict::ResourceLimit);
        if (q.witness)
          REQUIRE(check(s, *q.witness, k).holds);
      }
}

TEST_CASE("constant system for an output-only obligation") {
  const auto s = parse_spec("[inputs] i\n[outputs] o\n[ltl] G o\n");
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto r = synthesize(s, 1, k);
    REQUIRE(r.verdict == Verdict::Realizable);
    CHECK(r.witness->labels == std::vector<Letter>{1});
  }
}

TEST_CASE("round-robin arbiter verdicts") {
  const auto s = spec("rr2.spec");
  const auto r42 = synthesize(s, 4, 2);
  CHECK(r42.verdict == Verdict::Realizable);
  CHECK(r42.stats.non_definitional == VarLayout::expected_count(4, 2, 1, 2));
  CHECK(synthesize(s, 2, 4).verdict == Verdict::Unrealizable);
  CHECK(synthesize(s, 3, 2).verdict == Verdict::Unrealizable);
}

TEST_CASE("iteration limit surfaces as resource limit") {
  SynthOptions o;
  o.max_iterations = 1;
  const auto r = synthesize(spec("rr2.spec"), 3, 2, o);
  CHECK(r.verdict != Verdict::Realizable);
  CHECK_FALSE(r.witness);
  o = with_backend(Backend::BruteForce);
  o.ceiling = 10;
  CHECK(synthesize(spec("rr2.spec"), 3, 2, o).verdict == Verdict::ResourceLimit);
}

TEST_CASE("check") {
  const auto g2 = spec("greedy2.spec");
  // always grant both clients
  const TransitionSystem all{g2.inputs, g2.outputs, 1, {0, 0, 0, 0}, {3}};
  const auto c = check(g2, all, 1);
  CHECK_FALSE(c.holds);
  REQUIRE(c.violation);
  CHECK(c.violation_text.find('{') != std::string::npos);
  const auto g1 = spec("greedy1.spec");
  const auto w = synthesize(g1, 2, 2);
  REQUIRE(w.witness);
  CHECK(check(g1, *w.witness, 2).holds);
  CHECK(check(g1, *w.witness, 1).holds);
  CHECK_THROWS_AS(check(g2, *w.witness, 1), std::invalid_argument);
}

TEST_CASE("approximate synthesis") {
  const auto simple = spec("simple.spec");
  const auto a = approx_synthesize(simple, 1, 2, 0.5);
  CHECK(a.rate.value() < 1.0);
  CHECK(a.rate == satisfaction_rate(a.best, simple.formula, 2));
  CHECK(a.epsilon_met == (a.rate.value() >= 0.5));
  const auto g1 = spec("greedy1.spec");
  const auto full = approx_synthesize(g1, 2, 2, 0.0);
  CHECK(full.rate.satisfied == full.rate.total);
  CHECK(full.epsilon_met);
  const auto part = approx_synthesize(g1, 2, 3, 0.1);
  CHECK(part.rate.satisfied == 14);
  CHECK_FALSE(part.epsilon_met);
  CHECK(approx_to_json(part).find("\"rate\"") != std::string::npos);
}

TEST_CASE("witnesses are reproducible") {
  const auto s = spec("rr2.spec");
  const auto a = synthesize(s, 4, 2), b = synthesize(s, 4, 2);
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(system_to_json(*a.witness) == system_to_json(*b.witness));
  const auto json = result_to_json(a);
  CHECK(json.find("\"verdict\": \"realizable\"") != std::string::npos);
  CHECK(json.find("\"witness\"") != std::string::npos);
}

TEST_CASE("counting export") {
  const auto path = std::filesystem::temp_directory_path() / "lassynt_test_count.cnf";
  export_counting(spec("greedy1.spec"), 2, 2, path);
  std::FILE *f = std::fopen(path.c_str(), "r");
  REQUIRE(f);
  std::string text;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, f)) > 0;)
    text.append(buf, got);
  std::fclose(f);
  std::filesystem::remove(path);
  const auto p = parse_counting(text);
  CHECK(p.max_set.size() == 2 * 2 * 2 + 2);
  CHECK(p.count_set.size() == 4);
  CHECK(max_projected_count(p).count == 6);
}

TEST_CASE("external solver contract") {
  const auto s = spec("greedy1.spec");
  const auto enc = encode_synthesis(s, 1, 1);
  CHECK(run_external_solver("sh -c 'exit 20'", enc.qbf).verdict == QbfVerdict::False);
  CHECK(run_external_solver("sh -c 'exit 3'", enc.qbf).verdict == QbfVerdict::Resource);
  SynthOptions o = with_backend(Backend::ExternalQbf);
  o.external_command = "sh -c 'exit 20'";
  CHECK(synthesize(s, 1, 1, o).verdict == Verdict::Unrealizable);
}
