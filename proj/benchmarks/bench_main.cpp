#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "lassynt/automata.hpp"
#include "lassynt/encoding.hpp"
#include "lassynt/sat.hpp"
#include "lassynt/synth.hpp"

using namespace lassynt;

namespace {

SpecFile spec(const char *name) { return load_spec(std::string(LASSYNT_SPEC_DIR) + "/" + name); }

void BM_SatRandom3Cnf(benchmark::State &state) {
  const int vars = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  std::vector<std::vector<int>> clauses;
  for (int c = 0; c < vars * 42 / 10; ++c) {
    std::vector<int> cl;
    for (int i = 0; i < 3; ++i) {
      const int v = 1 + static_cast<int>(rng() % vars);
      cl.push_back(rng() % 2 ? v : -v);
    }
    clauses.push_back(cl);
  }
  const Cnf f{static_cast<std::uint32_t>(vars), clauses};
  for (auto _ : state)
    benchmark::DoNotOptimize(sat_solve(f));
}
BENCHMARK(BM_SatRandom3Cnf)->Arg(50)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State &state, const char *name, std::size_t n, std::size_t k) {
  const auto s = spec(name);
  for (auto _ : state) {
    const auto r = synthesize(s, n, k);
    state.counters["iterations"] = static_cast<double>(r.stats.iterations);
    state.counters["clauses"] = static_cast<double>(r.stats.clauses);
  }
}
BENCHMARK_CAPTURE(BM_Synthesize, greedy1_2_2, "greedy1.spec", 2, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Synthesize, greedy1_4_3, "greedy1.spec", 4, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Synthesize, rr2_4_2, "rr2.spec", 4, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Synthesize, rr2_2_4, "rr2.spec", 2, 4)->Unit(benchmark::kMillisecond);

void BM_EncodeSynthesis(benchmark::State &state) {
  const auto s = spec("greedy2.spec");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(encode_synthesis(s, n, 3));
}
BENCHMARK(BM_EncodeSynthesis)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_EnumerateKWords(benchmark::State &state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto alphabet = full_alphabet(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_k_words(alphabet, k));
}
BENCHMARK(BM_EnumerateKWords)->DenseRange(2, 8, 2);

void BM_LassoEvaluation(benchmark::State &state) {
  const auto s = spec("greedy2.spec");
  const LassoEvaluator eval(s.formula, s.props());
  const auto words = enumerate_k_words(full_alphabet(s.props().size()), 2);
  for (auto _ : state)
    for (const auto &w : words)
      benchmark::DoNotOptimize(eval.evaluate(w.representative));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * words.size()));
}
BENCHMARK(BM_LassoEvaluation);

void BM_PrefixDfa(benchmark::State &state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(minimize_dfa(build_prefix_dfa({"r"}, k)));
}
BENCHMARK(BM_PrefixDfa)->DenseRange(2, 6);

void BM_BruteForceRate(benchmark::State &state) {
  const auto s = spec("greedy1.spec");
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_max_rate(s, 2, 3));
}
BENCHMARK(BM_BruteForceRate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
