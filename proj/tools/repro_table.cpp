#include "repro_table.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "lassynt/synth.hpp"

namespace lassynt::cli {

namespace {

struct Row {
  const char *spec;
  std::size_t n, k;
  const char *expected;  // "R", "U" or "-" (timed out in the original run)
  double rate;           // < 0 when no rate was published
  bool heavy;            // left out by --small
};

const std::vector<Row> kRows = {
    {"rr2", 2, 4, "U", 0.5, false},     {"rr2", 3, 2, "U", 0.88, false},
    {"rr2", 4, 2, "R", 0.88, false},    {"greedy1", 2, 2, "R", 1.0, false},
    {"greedy1", 2, 3, "U", 0.88, false}, {"greedy1", 3, 3, "U", 0.88, false},
    {"greedy1", 4, 3, "R", 1.0, false}, {"greedy1", 4, 4, "-", -1, true},
    {"greedy2", 4, 2, "R", -1, true},   {"greedy2", 4, 3, "U", -1, true},
    {"greedy3", 2, 2, "U", 0.65, true},
};

std::string verdict_code(Verdict v) {
  switch (v) {
  case Verdict::Realizable:
    return "R";
  case Verdict::Unrealizable:
    return "U";
  case Verdict::ResourceLimit:
    return "limit";
  }
  return "?";
}

std::string fmt(const char *f, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w)
    s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

int repro_table(const ReproOptions &opts, std::ostream &out) {
  out << pad("spec", 9) << pad("n", 3) << pad("k", 3) << pad("expected", 10) << pad("obtained", 10)
      << pad("match", 7);
  if (opts.state_only_column)
    out << pad("state-only", 12);
  out << pad("rate(pub)", 11) << pad("rate(exact)", 16) << (opts.timing ? "time" : "") << "\n";
  int mismatches = 0;
  for (const auto &row : kRows) {
    out << pad(row.spec, 9) << pad(std::to_string(row.n), 3) << pad(std::to_string(row.k), 3)
        << pad(row.expected, 10);
    if (opts.small && row.heavy) {
      out << "skipped-by-guard\n";
      continue;
    }
    const auto spec = load_spec(opts.spec_dir / (std::string(row.spec) + ".spec"));
    SynthOptions so;
    so.max_iterations = opts.max_iterations;
    const auto res = synthesize(spec, row.n, row.k, so);
    const auto got = verdict_code(res.verdict);
    const bool match = std::string(row.expected) == "-" || got == row.expected;
    if (!match)
      ++mismatches;
    out << pad(got, 10) << pad(std::string(row.expected) == "-" ? "n/a" : match ? "yes" : "NO", 7);
    if (opts.state_only_column) {
      so.encoding.closure = LoopClosure::StateOnly;
      out << pad(verdict_code(synthesize(spec, row.n, row.k, so).verdict), 12);
    }
    out << pad(row.rate < 0 ? "-" : fmt("%.2f", row.rate), 11);
    if (system_count(row.n, spec.inputs.size(), spec.outputs.size()) <= opts.ceiling) {
      const auto best = approx_synthesize(spec, row.n, row.k, 0.0, opts.ceiling);
      out << pad(std::to_string(best.rate.satisfied) + "/" + std::to_string(best.rate.total) + " " +
                     fmt("%.3f", best.rate.value()),
                 16);
    } else {
      out << pad("skipped-by-guard", 16);
    }
    if (opts.timing)
      out << fmt("%.2fs", res.stats.seconds);
    out << "\n";
  }
  return mismatches;
}

}  // namespace lassynt::cli
