// lassynt: bounded-environment synthesis from LTL.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>

#include "lassynt/automata.hpp"
#include "lassynt/synth.hpp"
#include "repro_table.hpp"

namespace {

using namespace lassynt;

constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;
constexpr int kExitError = 3;

// Reported through the usage exit code after parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::system_error(std::make_error_code(std::errc::no_such_file_or_directory),
                            "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out)
    throw std::system_error(std::make_error_code(std::errc::io_error), "cannot write " + path);
}

std::string system_text(const TransitionSystem &sys) {
  std::ostringstream os;
  for (std::size_t t = 0; t < sys.num_states; ++t) {
    os << "state " << t << " " << format_letter(sys.labels[t], sys.outputs) << "\n";
    for (Letter i = 0; i < sys.num_letters(); ++i)
      os << "  " << format_letter(i, sys.inputs) << " -> " << sys.next(static_cast<std::uint32_t>(t), i)
         << "\n";
  }
  return os.str();
}

LoopClosure parse_closure(const std::string &s) {
  if (s == "consistent")
    return LoopClosure::Consistent;
  if (s == "state-only")
    return LoopClosure::StateOnly;
  throw UsageError("--loop-closure must be 'consistent' or 'state-only'");
}

int verdict_exit(Verdict v) {
  switch (v) {
  case Verdict::Realizable:
    return 0;
  case Verdict::Unrealizable:
    return 1;
  case Verdict::ResourceLimit:
    return 2;
  }
  return kExitError;
}

struct Common {
  std::string spec;
  std::size_t n = 0, k = 0;
  std::string out;
  std::string format = "json";
  std::string closure = "consistent";
};

void add_instance_flags(CLI::App *cmd, Common &c) {
  cmd->add_option("--spec", c.spec, "Specification file")->required();
  cmd->add_option("-n", c.n, "Number of system states")->check(CLI::Range(1, 64));
  cmd->add_option("-k", c.k, "Input lasso length bound")->required()->check(CLI::Range(1, 64));
  cmd->add_option("--out", c.out, "Output file (default stdout)");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bounded-environment synthesis of transition systems from LTL"};
  app.require_subcommand(1);

  Common c;
  std::string backend = "internal";
  std::string solver;
  std::size_t sweep = 0;
  std::uint64_t max_iterations = 1'000'000;
  std::uint64_t ceiling = kDefaultCandidateCeiling;

  auto *synth = app.add_subcommand("synth", "Synthesize a k-lasso-precise implementation");
  add_instance_flags(synth, c);
  synth->add_option("--backend", backend, "internal | external | brute")
      ->check(CLI::IsMember({"internal", "external", "brute"}));
  synth->add_option("--solver", solver, "External QDIMACS solver command (default $LASSYNT_SOLVER)");
  synth->add_option("--loop-closure", c.closure, "consistent | state-only");
  synth->add_option("--format", c.format, "json | dot | text")->check(CLI::IsMember({"json", "dot", "text"}));
  synth->add_option("--sweep-n", sweep, "Try n = 1..MAX and report the first realizable size");
  synth->add_option("--max-iterations", max_iterations, "Refinement ceiling of the internal solver");
  synth->add_option("--ceiling", ceiling, "Candidate ceiling of the brute-force backend");

  std::string system_path;
  auto *check_cmd = app.add_subcommand("check", "Check a system against a specification");
  check_cmd->add_option("--spec", c.spec, "Specification file")->required();
  check_cmd->add_option("--system", system_path, "System JSON")->required();
  check_cmd->add_option("-k", c.k, "Input lasso length bound")->required()->check(CLI::Range(1, 64));

  double epsilon = 0.0;
  std::string method = "brute";
  auto *approx = app.add_subcommand("approx", "Maximize the fraction of satisfied input lassos");
  add_instance_flags(approx, c);
  approx->add_option("--epsilon", epsilon, "Admissible error rate")->check(CLI::Range(0.0, 1.0));
  approx->add_option("--method", method, "brute | export")->check(CLI::IsMember({"brute", "export"}));
  approx->add_option("--ceiling", ceiling, "Candidate ceiling");
  approx->add_option("--loop-closure", c.closure, "consistent | state-only (export only)");

  std::vector<std::string> dfa_inputs;
  bool minimize = false;
  auto *dfa = app.add_subcommand("prefix-dfa", "Build the DFA of k-lasso prefixes");
  dfa->add_option("-I", dfa_inputs, "Input proposition (repeatable)")->required();
  dfa->add_option("-k", c.k, "Lasso length")->required()->check(CLI::Range(1, 12));
  dfa->add_flag("--minimize", minimize, "Minimize before printing");
  dfa->add_option("--format", c.format, "dot | text")->check(CLI::IsMember({"dot", "text", "json"}));
  dfa->add_option("--out", c.out, "Output file");

  auto *qd = app.add_subcommand("emit-qdimacs", "Write the synthesis QBF");
  add_instance_flags(qd, c);
  qd->add_option("--loop-closure", c.closure, "consistent | state-only");

  auto *cnt = app.add_subcommand("emit-count", "Write the counting instance");
  add_instance_flags(cnt, c);
  cnt->add_option("--loop-closure", c.closure, "consistent | state-only");

  cli::ReproOptions repro;
  repro.spec_dir = LASSYNT_SPEC_DIR;
  std::string corpus;
  auto *table = app.add_subcommand("repro-table", "Re-run the published benchmark table");
  table->add_flag("--small", repro.small, "Skip the expensive rows");
  table->add_flag("--timing", repro.timing, "Print wall times");
  table->add_option("--seed-corpus", corpus, "Directory with the bundled .spec files");
  table->add_option("--ceiling", repro.ceiling, "Brute-force candidate ceiling for rates");

  std::string qdimacs_path;
  auto *solve = app.add_subcommand("solve-qdimacs", "Solve a 2QBF file; exit 10 (true) or 20 (false)");
  solve->add_option("file", qdimacs_path, "QDIMACS file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth) {
      if (c.n == 0 && sweep == 0)
        throw UsageError("synth needs -n or --sweep-n");
      if (backend != "internal" && c.closure != "consistent")
        throw UsageError("--loop-closure only applies to QBF backends");
      const auto spec = load_spec(c.spec);
      SynthOptions so;
      so.backend = backend == "internal" ? Backend::InternalQbf
                   : backend == "external" ? Backend::ExternalQbf
                                           : Backend::BruteForce;
      so.encoding.closure = parse_closure(c.closure);
      so.external_command = solver;
      so.max_iterations = max_iterations;
      so.ceiling = ceiling;
      std::size_t lo = c.n, hi = c.n;
      if (sweep) {
        lo = 1;
        hi = sweep;
      }
      SynthesisResult res;
      std::size_t used_n = lo;
      for (std::size_t n = lo; n <= hi; ++n) {
        used_n = n;
        res = synthesize(spec, n, c.k, so);
        if (res.verdict != Verdict::Unrealizable)
          break;
      }
      if (c.format == "dot") {
        write_output(c.out, res.witness ? to_dot(*res.witness) : std::string());
      } else if (c.format == "text") {
        std::string t = std::string(verdict_name(res.verdict)) + " (n=" + std::to_string(used_n) +
                        ", k=" + std::to_string(c.k) + ")\n";
        if (res.witness)
          t += system_text(*res.witness);
        write_output(c.out, t);
      } else {
        auto j = result_to_json(res);
        if (sweep)
          j.insert(1, "\n  \"n\": " + std::to_string(used_n) + ",");
        write_output(c.out, j + "\n");
      }
      return verdict_exit(res.verdict);
    }

    if (*check_cmd) {
      const auto spec = load_spec(c.spec);
      const auto sys = system_from_json(read_file(system_path));
      const auto r = check(spec, sys, c.k);
      if (r.holds)
        std::cout << "holds\n";
      else
        std::cout << "violated on input " << r.violation_text << "\n";
      return r.holds ? 0 : 1;
    }

    if (*approx) {
      if (c.n == 0)
        throw UsageError("approx needs -n");
      const auto spec = load_spec(c.spec);
      if (method == "export") {
        if (c.out.empty())
          throw UsageError("--method export needs --out");
        EncodingOptions eo;
        eo.closure = parse_closure(c.closure);
        export_counting(spec, c.n, c.k, c.out, eo);
        std::cout << c.out << "\n";
        return 0;
      }
      const auto res = approx_synthesize(spec, c.n, c.k, epsilon, ceiling);
      write_output(c.out, approx_to_json(res) + "\n");
      return res.rate.satisfied == res.rate.total ? 0 : res.epsilon_met ? 0 : 1;
    }

    if (*dfa) {
      const auto d = build_prefix_dfa(dfa_inputs, c.k);
      std::string text;
      if (minimize) {
        const auto m = minimize_dfa(d);
        if (c.format == "dot")
          text = to_dot(m, dfa_inputs);
        else
          text = "states " + std::to_string(m.size()) + "\n";
      } else if (c.format == "dot") {
        text = to_dot(d);
      } else {
        text = "states " + std::to_string(d.size()) + "\n";
      }
      write_output(c.out, text);
      return 0;
    }

    if (*qd || *cnt) {
      if (c.n == 0)
        throw UsageError("-n is required");
      const auto spec = load_spec(c.spec);
      EncodingOptions eo;
      eo.closure = parse_closure(c.closure);
      if (*qd)
        write_output(c.out, emit_qdimacs(encode_synthesis(spec, c.n, c.k, eo).qbf));
      else
        write_output(c.out, emit_counting(encode_counting(spec, c.n, c.k, eo).problem));
      return 0;
    }

    if (*table) {
      if (!corpus.empty())
        repro.spec_dir = corpus;
      cli::repro_table(repro, std::cout);
      return 0;
    }

    if (*solve) {
      const auto p = parse_qdimacs(read_file(qdimacs_path));
      const auto r = solve_qbf(p);
      if (r.verdict == QbfVerdict::True) {
        std::cout << "s cnf 1\nV";
        for (std::size_t v = 1; v < r.outer.size(); ++v)
          if (r.outer[v] >= 0)
            std::cout << ' ' << (r.outer[v] ? "" : "-") << v;
        std::cout << " 0\n";
        return 10;
      }
      if (r.verdict == QbfVerdict::False) {
        std::cout << "s cnf 0\n";
        return 20;
      }
      return 0;
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::system_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SpecError &e) {
    std::cerr << "error: " << c.spec << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
