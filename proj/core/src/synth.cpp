#include "lassynt/synth.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace lassynt {

using nlohmann::json;

const char *backend_name(Backend b) {
  switch (b) {
  case Backend::InternalQbf:
    return "internal-qbf";
  case Backend::ExternalQbf:
    return "external-qbf";
  case Backend::BruteForce:
    return "brute-force";
  }
  return "?";
}

const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Realizable:
    return "realizable";
  case Verdict::Unrealizable:
    return "unrealizable";
  case Verdict::ResourceLimit:
    return "resource-limit";
  }
  return "?";
}

namespace {

class TempFile {
public:
  TempFile() {
    auto pattern = (std::filesystem::temp_directory_path() / "lassynt-XXXXXX").string();
    fd_ = mkstemp(pattern.data());
    if (fd_ < 0)
      throw std::system_error(errno, std::generic_category(), "mkstemp");
    path_ = pattern;
  }
  ~TempFile() {
    ::close(fd_);
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;
  const std::filesystem::path &path() const { return path_; }

private:
  int fd_ = -1;
  std::filesystem::path path_;
};

std::string shell_quote(const std::string &s) {
  std::string out = "'";
  for (char c : s)
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

}  // namespace

QbfResult run_external_solver(const std::string &command, const QbfProblem &p) {
  if (command.empty())
    throw std::invalid_argument("no external solver command given");
  TempFile file;
  {
    std::ofstream out(file.path());
    out << emit_qdimacs(p);
    if (!out)
      throw std::system_error(errno, std::generic_category(), "writing " + file.path().string());
  }
  const std::string cmd = command + " " + shell_quote(file.path().string());
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    throw std::system_error(errno, std::generic_category(), "popen");
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
    output.append(buf, got);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  QbfResult res;
  res.iterations = 1;
  if (code == 20) {
    res.verdict = QbfVerdict::False;
    return res;
  }
  if (code != 10) {
    res.verdict = QbfVerdict::Resource;
    return res;
  }
  res.verdict = QbfVerdict::True;
  std::istringstream lines(output);
  std::string line;
  bool certificate = false;
  std::vector<std::int8_t> values(p.num_vars + 1, -1);
  while (std::getline(lines, line)) {
    if (line.empty() || (line[0] != 'V' && line[0] != 'v'))
      continue;
    std::istringstream toks(line.substr(1));
    long long lit;
    while (toks >> lit && lit != 0) {
      const auto v = static_cast<std::size_t>(std::llabs(lit));
      if (v < values.size())
        values[v] = lit > 0 ? 1 : 0;
    }
    certificate = true;
  }
  if (certificate && !p.prefix.empty() && p.prefix.front().quant == Quant::Exists) {
    for (auto v : p.prefix.front().vars)
      if (values[v] < 0)
        values[v] = 0;
    res.outer = std::move(values);
  }
  return res;
}

SynthesisResult synthesize(const SpecFile &spec, std::size_t n, std::size_t k, const SynthOptions &opts) {
  const auto start = std::chrono::steady_clock::now();
  SynthesisResult res;
  res.backend = opts.backend;
  auto finish = [&] {
    res.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  };

  if (opts.backend == Backend::BruteForce) {
    try {
      res.witness = brute_force_synth(spec, n, k, opts.ceiling);
      res.verdict = res.witness ? Verdict::Realizable : Verdict::Unrealizable;
    } catch (const ResourceLimitError &) {
      res.verdict = Verdict::ResourceLimit;
    }
    return finish();
  }

  auto enc = encode_synthesis(spec, n, k, opts.encoding);
  res.stats.vars = enc.qbf.num_vars;
  res.stats.clauses = enc.qbf.clauses.size();
  res.stats.non_definitional = enc.layout.non_definitional();

  QbfResult q;
  if (opts.backend == Backend::InternalQbf) {
    QbfOptions qo = enc.guidance;
    qo.max_iterations = opts.max_iterations;
    q = solve_qbf(enc.qbf, qo);
  } else {
    std::string cmd = opts.external_command;
    if (cmd.empty())
      if (const char *env = std::getenv("LASSYNT_SOLVER"))
        cmd = env;
    q = run_external_solver(cmd, enc.qbf);
  }
  res.stats.iterations = q.iterations;

  switch (q.verdict) {
  case QbfVerdict::False:
    res.verdict = Verdict::Unrealizable;
    break;
  case QbfVerdict::Resource:
    res.verdict = Verdict::ResourceLimit;
    break;
  case QbfVerdict::True: {
    if (q.outer.empty())
      throw std::runtime_error("solver reported a solution without an assignment");
    auto sys = decode_system([&](std::uint32_t v) { return v < q.outer.size() && q.outer[v] == 1; },
                             enc.layout, spec);
    if (!models_lasso_precise(sys, spec.formula, k))
      throw WitnessMismatch("decoded witness violates the specification on some input lasso");
    res.verdict = Verdict::Realizable;
    res.witness = std::move(sys);
    break;
  }
  }
  return finish();
}

ApproxResult approx_synthesize(const SpecFile &spec, std::size_t n, std::size_t k, double epsilon,
                               std::uint64_t ceiling) {
  auto best = brute_force_max_rate(spec, n, k, ceiling);
  ApproxResult res;
  res.best = std::move(best.system);
  res.index = best.index;
  // recomputed independently of the search
  res.rate = satisfaction_rate(res.best, spec.formula, k);
  res.epsilon = epsilon;
  res.epsilon_met = res.rate.satisfied * 1.0 >= (1.0 - epsilon) * static_cast<double>(res.rate.total) - 1e-12;
  return res;
}

void export_counting(const SpecFile &spec, std::size_t n, std::size_t k, const std::filesystem::path &path,
                     const EncodingOptions &opts) {
  const auto enc = encode_counting(spec, n, k, opts);
  std::ofstream out(path);
  out << emit_counting(enc.problem);
  if (!out)
    throw std::system_error(errno, std::generic_category(), "writing " + path.string());
}

CheckResult check(const SpecFile &spec, const TransitionSystem &sys, std::size_t k) {
  if (sys.inputs != spec.inputs || sys.outputs != spec.outputs)
    throw std::invalid_argument("system propositions do not match the specification");
  sys.validate();
  CheckResult res;
  res.violation = find_violation(sys, spec.formula, k);
  res.holds = !res.violation;
  if (res.violation)
    res.violation_text = format_lasso(*res.violation, spec.inputs);
  return res;
}

namespace {

json stats_json(const SynthStats &s) {
  return {{"vars", s.vars},
          {"clauses", s.clauses},
          {"non_definitional_vars", s.non_definitional},
          {"iterations", s.iterations},
          {"seconds", s.seconds}};
}

}  // namespace

std::string result_to_json(const SynthesisResult &r, int indent) {
  json j = {{"verdict", verdict_name(r.verdict)}, {"backend", backend_name(r.backend)}};
  if (r.witness)
    j["witness"] = json::parse(system_to_json(*r.witness));
  j["stats"] = stats_json(r.stats);
  return j.dump(indent);
}

std::string approx_to_json(const ApproxResult &r, int indent) {
  json j = {{"verdict", r.rate.satisfied == r.rate.total ? "realizable" : "approximate"},
            {"witness", json::parse(system_to_json(r.best))},
            {"rate", {{"satisfied", r.rate.satisfied}, {"total", r.rate.total}, {"value", r.rate.value()}}},
            {"epsilon", r.epsilon},
            {"epsilon_met", r.epsilon_met},
            {"stats", {{"canonical_index", r.index}}}};
  return j.dump(indent);
}

}  // namespace lassynt
