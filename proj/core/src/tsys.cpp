#include "lassynt/tsys.hpp"

#include <limits>
#include <map>
#include <sstream>

namespace lassynt {

void TransitionSystem::validate() const {
  if (num_states == 0)
    throw std::invalid_argument("transition system needs at least one state");
  if (trans.size() != num_states * num_letters())
    throw std::invalid_argument("transition table has the wrong size");
  if (labels.size() != num_states)
    throw std::invalid_argument("label table has the wrong size");
  for (auto t : trans)
    if (t >= num_states)
      throw std::invalid_argument("transition target out of range");
  const Letter out_mask = (Letter{1} << outputs.size()) - 1;
  for (auto l : labels)
    if (l & ~out_mask)
      throw std::invalid_argument("label uses an undeclared output");
}

namespace {

// Reusable trace builder for many runs of one system shape.
class TraceRunner {
public:
  // Writes the trace base into `out` and returns the loop start.
  std::size_t run(const TransitionSystem &sys, std::span<const Letter> input_base,
                  std::size_t input_loop, std::vector<Letter> &out) {
    const std::size_t k = input_base.size();
    first_visit_.assign(sys.num_states * k, -1);
    out.clear();
    std::uint32_t t = 0;
    std::size_t pos = 0;
    while (true) {
      int &seen = first_visit_[t * k + pos];
      if (seen >= 0)
        return static_cast<std::size_t>(seen);
      seen = static_cast<int>(out.size());
      const Letter in = input_base[pos];
      out.push_back(sys.trace_letter(t, in));
      t = sys.next(t, in);
      pos = pos + 1 < k ? pos + 1 : input_loop;
    }
  }

private:
  std::vector<int> first_visit_;
};

// Checks many systems against phi on all words of L_k.
class PreciseChecker {
public:
  PreciseChecker(const LtlFormula &phi, const std::vector<std::string> &inputs,
                 const std::vector<std::string> &outputs, std::size_t k)
      : words_(enumerate_k_words(full_alphabet(inputs.size()), k)),
        eval_(phi, concat(inputs, outputs)) {
    for (const auto &w : words_)
      bases_.push_back(w.representative.base());
  }

  const std::vector<CanonicalWord> &words() const { return words_; }

  bool holds_on(const TransitionSystem &sys, std::size_t word) {
    const std::size_t loop =
        runner_.run(sys, bases_[word], words_[word].representative.prefix.size(), buf_);
    return eval_.evaluate(buf_, loop);
  }

  std::optional<std::size_t> first_violation(const TransitionSystem &sys) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (!holds_on(sys, w))
        return w;
    return std::nullopt;
  }

  // Counts satisfied words; stops once `need` can no longer be reached.
  std::uint64_t count(const TransitionSystem &sys, std::uint64_t need) {
    std::uint64_t sat = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (holds_on(sys, w))
        ++sat;
      else if (words_.size() - (w + 1) + sat < need)
        return sat;
    }
    return sat;
  }

private:
  static std::vector<std::string> concat(std::vector<std::string> a,
                                         const std::vector<std::string> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::vector<CanonicalWord> words_;
  std::vector<Word> bases_;
  LassoEvaluator eval_;
  TraceRunner runner_;
  std::vector<Letter> buf_;
};

}  // namespace

Lasso trace_on_input(const TransitionSystem &sys, const Lasso &input) {
  if (input.period.empty())
    throw std::invalid_argument("input lasso needs a nonempty period");
  TraceRunner runner;
  std::vector<Letter> base;
  const Word in = input.base();
  const std::size_t loop = runner.run(sys, in, input.prefix.size(), base);
  return make_lasso(base, loop);
}

std::optional<Lasso> find_violation(const TransitionSystem &sys,
                                    const LtlFormula &phi, std::size_t k) {
  PreciseChecker checker(phi, sys.inputs, sys.outputs, k);
  if (auto w = checker.first_violation(sys))
    return checker.words()[*w].representative;
  return std::nullopt;
}

bool models_lasso_precise(const TransitionSystem &sys, const LtlFormula &phi,
                          std::size_t k) {
  return !find_violation(sys, phi, k).has_value();
}

Rate satisfaction_rate(const TransitionSystem &sys, const LtlFormula &phi,
                       std::size_t k) {
  PreciseChecker checker(phi, sys.inputs, sys.outputs, k);
  Rate r;
  r.total = checker.words().size();
  r.satisfied = checker.count(sys, 0);
  return r;
}

Lasso compose(const TransitionSystem &sys, const Environment &env) {
  if (env.num_inputs != sys.inputs.size() || env.num_outputs != sys.outputs.size())
    throw std::invalid_argument("environment and system alphabets differ");
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> visit;
  Word base;
  std::uint32_t t = 0, s = 0;
  while (true) {
    auto [it, fresh] = visit.emplace(std::pair{t, s}, base.size());
    if (!fresh)
      return make_lasso(base, it->second);
    const Letter in = env.emits[s];
    base.push_back(sys.trace_letter(t, in));
    t = sys.next(t, in);
    s = env.trans[s * (std::size_t{1} << env.num_outputs) + sys.labels[t]];
  }
}

bool check_under_env(const TransitionSystem &sys, const Environment &env,
                     const LtlFormula &phi) {
  std::vector<std::string> props = sys.inputs;
  props.insert(props.end(), sys.outputs.begin(), sys.outputs.end());
  return eval_on_lasso(phi, props, compose(sys, env));
}

std::uint64_t system_count(std::size_t n, std::size_t num_inputs,
                           std::size_t num_outputs) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  auto mul = [&](std::uint64_t f) {
    if (f != 0 && count > kMax / f)
      count = kMax;
    else
      count *= f;
  };
  const std::size_t rows = n << num_inputs;
  for (std::size_t i = 0; i < rows && count != kMax; ++i)
    mul(n);
  for (std::size_t i = 0; i < n * num_outputs && count != kMax; ++i)
    mul(2);
  return count;
}

TransitionSystem system_at(std::uint64_t index, std::size_t n,
                           const std::vector<std::string> &inputs,
                           const std::vector<std::string> &outputs) {
  TransitionSystem sys;
  sys.inputs = inputs;
  sys.outputs = outputs;
  sys.num_states = n;
  const std::size_t label_bits = n * outputs.size();
  if (label_bits >= 64)
    throw std::invalid_argument("too many label bits");
  std::uint64_t labels = index & ((std::uint64_t{1} << label_bits) - 1);
  std::uint64_t rest = index >> label_bits;
  sys.labels.assign(n, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t o = 0; o < outputs.size(); ++o)
      if (labels & (std::uint64_t{1} << (t * outputs.size() + o)))
        sys.labels[t] |= Letter{1} << o;
  const std::size_t rows = n * sys.num_letters();
  sys.trans.assign(rows, 0);
  for (std::size_t r = rows; r-- > 0;) {
    sys.trans[r] = static_cast<std::uint32_t>(rest % n);
    rest /= n;
  }
  return sys;
}

void enumerate_systems(std::size_t n, const std::vector<std::string> &inputs,
                       const std::vector<std::string> &outputs,
                       const std::function<bool(const TransitionSystem &)> &visit,
                       std::uint64_t ceiling) {
  if (n == 0)
    throw std::invalid_argument("system size must be positive");
  const std::uint64_t count = system_count(n, inputs.size(), outputs.size());
  if (count > ceiling)
    throw ResourceLimitError("enumeration of " + std::to_string(count) +
                             " candidate systems exceeds the ceiling of " +
                             std::to_string(ceiling));
  for (std::uint64_t i = 0; i < count; ++i)
    if (!visit(system_at(i, n, inputs, outputs)))
      return;
}

std::vector<Environment> enumerate_environments(std::size_t num_states,
                                                std::size_t num_inputs,
                                                std::size_t num_outputs) {
  // Environments are transition systems with the roles of I and O swapped.
  std::vector<std::string> env_in(num_outputs), env_out(num_inputs);
  for (std::size_t i = 0; i < num_outputs; ++i)
    env_in[i] = "o" + std::to_string(i);
  for (std::size_t i = 0; i < num_inputs; ++i)
    env_out[i] = "i" + std::to_string(i);
  std::vector<Environment> envs;
  enumerate_systems(num_states, env_in, env_out, [&](const TransitionSystem &t) {
    envs.push_back(Environment{num_states, num_inputs, num_outputs, t.trans, t.labels});
    return true;
  });
  return envs;
}

std::optional<TransitionSystem> brute_force_synth(const SpecFile &spec, std::size_t n,
                                                  std::size_t k, std::uint64_t ceiling) {
  PreciseChecker checker(spec.formula, spec.inputs, spec.outputs, k);
  std::optional<TransitionSystem> found;
  enumerate_systems(
      n, spec.inputs, spec.outputs,
      [&](const TransitionSystem &sys) {
        if (!checker.first_violation(sys)) {
          found = sys;
          return false;
        }
        return true;
      },
      ceiling);
  return found;
}

BestRate brute_force_max_rate(const SpecFile &spec, std::size_t n, std::size_t k,
                              std::uint64_t ceiling) {
  PreciseChecker checker(spec.formula, spec.inputs, spec.outputs, k);
  const std::uint64_t total = checker.words().size();
  BestRate best;
  best.rate.total = total;
  bool have = false;
  std::uint64_t index = 0;
  enumerate_systems(
      n, spec.inputs, spec.outputs,
      [&](const TransitionSystem &sys) {
        const std::uint64_t need = have ? best.rate.satisfied + 1 : 0;
        const std::uint64_t sat = checker.count(sys, need);
        if (!have || sat > best.rate.satisfied) {
          best.system = sys;
          best.rate.satisfied = sat;
          best.index = index;
          have = true;
        }
        ++index;
        return best.rate.satisfied < total;
      },
      ceiling);
  return best;
}

std::string to_dot(const TransitionSystem &sys) {
  std::ostringstream os;
  os << "digraph system {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t t = 0; t < sys.num_states; ++t)
    os << "  t" << t << " [label=\"t" << t << "\\n"
       << format_letter(sys.labels[t], sys.outputs) << "\"];\n";
  os << "  init -> t0;\n";
  for (std::size_t t = 0; t < sys.num_states; ++t)
    for (Letter a = 0; a < sys.num_letters(); ++a)
      os << "  t" << t << " -> t" << sys.next(static_cast<std::uint32_t>(t), a)
         << " [label=\"" << format_letter(a, sys.inputs) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace lassynt
