#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lassynt/lasso.hpp"
#include "lassynt/ltl.hpp"
#include "lassynt/spec_file.hpp"

namespace lassynt {

/// Deterministic Moore machine: 2^O-labeled 2^I-transition system with
/// initial state 0. Input letters are masks over `inputs`, labels masks over
/// `outputs`.
struct TransitionSystem {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::size_t num_states = 0;
  std::vector<std::uint32_t> trans;   // state * 2^|I| + input letter
  std::vector<Letter> labels;         // per state

  std::size_t num_letters() const { return std::size_t{1} << inputs.size(); }
  std::uint32_t next(std::uint32_t state, Letter input) const {
    return trans[state * num_letters() + input];
  }
  /// Trace letter over I ∪ O (inputs in the low bits).
  Letter trace_letter(std::uint32_t state, Letter input) const {
    return input | (labels[state] << inputs.size());
  }
  /// Throws std::invalid_argument if the tables are inconsistent.
  void validate() const;

  friend bool operator==(const TransitionSystem &, const TransitionSystem &) = default;
};

/// Finite-state environment: 2^I-labeled 2^O-transition system, initial 0.
struct Environment {
  std::size_t num_states = 0;
  std::size_t num_inputs = 0;   // |I|
  std::size_t num_outputs = 0;  // |O|
  std::vector<std::uint32_t> trans;  // state * 2^|O| + output letter
  std::vector<Letter> emits;         // input letter per state
};

class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Runs `sys` on `input` until a (state, base position) pair repeats and
/// returns the trace lasso over I ∪ O; its length is at most n·k.
Lasso trace_on_input(const TransitionSystem &sys, const Lasso &input);

/// Returns a violating input lasso (a canonical representative) or nullopt
/// when `sys` satisfies `phi` on every input word of L_k.
std::optional<Lasso> find_violation(const TransitionSystem &sys,
                                    const LtlFormula &phi, std::size_t k);
bool models_lasso_precise(const TransitionSystem &sys, const LtlFormula &phi,
                          std::size_t k);

/// Exact fraction of L_k input words on which the trace satisfies phi.
struct Rate {
  std::uint64_t satisfied = 0;
  std::uint64_t total = 0;

  double value() const { return total ? double(satisfied) / double(total) : 0.0; }
  friend bool operator==(const Rate &a, const Rate &b) {
    return a.satisfied * b.total == b.satisfied * a.total;
  }
  friend bool operator<(const Rate &a, const Rate &b) {
    return a.satisfied * b.total < b.satisfied * a.total;
  }
};

Rate satisfaction_rate(const TransitionSystem &sys, const LtlFormula &phi,
                       std::size_t k);

/// Trace of the closed loop of `sys` and `env`: the environment emits the
/// current input from its state and advances on the system's next output.
Lasso compose(const TransitionSystem &sys, const Environment &env);
bool check_under_env(const TransitionSystem &sys, const Environment &env,
                     const LtlFormula &phi);

inline constexpr std::uint64_t kDefaultCandidateCeiling = 100'000'000;

/// n^(n·2^|I|) · 2^(n·|O|), saturating at UINT64_MAX.
std::uint64_t system_count(std::size_t n, std::size_t num_inputs,
                           std::size_t num_outputs);

/// Candidate `index` in canonical order: successor table read row-major as a
/// base-n number (first entry most significant), labels as a binary counter
/// (bit t·|O|+o is output o of state t) varying fastest.
TransitionSystem system_at(std::uint64_t index, std::size_t n,
                           const std::vector<std::string> &inputs,
                           const std::vector<std::string> &outputs);

/// Visits every system of size n in canonical order until `visit` returns
/// false. Throws ResourceLimitError above `ceiling` candidates.
void enumerate_systems(std::size_t n, const std::vector<std::string> &inputs,
                       const std::vector<std::string> &outputs,
                       const std::function<bool(const TransitionSystem &)> &visit,
                       std::uint64_t ceiling = kDefaultCandidateCeiling);

/// All environments with `num_states` states over |I| inputs and |O| outputs.
std::vector<Environment> enumerate_environments(std::size_t num_states,
                                                std::size_t num_inputs,
                                                std::size_t num_outputs);

/// First system in canonical order that is a k-lasso-precise implementation.
std::optional<TransitionSystem>
brute_force_synth(const SpecFile &spec, std::size_t n, std::size_t k,
                  std::uint64_t ceiling = kDefaultCandidateCeiling);

struct BestRate {
  TransitionSystem system;
  Rate rate;
  std::uint64_t index = 0;
};

/// Exact maximizer of satisfaction_rate over all systems of size n; ties go
/// to the earliest system in canonical order.
BestRate brute_force_max_rate(const SpecFile &spec, std::size_t n, std::size_t k,
                              std::uint64_t ceiling = kDefaultCandidateCeiling);

std::string to_dot(const TransitionSystem &sys);

/// {"states", "inputs", "outputs", "labels": [[atoms]], "trans": [[succ]]};
/// `indent` < 0 gives the compact single-line form.
std::string system_to_json(const TransitionSystem &sys, int indent = -1);
/// Throws std::invalid_argument on malformed or inconsistent input.
TransitionSystem system_from_json(std::string_view text);

}  // namespace lassynt
