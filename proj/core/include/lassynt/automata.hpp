#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lassynt/lasso.hpp"

namespace lassynt {

/// Complete deterministic finite automaton over letters 0 .. num_letters-1.
struct Dfa {
  std::size_t num_letters = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> delta;  // state * num_letters + letter
  std::vector<bool> accepting;

  std::size_t size() const { return accepting.size(); }
  std::uint32_t next(std::uint32_t state, Letter a) const {
    return delta[state * num_letters + a];
  }
  std::uint32_t run(std::span<const Letter> w) const;
  bool accepts(std::span<const Letter> w) const { return accepting[run(w)]; }
};

/// Reachable part of the DFA for the prefixes of words whose input
/// projection is a length-k lasso. States store the first k letters read
/// (padded with '#') and one tracker per possible loop start.
struct PrefixDfa {
  static constexpr int kPad = -1;      // '#'
  static constexpr std::uint8_t kDead = 0;  // tracker '-'

  struct State {
    std::vector<int> stored;              // k entries, letter or kPad
    std::vector<std::uint8_t> trackers;   // k entries, 1-based position or kDead
  };

  std::vector<std::string> inputs;
  std::size_t k = 0;
  Dfa dfa;
  std::vector<State> states;

  std::size_t size() const { return dfa.size(); }
  bool all_trackers_dead(std::uint32_t state) const;
};

PrefixDfa build_prefix_dfa(std::vector<std::string> inputs, std::size_t k);

/// Acceptance of a word over 2^I (letters are input masks).
bool dfa_accepts(const PrefixDfa &dfa, std::span<const Letter> w);

/// Language-equivalent minimal DFA (Moore partition refinement).
Dfa minimize_dfa(const Dfa &dfa);
Dfa minimize_dfa(const PrefixDfa &dfa);

/// Positive Boolean combination of states.
struct PosBool {
  enum class Kind : std::uint8_t { True, False, State, And, Or };
  Kind kind = Kind::True;
  std::uint32_t state = 0;
  std::vector<PosBool> children;

  static PosBool of(std::uint32_t q) { return {Kind::State, q, {}}; }
  static PosBool all(std::vector<PosBool> c) { return {Kind::And, 0, std::move(c)}; }
  static PosBool any(std::vector<PosBool> c) { return {Kind::Or, 0, std::move(c)}; }
};

/// Parity automaton over 2^props. Transitions may be alternating, but the
/// product and acceptance operations require the deterministic shape.
struct ParityAutomaton {
  std::vector<std::string> props;
  std::size_t num_states = 0;
  std::vector<std::uint32_t> initial;
  std::vector<PosBool> delta;  // state * num_letters + letter
  std::vector<std::uint32_t> colors;

  std::size_t num_letters() const { return std::size_t{1} << props.size(); }
  std::uint32_t max_color() const;
  bool is_deterministic() const;
  /// Successor of a deterministic automaton; throws otherwise.
  std::uint32_t successor(std::uint32_t q, Letter a) const;

  static ParityAutomaton deterministic(std::vector<std::string> props,
                                       std::uint32_t initial,
                                       std::span<const std::uint32_t> successors,
                                       std::vector<std::uint32_t> colors);
};

/// Product with the prefix DFA: states (q, d), the DFA reading the input
/// projection of each letter; color μ(q) while d accepts and 0 afterwards.
/// State index is q * dfa.size() + d over the reachable pairs, renumbered.
ParityAutomaton lift_parity(const ParityAutomaton &a, const PrefixDfa &dfa);

/// Whether the highest color seen infinitely often on the run over `trace`
/// is even. `a` must be deterministic.
bool parity_accepts_lasso(const ParityAutomaton &a, const Lasso &trace);

std::string to_dot(const PrefixDfa &dfa);
/// Letters rendered as brace-sets over `props`.
std::string to_dot(const Dfa &dfa, std::span<const std::string> props);
std::string to_dot(const ParityAutomaton &a);

}  // namespace lassynt
