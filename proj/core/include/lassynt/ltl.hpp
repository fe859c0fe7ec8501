#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lassynt/lasso.hpp"

namespace lassynt {

enum class LtlKind : std::uint8_t {
  Atom,
  NegAtom,
  True,
  False,
  And,
  Or,
  Not,
  Next,
  Until,
  Release,
  Eventually,
  Globally,
};

/// Immutable LTL syntax tree. Children are shared, so copies are cheap.
class LtlFormula {
public:
  LtlFormula();  // `true`

  static LtlFormula atom(std::string name);
  static LtlFormula neg_atom(std::string name);
  static LtlFormula constant(bool value);
  static LtlFormula make_not(LtlFormula f);
  static LtlFormula make_and(LtlFormula a, LtlFormula b);
  static LtlFormula make_or(LtlFormula a, LtlFormula b);
  static LtlFormula next(LtlFormula f);
  static LtlFormula until(LtlFormula a, LtlFormula b);
  static LtlFormula release(LtlFormula a, LtlFormula b);
  static LtlFormula eventually(LtlFormula f);
  static LtlFormula globally(LtlFormula f);
  /// `a -> b`, stored as `!a | b`.
  static LtlFormula implies(LtlFormula a, LtlFormula b);

  LtlKind kind() const;
  const std::string &name() const;  // atoms only
  const LtlFormula &lhs() const;    // unary child or left operand
  const LtlFormula &rhs() const;

  bool is_literal() const {
    return kind() == LtlKind::Atom || kind() == LtlKind::NegAtom;
  }
  bool is_nnf() const;
  std::size_t size() const;
  std::size_t depth() const;
  std::set<std::string> atoms() const;

  /// Fully parenthesized-where-needed text accepted by parse_ltl.
  std::string to_string() const;

  friend bool operator==(const LtlFormula &a, const LtlFormula &b);

private:
  struct Node;
  explicit LtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class LtlParseError : public std::runtime_error {
public:
  LtlParseError(const std::string &msg, std::size_t position)
      : std::runtime_error(msg), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Parses infix LTL. Precedence, tightest first: `! X F G`, `U R` (right
/// associative), `&`, `|`, `->` (right associative). Every atom must be in
/// `declared_atoms`.
LtlFormula parse_ltl(std::string_view text,
                     const std::set<std::string> &declared_atoms);

/// Negation normal form over literals, `&`, `|`, `X`, `U`, `R`.
LtlFormula to_nnf(const LtlFormula &f);

/// Exact satisfaction on the ultimately periodic word `trace`. Letters of
/// the trace are bit masks over `props` (bit b <=> props[b] holds).
bool eval_on_lasso(const LtlFormula &f, const std::vector<std::string> &props,
                   const Lasso &trace);

/// Compiled evaluator for repeated evaluation of one formula against many
/// lassos over a fixed proposition list. Thread-safe for concurrent evaluate().
class LassoEvaluator {
public:
  LassoEvaluator(const LtlFormula &f, const std::vector<std::string> &props);

  bool evaluate(const Lasso &trace) const;
  /// Same as evaluate() on the word base[0..n) with successor n-1 -> loop_start.
  bool evaluate(std::span<const Letter> base, std::size_t loop_start) const;

private:
  struct Op {
    LtlKind kind;
    std::uint32_t bit = 0;  // atoms
    std::int32_t a = -1;
    std::int32_t b = -1;
  };
  std::vector<Op> ops_;  // postorder, root last
};

}  // namespace lassynt
