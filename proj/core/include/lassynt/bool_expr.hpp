#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lassynt {

enum class VarRole : std::uint8_t {
  System,         // τ_{t,i,t'}
  Label,          // o_t
  Input,          // i_j
  InputLoop,      // l_j
  RunOutput,      // o_j
  RunState,       // t_j
  RunLoop,        // l'_j
  Counting,       // unrolling variables
  Definitional,   // Tseitin
};

const char *role_name(VarRole role);

/// Propositional variables numbered 1..size() with roles and readable names.
class VarTable {
public:
  std::uint32_t add(VarRole role, std::string name);
  std::uint32_t size() const { return static_cast<std::uint32_t>(roles_.size()); }
  VarRole role(std::uint32_t var) const { return roles_.at(var - 1); }
  const std::string &name(std::uint32_t var) const { return names_.at(var - 1); }
  std::vector<std::uint32_t> with_role(VarRole role) const;

private:
  std::vector<VarRole> roles_;
  std::vector<std::string> names_;
};

/// DAG of Boolean expressions with structural sharing and constant folding.
class ExprPool {
public:
  using Ref = std::uint32_t;
  enum class Kind : std::uint8_t { True, False, Var, Not, And, Or, Iff };
  struct Node {
    Kind kind;
    std::uint32_t var = 0;
    std::vector<Ref> kids;
  };

  ExprPool();

  Ref top() const { return 0; }
  Ref bottom() const { return 1; }
  Ref constant(bool v) const { return v ? top() : bottom(); }
  Ref var(std::uint32_t id);
  Ref negate(Ref a);
  Ref conj(std::vector<Ref> kids);
  Ref disj(std::vector<Ref> kids);
  Ref conj(Ref a, Ref b) { return conj(std::vector<Ref>{a, b}); }
  Ref disj(Ref a, Ref b) { return disj(std::vector<Ref>{a, b}); }
  Ref iff(Ref a, Ref b);
  Ref implies(Ref a, Ref b) { return disj(negate(a), b); }
  /// Exactly one of `xs`, pairwise encoded.
  Ref exactly_one(std::span<const Ref> xs);

  const Node &node(Ref r) const { return nodes_[r]; }
  std::size_t size() const { return nodes_.size(); }

  bool evaluate(Ref root, const std::function<bool(std::uint32_t)> &value) const;

private:
  Ref intern(Node n);

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t> &k) const noexcept;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, Ref, KeyHash> index_;
};

/// Clause list over DIMACS literals.
struct Cnf {
  std::uint32_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// Result of Tseitin conversion: clauses defining one fresh variable per
/// And/Or/Iff node (biconditionally), plus the unit clause asserting `root`.
struct TseitinResult {
  Cnf cnf;
  int root = 0;  // literal equivalent to the expression
  std::uint32_t first_definitional = 0;  // first fresh variable id
  std::vector<int> extra;  // literals for `extra_roots`, which are defined but not asserted
};

/// Definitional variables are appended to `vars` with role Definitional.
TseitinResult tseitin(const ExprPool &pool, ExprPool::Ref root, VarTable &vars,
                      std::span<const ExprPool::Ref> extra_roots = {});

}  // namespace lassynt
