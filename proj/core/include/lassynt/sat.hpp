#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lassynt/bool_expr.hpp"

namespace lassynt {

/// Incremental CDCL solver over DIMACS literals (variables 1..n).
/// Watched literals, first-UIP learning, VSIDS with phase saving, Luby
/// restarts, solving under assumptions, clauses may be added between calls.
class SatSolver {
public:
  enum class Result { Sat, Unsat, Unknown };

  SatSolver();
  ~SatSolver();
  SatSolver(const SatSolver &) = delete;
  SatSolver &operator=(const SatSolver &) = delete;

  std::uint32_t num_vars() const;
  std::uint32_t new_var();
  void ensure_vars(std::uint32_t n);

  /// Returns false once the clause set is unsatisfiable at the root.
  bool add_clause(std::span<const int> lits);
  bool add_clause(std::initializer_list<int> lits) {
    return add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  /// conflict_limit < 0 means unbounded.
  Result solve(std::span<const int> assumptions = {}, std::int64_t conflict_limit = -1);

  /// Value of `var` in the last model (after Sat).
  bool value(std::uint32_t var) const;
  const std::vector<std::int8_t> &model() const;

  /// Assignment implied by unit propagation of `assumptions` on top of the
  /// root-level facts: entry v is 1, 0 or -1 (unassigned). nullopt on conflict.
  std::optional<std::vector<std::int8_t>> implied(std::span<const int> assumptions);

  std::uint64_t conflicts() const;
  std::uint64_t decisions() const;

private:
  struct Impl;
  Impl *impl_;
};

/// One-shot helper: a model (index v holds the value of variable v) or nullopt.
std::optional<std::vector<bool>> sat_solve(const Cnf &cnf, std::span<const int> assumptions = {});

}  // namespace lassynt
