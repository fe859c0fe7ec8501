#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lassynt/bool_expr.hpp"

namespace lassynt {

enum class Quant : std::uint8_t { Exists, Forall };

struct QuantBlock {
  Quant quant = Quant::Exists;
  std::vector<std::uint32_t> vars;
};

/// Prenex CNF. `root`, when set, names the literal whose unit clause asserts
/// the matrix; every other clause is then a definition of an inner variable.
struct QbfProblem {
  std::uint32_t num_vars = 0;
  std::vector<QuantBlock> prefix;
  std::vector<std::vector<int>> clauses;
  std::optional<int> root;
  std::vector<std::string> comments;  // emitted as leading `c` lines

  /// Throws std::invalid_argument if a variable is undeclared or repeated.
  void validate() const;
};

class QdimacsError : public std::runtime_error {
public:
  QdimacsError(const std::string &msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

std::string emit_qdimacs(const QbfProblem &p);
QbfProblem parse_qdimacs(std::string_view text);

enum class QbfVerdict { True, False, Resource };

struct QbfResult {
  QbfVerdict verdict = QbfVerdict::Resource;
  std::vector<std::int8_t> outer;  // outer[v] for v in the outer block, 1/0
  std::uint64_t iterations = 0;
};

struct QbfOptions {
  std::uint64_t max_iterations = 1'000'000;
  /// Optional stronger refinement. Copies for a counterexample fix only the
  /// universals outside `relaxed`, rename the relaxed ones like inner
  /// variables, and assert `relaxed_root` instead of the root. Required for
  /// soundness: whenever relaxed_root is unsatisfiable for an outer and
  /// fixed-universal assignment, the matrix fails for some completion of the
  /// relaxed universals. This is only required for counterexamples that set
  /// `relaxed_guard`, when given; others get a full copy. A repeated fixed
  /// part also falls back to a full copy.
  std::vector<std::uint32_t> relaxed;
  std::optional<int> relaxed_root;
  std::optional<int> relaxed_guard;
};

/// Counterexample-guided solver for ∃X ∀U ∃Z problems (blocks may be absent)
/// where Z is functionally defined. Without a root annotation, Z must be empty.
QbfResult solve_qbf(const QbfProblem &p, const QbfOptions &opts = {});

/// Reference solver: conjoins one matrix copy per universal assignment.
QbfResult solve_qbf_by_expansion(const QbfProblem &p, std::uint32_t max_universals = 16);

/// max over max-set assignments of the number of count-set projections of
/// models; the remaining variables are existential.
struct CountingProblem {
  Cnf cnf;
  std::vector<std::uint32_t> max_set;
  std::vector<std::uint32_t> count_set;
  std::vector<std::string> comments;
};

struct MaxCountResult {
  std::uint64_t count = 0;
  std::vector<std::int8_t> maximizer;  // indexed by variable; max-set only
  std::uint64_t candidates = 0;        // distinct max-set projections visited
};

/// Exhaustive projected enumeration with blocking clauses. Candidates whose
/// count cannot beat the incumbent are still counted in full: the routine is
/// a reference, not a fast counter.
MaxCountResult max_projected_count(const CountingProblem &p);

/// Number of count-set projections of models of `cnf` under `assumptions`.
std::uint64_t projected_count(const Cnf &cnf, const std::vector<std::uint32_t> &count_set,
                              const std::vector<int> &assumptions = {});

/// DIMACS with `c max` / `c count` headers.
std::string emit_counting(const CountingProblem &p);
CountingProblem parse_counting(std::string_view text);

}  // namespace lassynt
