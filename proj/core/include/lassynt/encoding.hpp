#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lassynt/bool_expr.hpp"
#include "lassynt/ltl.hpp"
#include "lassynt/qbf.hpp"
#include "lassynt/spec_file.hpp"
#include "lassynt/tsys.hpp"

namespace lassynt {

/// How the run window of length n·k is closed into a loop.
enum class LoopClosure {
  /// The loop target must agree with the input lasso: l'_j ∧ l_{j'} is
  /// excluded unless positions j and n·k map to the same base position.
  Consistent,
  /// Loop target constrained by the system state only.
  StateOnly,
};

struct EncodingOptions {
  LoopClosure closure = LoopClosure::Consistent;
};

/// Variable numbering for an (n, k) instance. Blocks are allocated in the
/// order τ, o_t, i_j, l_j, o_j, t_j, l'_j, then counting variables if any.
class VarLayout {
public:
  VarLayout(std::size_t n, std::size_t k, std::size_t num_inputs, std::size_t num_outputs,
            bool with_counting = false);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t m() const { return n_ * k_; }
  std::size_t num_inputs() const { return ni_; }
  std::size_t num_outputs() const { return no_; }
  std::size_t num_letters() const { return std::size_t{1} << ni_; }
  bool with_counting() const { return counting_; }

  std::uint32_t tau(std::size_t t, std::size_t letter, std::size_t t2) const;
  std::uint32_t label(std::size_t t, std::size_t o) const;
  std::uint32_t input(std::size_t x, std::size_t j) const;
  std::uint32_t loop(std::size_t j) const;
  std::uint32_t run_output(std::size_t o, std::size_t j) const;
  std::uint32_t run_state(std::size_t t, std::size_t j) const;
  std::uint32_t run_loop(std::size_t j) const;
  std::uint32_t counting(std::size_t x, std::size_t p) const;

  /// Variables excluding definitional and counting ones.
  std::size_t non_definitional() const { return core_; }
  /// n·(n·2^|I| + |O|) + k·(|I|+1) + n·k·(|O|+n+1).
  static std::size_t expected_count(std::size_t n, std::size_t k, std::size_t ni, std::size_t no);

  VarTable &vars() { return vars_; }
  const VarTable &vars() const { return vars_; }

private:
  std::size_t n_, k_, ni_, no_;
  bool counting_;
  std::uint32_t tau0_, label0_, input0_, loop0_, rout0_, rstate0_, rloop0_, count0_;
  std::size_t core_;
  VarTable vars_;
};

using Ref = ExprPool::Ref;

Ref encode_det(ExprPool &pool, const VarLayout &layout);
Ref encode_loop_onehot(ExprPool &pool, const VarLayout &layout,
                       LoopClosure closure = LoopClosure::Consistent);
Ref encode_membership(ExprPool &pool, const VarLayout &layout);
/// ⟦phi⟧_0 over the run window; `phi` must be in negation normal form over
/// the spec propositions (inputs first, then outputs).
Ref encode_ltl(ExprPool &pool, const VarLayout &layout, const LtlFormula &phi,
               const std::vector<std::string> &inputs, const std::vector<std::string> &outputs);
/// ⟦k⟧_0: counting variables equal the 2k-unrolling of the input lasso.
Ref encode_unrolling(ExprPool &pool, const VarLayout &layout);

struct SynthesisEncoding {
  VarLayout layout;
  QbfProblem qbf;
  /// Refinement guidance for solve_qbf: the run variables may be relaxed,
  /// with φ_det ∧ φ_lasso ∧ φ_∈T ∧ ⟦φ⟧ as the relaxed root, guarded by the
  /// input loop being one-hot. Sound because every deterministic system has
  /// a run satisfying φ_lasso ∧ φ_∈T on every input lasso.
  QbfOptions guidance;
};

SynthesisEncoding encode_synthesis(const SpecFile &spec, std::size_t n, std::size_t k,
                                   const EncodingOptions &opts = {});

struct CountingEncoding {
  VarLayout layout;
  CountingProblem problem;
};

CountingEncoding encode_counting(const SpecFile &spec, std::size_t n, std::size_t k,
                                 const EncodingOptions &opts = {});

/// Reads τ and label variables; throws std::invalid_argument if some τ
/// group is not exactly one.
TransitionSystem decode_system(const std::function<bool(std::uint32_t)> &value,
                               const VarLayout &layout, const SpecFile &spec);

}  // namespace lassynt
