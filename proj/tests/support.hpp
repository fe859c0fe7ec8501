#pragma once

#include <random>
#include <string>
#include <vector>

#include "lassynt/lasso.hpp"
#include "lassynt/ltl.hpp"
#include "lassynt/tsys.hpp"

namespace lassynt::testing {

/// Random formula of at most `depth` nested operators over `atoms`.
inline LtlFormula random_formula(std::mt19937 &rng, const std::vector<std::string> &atoms,
                                 int depth, bool nnf_only = false) {
  std::uniform_int_distribution<int> pick(0, nnf_only ? 7 : 10);
  const int op = depth <= 0 ? 0 : pick(rng);
  auto sub = [&] { return random_formula(rng, atoms, depth - 1, nnf_only); };
  const auto &name = atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)];
  switch (op) {
  case 0:
    return rng() % 2 ? LtlFormula::atom(name) : LtlFormula::neg_atom(name);
  case 1:
    return LtlFormula::make_and(sub(), sub());
  case 2:
    return LtlFormula::make_or(sub(), sub());
  case 3:
    return LtlFormula::next(sub());
  case 4:
    return LtlFormula::until(sub(), sub());
  case 5:
    return LtlFormula::release(sub(), sub());
  case 6:
    return LtlFormula::constant(rng() % 2);
  case 7:
    return LtlFormula::atom(name);
  case 8:
    return LtlFormula::make_not(sub());
  case 9:
    return LtlFormula::eventually(sub());
  default:
    return LtlFormula::globally(sub());
  }
}

/// Reference semantics: walks the lasso positions explicitly, one loop
/// around suffices for every fixpoint.
inline bool reference_eval(const LtlFormula &f, const std::vector<std::string> &props,
                           const Lasso &w, std::size_t pos) {
  const std::size_t n = w.length(), loop = w.prefix.size();
  auto succ = [&](std::size_t p) { return p + 1 < n ? p + 1 : loop; };
  auto letter = [&](std::size_t p) { return p < loop ? w.prefix[p] : w.period[p - loop]; };
  auto holds = [&](const std::string &a, std::size_t p) {
    for (std::size_t b = 0; b < props.size(); ++b)
      if (props[b] == a)
        return ((letter(p) >> b) & 1) != 0;
    throw std::invalid_argument("unknown atom");
  };
  switch (f.kind()) {
  case LtlKind::True:
    return true;
  case LtlKind::False:
    return false;
  case LtlKind::Atom:
    return holds(f.name(), pos);
  case LtlKind::NegAtom:
    return !holds(f.name(), pos);
  case LtlKind::Not:
    return !reference_eval(f.lhs(), props, w, pos);
  case LtlKind::And:
    return reference_eval(f.lhs(), props, w, pos) && reference_eval(f.rhs(), props, w, pos);
  case LtlKind::Or:
    return reference_eval(f.lhs(), props, w, pos) || reference_eval(f.rhs(), props, w, pos);
  case LtlKind::Next:
    return reference_eval(f.lhs(), props, w, succ(pos));
  case LtlKind::Eventually:
  case LtlKind::Until: {
    std::size_t p = pos;
    for (std::size_t step = 0; step <= n; ++step, p = succ(p)) {
      if (reference_eval(f.kind() == LtlKind::Until ? f.rhs() : f.lhs(), props, w, p))
        return true;
      if (f.kind() == LtlKind::Until && !reference_eval(f.lhs(), props, w, p))
        return false;
    }
    return false;
  }
  case LtlKind::Globally:
  case LtlKind::Release: {
    std::size_t p = pos;
    for (std::size_t step = 0; step <= n; ++step, p = succ(p)) {
      if (!reference_eval(f.kind() == LtlKind::Release ? f.rhs() : f.lhs(), props, w, p))
        return false;
      if (f.kind() == LtlKind::Release && reference_eval(f.lhs(), props, w, p))
        return true;
    }
    return true;
  }
  }
  return false;
}

/// All lassos of length 1..max_len over `alphabet_size` letters.
inline std::vector<Lasso> small_lassos(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Lasso> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i)
      total *= alphabet_size;
    for (std::size_t loop = 0; loop < len; ++loop)
      for (std::size_t code = 0; code < total; ++code) {
        Word base(len);
        std::size_t c = code;
        for (std::size_t i = 0; i < len; ++i, c /= alphabet_size)
          base[i] = static_cast<Letter>(c % alphabet_size);
        out.push_back(make_lasso(base, loop));
      }
  }
  return out;
}

/// Environments with 1..max_states states.
inline std::vector<Environment> small_environments(std::size_t max_states, std::size_t ni,
                                                   std::size_t no) {
  std::vector<Environment> out;
  for (std::size_t s = 1; s <= max_states; ++s)
    for (auto &e : enumerate_environments(s, ni, no))
      out.push_back(std::move(e));
  return out;
}

/// Both directions of the environment characterization for one system:
/// (1) all environments of size <= k satisfied implies k-lasso-precision;
/// (2) (k·n)-lasso-precision implies all environments of size <= k satisfied.
inline bool environment_characterization_holds(const TransitionSystem &sys,
                                               const LtlFormula &phi, std::size_t k,
                                               const std::vector<Environment> &envs) {
  bool all_envs = true;
  for (const auto &e : envs)
    if (e.num_states <= k && !check_under_env(sys, e, phi)) {
      all_envs = false;
      break;
    }
  if (all_envs && !models_lasso_precise(sys, phi, k))
    return false;
  if (models_lasso_precise(sys, phi, k * sys.num_states) && !all_envs)
    return false;
  return true;
}

}  // namespace lassynt::testing
