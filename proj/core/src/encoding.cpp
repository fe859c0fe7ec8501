#include "lassynt/encoding.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "lassynt/lasso.hpp"

namespace lassynt {

namespace {

std::string idx(std::initializer_list<std::size_t> xs) {
  std::string s = "[";
  bool first = true;
  for (auto x : xs) {
    if (!first)
      s += ',';
    s += std::to_string(x);
    first = false;
  }
  return s + "]";
}

}  // namespace

VarLayout::VarLayout(std::size_t n, std::size_t k, std::size_t num_inputs, std::size_t num_outputs,
                     bool with_counting)
    : n_(n), k_(k), ni_(num_inputs), no_(num_outputs), counting_(with_counting) {
  if (n == 0 || k == 0)
    throw std::invalid_argument("n and k must be positive");
  if (num_inputs > 16)
    throw std::invalid_argument("too many inputs");
  const std::size_t L = num_letters(), m = n * k;
  tau0_ = vars_.size() + 1;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t t2 = 0; t2 < n; ++t2)
        vars_.add(VarRole::System, "tau" + idx({t, i, t2}));
  label0_ = vars_.size() + 1;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t o = 0; o < no_; ++o)
      vars_.add(VarRole::Label, "o_t" + idx({t, o}));
  input0_ = vars_.size() + 1;
  for (std::size_t x = 0; x < ni_; ++x)
    for (std::size_t j = 0; j < k; ++j)
      vars_.add(VarRole::Input, "i" + idx({x, j}));
  loop0_ = vars_.size() + 1;
  for (std::size_t j = 0; j < k; ++j)
    vars_.add(VarRole::InputLoop, "l" + idx({j}));
  rout0_ = vars_.size() + 1;
  for (std::size_t o = 0; o < no_; ++o)
    for (std::size_t j = 0; j < m; ++j)
      vars_.add(VarRole::RunOutput, "o" + idx({o, j}));
  rstate0_ = vars_.size() + 1;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t j = 0; j < m; ++j)
      vars_.add(VarRole::RunState, "t" + idx({t, j}));
  rloop0_ = vars_.size() + 1;
  for (std::size_t j = 0; j < m; ++j)
    vars_.add(VarRole::RunLoop, "l'" + idx({j}));
  core_ = vars_.size();
  count0_ = vars_.size() + 1;
  if (with_counting)
    for (std::size_t x = 0; x < ni_; ++x)
      for (std::size_t p = 0; p < 2 * k; ++p)
        vars_.add(VarRole::Counting, "u" + idx({x, p}));
}

std::uint32_t VarLayout::tau(std::size_t t, std::size_t letter, std::size_t t2) const {
  return tau0_ + static_cast<std::uint32_t>((t * num_letters() + letter) * n_ + t2);
}
std::uint32_t VarLayout::label(std::size_t t, std::size_t o) const {
  return label0_ + static_cast<std::uint32_t>(t * no_ + o);
}
std::uint32_t VarLayout::input(std::size_t x, std::size_t j) const {
  return input0_ + static_cast<std::uint32_t>(x * k_ + j);
}
std::uint32_t VarLayout::loop(std::size_t j) const { return loop0_ + static_cast<std::uint32_t>(j); }
std::uint32_t VarLayout::run_output(std::size_t o, std::size_t j) const {
  return rout0_ + static_cast<std::uint32_t>(o * m() + j);
}
std::uint32_t VarLayout::run_state(std::size_t t, std::size_t j) const {
  return rstate0_ + static_cast<std::uint32_t>(t * m() + j);
}
std::uint32_t VarLayout::run_loop(std::size_t j) const {
  return rloop0_ + static_cast<std::uint32_t>(j);
}
std::uint32_t VarLayout::counting(std::size_t x, std::size_t p) const {
  if (!counting_)
    throw std::logic_error("layout has no counting variables");
  return count0_ + static_cast<std::uint32_t>(x * 2 * k_ + p);
}

std::size_t VarLayout::expected_count(std::size_t n, std::size_t k, std::size_t ni, std::size_t no) {
  return n * (n * (std::size_t{1} << ni) + no) + k * (ni + 1) + n * k * (no + n + 1);
}

Ref encode_det(ExprPool &pool, const VarLayout &layout) {
  std::vector<Ref> groups;
  for (std::size_t t = 0; t < layout.n(); ++t)
    for (std::size_t i = 0; i < layout.num_letters(); ++i) {
      std::vector<Ref> xs;
      for (std::size_t t2 = 0; t2 < layout.n(); ++t2)
        xs.push_back(pool.var(layout.tau(t, i, t2)));
      groups.push_back(pool.exactly_one(xs));
    }
  return pool.conj(std::move(groups));
}

Ref encode_loop_onehot(ExprPool &pool, const VarLayout &layout, LoopClosure closure) {
  std::vector<Ref> ls, lps;
  for (std::size_t j = 0; j < layout.k(); ++j)
    ls.push_back(pool.var(layout.loop(j)));
  for (std::size_t j = 0; j < layout.m(); ++j)
    lps.push_back(pool.var(layout.run_loop(j)));
  std::vector<Ref> parts{pool.exactly_one(ls), pool.exactly_one(lps)};
  if (closure == LoopClosure::Consistent) {
    const std::size_t k = layout.k(), m = layout.m();
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t jp = 0; jp < k; ++jp)
        if (delta(j, k, jp) != delta(m, k, jp))
          parts.push_back(pool.negate(pool.conj(lps[j], ls[jp])));
  }
  return pool.conj(std::move(parts));
}

namespace {

// Input literal x (or its negation) at window position h: ⋀_{j'} (l_{j'} → x_{Δ(h,k,j')}).
Ref input_at(ExprPool &pool, const VarLayout &layout, std::size_t x, std::size_t h, bool positive) {
  std::vector<Ref> parts;
  for (std::size_t jp = 0; jp < layout.k(); ++jp) {
    Ref v = pool.var(layout.input(x, delta(h, layout.k(), jp)));
    parts.push_back(pool.implies(pool.var(layout.loop(jp)), positive ? v : pool.negate(v)));
  }
  return pool.conj(std::move(parts));
}

// Input letter `letter` read at window position h.
Ref letter_at(ExprPool &pool, const VarLayout &layout, std::size_t letter, std::size_t h) {
  std::vector<Ref> parts;
  for (std::size_t jp = 0; jp < layout.k(); ++jp) {
    const std::size_t d = delta(h, layout.k(), jp);
    std::vector<Ref> match;
    for (std::size_t x = 0; x < layout.num_inputs(); ++x) {
      Ref v = pool.var(layout.input(x, d));
      match.push_back((letter >> x) & 1 ? v : pool.negate(v));
    }
    parts.push_back(pool.implies(pool.var(layout.loop(jp)), pool.conj(std::move(match))));
  }
  return pool.conj(std::move(parts));
}

}  // namespace

Ref encode_membership(ExprPool &pool, const VarLayout &layout) {
  const std::size_t n = layout.n(), m = layout.m();
  std::vector<Ref> parts;
  // outputs follow the labels of the current state
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<Ref> eqs;
      for (std::size_t o = 0; o < layout.num_outputs(); ++o)
        eqs.push_back(pool.iff(pool.var(layout.run_output(o, j)), pool.var(layout.label(t, o))));
      parts.push_back(pool.implies(pool.var(layout.run_state(t, j)), pool.conj(std::move(eqs))));
    }
  parts.push_back(pool.var(layout.run_state(0, 0)));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t i = 0; i < layout.num_letters(); ++i) {
        const Ref guard = pool.conj(letter_at(pool, layout, i, j), pool.var(layout.run_state(t, j)));
        std::vector<Ref> steps;
        for (std::size_t t2 = 0; t2 < n; ++t2) {
          Ref target;
          if (j + 1 < m) {
            target = pool.var(layout.run_state(t2, j + 1));
          } else {
            std::vector<Ref> back;
            for (std::size_t jj = 0; jj < m; ++jj)
              back.push_back(pool.conj(pool.var(layout.run_loop(jj)), pool.var(layout.run_state(t2, jj))));
            target = pool.disj(std::move(back));
          }
          steps.push_back(pool.iff(pool.var(layout.tau(t, i, t2)), target));
        }
        parts.push_back(pool.implies(guard, pool.conj(std::move(steps))));
      }
  return pool.conj(std::move(parts));
}

namespace {

struct LtlEncoder {
  ExprPool &pool;
  const VarLayout &layout;
  const std::vector<std::string> &inputs;
  const std::vector<std::string> &outputs;
  std::vector<std::vector<std::array<Ref, 2>>> input_lits;  // [x][h][neg]

  std::vector<Ref> encode(const LtlFormula &f, std::size_t loop) {
    const std::size_t m = layout.m();
    std::vector<Ref> out(m);
    switch (f.kind()) {
    case LtlKind::True:
    case LtlKind::False:
      std::fill(out.begin(), out.end(), pool.constant(f.kind() == LtlKind::True));
      return out;
    case LtlKind::Atom:
    case LtlKind::NegAtom: {
      const bool pos = f.kind() == LtlKind::Atom;
      if (auto it = std::find(inputs.begin(), inputs.end(), f.name()); it != inputs.end()) {
        const auto x = static_cast<std::size_t>(it - inputs.begin());
        for (std::size_t h = 0; h < m; ++h)
          out[h] = input_lits[x][h][pos ? 0 : 1];
        return out;
      }
      auto it = std::find(outputs.begin(), outputs.end(), f.name());
      if (it == outputs.end())
        throw std::invalid_argument("undeclared proposition '" + f.name() + "'");
      const auto o = static_cast<std::size_t>(it - outputs.begin());
      for (std::size_t h = 0; h < m; ++h) {
        Ref v = pool.var(layout.run_output(o, h));
        out[h] = pos ? v : pool.negate(v);
      }
      return out;
    }
    case LtlKind::And:
    case LtlKind::Or: {
      auto a = encode(f.lhs(), loop), b = encode(f.rhs(), loop);
      for (std::size_t h = 0; h < m; ++h)
        out[h] = f.kind() == LtlKind::And ? pool.conj(a[h], b[h]) : pool.disj(a[h], b[h]);
      return out;
    }
    case LtlKind::Next: {
      auto a = encode(f.lhs(), loop);
      for (std::size_t h = 0; h + 1 < m; ++h)
        out[h] = a[h + 1];
      out[m - 1] = a[loop];
      return out;
    }
    case LtlKind::Until:
    case LtlKind::Release:
    case LtlKind::Eventually:
    case LtlKind::Globally: {
      std::vector<Ref> a, b;
      bool until;
      if (f.kind() == LtlKind::Until || f.kind() == LtlKind::Release) {
        a = encode(f.lhs(), loop);
        b = encode(f.rhs(), loop);
        until = f.kind() == LtlKind::Until;
      } else {
        until = f.kind() == LtlKind::Eventually;
        a.assign(m, pool.constant(until));
        b = encode(f.lhs(), loop);
      }
      // until: b ∨ (a ∧ next); release: b ∧ (a ∨ next)
      auto step = [&](Ref av, Ref bv, Ref next) {
        return until ? pool.disj(bv, pool.conj(av, next)) : pool.conj(bv, pool.disj(av, next));
      };
      // second round: one pass around the loop, closing with false (U) / true (R)
      std::vector<Ref> inner(m);
      Ref next = pool.constant(!until);
      for (std::size_t h = m; h-- > loop;) {
        inner[h] = step(a[h], b[h], next);
        next = inner[h];
      }
      next = inner[loop];
      for (std::size_t h = m; h-- > 0;) {
        out[h] = step(a[h], b[h], next);
        next = out[h];
      }
      return out;
    }
    case LtlKind::Not:
      throw std::invalid_argument("formula is not in negation normal form");
    }
    throw std::logic_error("unknown formula kind");
  }
};

}  // namespace

Ref encode_ltl(ExprPool &pool, const VarLayout &layout, const LtlFormula &phi,
               const std::vector<std::string> &inputs, const std::vector<std::string> &outputs) {
  if (!phi.is_nnf())
    throw std::invalid_argument("formula is not in negation normal form");
  if (inputs.size() != layout.num_inputs() || outputs.size() != layout.num_outputs())
    throw std::invalid_argument("proposition lists do not match the layout");
  LtlEncoder enc{pool, layout, inputs, outputs, {}};
  enc.input_lits.resize(inputs.size());
  for (std::size_t x = 0; x < inputs.size(); ++x)
    for (std::size_t h = 0; h < layout.m(); ++h)
      enc.input_lits[x].push_back({input_at(pool, layout, x, h, true), input_at(pool, layout, x, h, false)});
  std::vector<Ref> loops;
  for (std::size_t j = 0; j < layout.m(); ++j)
    loops.push_back(pool.conj(pool.var(layout.run_loop(j)), enc.encode(phi, j)[0]));
  return pool.disj(std::move(loops));
}

Ref encode_unrolling(ExprPool &pool, const VarLayout &layout) {
  std::vector<Ref> parts;
  const std::size_t k = layout.k();
  for (std::size_t p = 0; p < 2 * k; ++p)
    for (std::size_t x = 0; x < layout.num_inputs(); ++x)
      for (std::size_t jp = 0; jp < k; ++jp)
        parts.push_back(pool.implies(pool.var(layout.loop(jp)),
                                     pool.iff(pool.var(layout.counting(x, p)),
                                              pool.var(layout.input(x, delta(p, k, jp))))));
  return pool.conj(std::move(parts));
}

namespace {

std::vector<std::string> legend(const VarLayout &layout, const SpecFile &spec, std::size_t n,
                                std::size_t k) {
  std::vector<std::string> out;
  out.push_back("lassynt instance n=" + std::to_string(n) + " k=" + std::to_string(k));
  std::string in = "inputs:", outs = "outputs:";
  for (const auto &x : spec.inputs)
    in += " " + x;
  for (const auto &o : spec.outputs)
    outs += " " + o;
  out.push_back(in);
  out.push_back(outs);
  const auto &vars = layout.vars();
  for (std::uint32_t v = 1; v <= vars.size(); ++v)
    if (vars.role(v) != VarRole::Definitional)
      out.push_back("var " + std::to_string(v) + " " + role_name(vars.role(v)) + " " + vars.name(v));
  return out;
}

}  // namespace

SynthesisEncoding encode_synthesis(const SpecFile &spec, std::size_t n, std::size_t k,
                                   const EncodingOptions &opts) {
  SynthesisEncoding enc{VarLayout(n, k, spec.inputs.size(), spec.outputs.size()), {}, {}};
  auto &layout = enc.layout;
  ExprPool pool;
  const Ref det = encode_det(pool, layout);
  const Ref premise = pool.conj(encode_loop_onehot(pool, layout, opts.closure), encode_membership(pool, layout));
  const Ref body = encode_ltl(pool, layout, to_nnf(spec.formula), spec.inputs, spec.outputs);
  const Ref matrix = pool.conj(det, pool.implies(premise, body));
  const Ref relaxed = pool.conj(std::vector<Ref>{det, premise, body});
  std::vector<Ref> loops;
  for (std::size_t j = 0; j < k; ++j)
    loops.push_back(pool.var(layout.loop(j)));
  const Ref guard = pool.exactly_one(loops);

  auto comments = legend(layout, spec, n, k);
  const std::vector<Ref> extra{relaxed, guard};
  const auto ts = tseitin(pool, matrix, layout.vars(), extra);
  enc.guidance.relaxed_root = ts.extra.at(0);
  enc.guidance.relaxed_guard = ts.extra.at(1);
  auto &q = enc.qbf;
  q.num_vars = layout.vars().size();
  q.clauses = ts.cnf.clauses;
  q.root = ts.root;
  q.comments = std::move(comments);
  QuantBlock outer{Quant::Exists, {}}, univ{Quant::Forall, {}}, inner{Quant::Exists, {}};
  for (std::uint32_t v = 1; v <= q.num_vars; ++v) {
    switch (layout.vars().role(v)) {
    case VarRole::System:
    case VarRole::Label:
      outer.vars.push_back(v);
      break;
    case VarRole::Definitional:
      inner.vars.push_back(v);
      break;
    case VarRole::RunOutput:
    case VarRole::RunState:
    case VarRole::RunLoop:
      enc.guidance.relaxed.push_back(v);
      univ.vars.push_back(v);
      break;
    default:
      univ.vars.push_back(v);
    }
  }
  q.prefix = {std::move(outer), std::move(univ), std::move(inner)};
  return enc;
}

CountingEncoding encode_counting(const SpecFile &spec, std::size_t n, std::size_t k,
                                 const EncodingOptions &opts) {
  CountingEncoding enc{VarLayout(n, k, spec.inputs.size(), spec.outputs.size(), true), {}};
  auto &layout = enc.layout;
  ExprPool pool;
  const Ref matrix = pool.conj(std::vector<Ref>{
      encode_det(pool, layout),
      encode_loop_onehot(pool, layout, opts.closure),
      encode_membership(pool, layout),
      encode_ltl(pool, layout, to_nnf(spec.formula), spec.inputs, spec.outputs),
      encode_unrolling(pool, layout),
  });
  auto comments = legend(layout, spec, n, k);
  const auto ts = tseitin(pool, matrix, layout.vars());
  auto &p = enc.problem;
  p.cnf = ts.cnf;
  p.comments = std::move(comments);
  for (std::uint32_t v = 1; v <= layout.vars().size(); ++v) {
    const auto r = layout.vars().role(v);
    if (r == VarRole::System || r == VarRole::Label)
      p.max_set.push_back(v);
    else if (r == VarRole::Counting)
      p.count_set.push_back(v);
  }
  return enc;
}

TransitionSystem decode_system(const std::function<bool(std::uint32_t)> &value,
                               const VarLayout &layout, const SpecFile &spec) {
  TransitionSystem sys;
  sys.inputs = spec.inputs;
  sys.outputs = spec.outputs;
  sys.num_states = layout.n();
  sys.trans.assign(layout.n() * layout.num_letters(), 0);
  sys.labels.assign(layout.n(), 0);
  for (std::size_t t = 0; t < layout.n(); ++t) {
    for (std::size_t i = 0; i < layout.num_letters(); ++i) {
      int found = -1;
      for (std::size_t t2 = 0; t2 < layout.n(); ++t2)
        if (value(layout.tau(t, i, t2))) {
          if (found >= 0)
            throw std::invalid_argument("two successors for state " + std::to_string(t));
          found = static_cast<int>(t2);
        }
      if (found < 0)
        throw std::invalid_argument("no successor for state " + std::to_string(t));
      sys.trans[t * layout.num_letters() + i] = static_cast<std::uint32_t>(found);
    }
    for (std::size_t o = 0; o < layout.num_outputs(); ++o)
      if (value(layout.label(t, o)))
        sys.labels[t] |= Letter{1} << o;
  }
  return sys;
}

}  // namespace lassynt
