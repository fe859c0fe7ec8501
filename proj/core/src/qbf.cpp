#include "lassynt/qbf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lassynt/sat.hpp"

namespace lassynt {

void QbfProblem::validate() const {
  std::vector<char> seen(num_vars + 1, 0);
  for (const auto &b : prefix)
    for (auto v : b.vars) {
      if (v == 0 || v > num_vars)
        throw std::invalid_argument("quantified variable " + std::to_string(v) + " out of range");
      if (seen[v]++)
        throw std::invalid_argument("variable " + std::to_string(v) + " quantified twice");
    }
  for (const auto &c : clauses)
    for (int l : c)
      if (l == 0 || static_cast<std::uint32_t>(std::abs(l)) > num_vars)
        throw std::invalid_argument("clause literal " + std::to_string(l) + " out of range");
  if (root && (*root == 0 || static_cast<std::uint32_t>(std::abs(*root)) > num_vars))
    throw std::invalid_argument("root literal out of range");
}

std::string emit_qdimacs(const QbfProblem &p) {
  std::ostringstream os;
  for (const auto &c : p.comments)
    os << "c " << c << '\n';
  if (p.root)
    os << "c root " << *p.root << '\n';
  os << "p cnf " << p.num_vars << ' ' << p.clauses.size() << '\n';
  for (const auto &b : p.prefix) {
    if (b.vars.empty())
      continue;
    os << (b.quant == Quant::Exists ? 'e' : 'a');
    for (auto v : b.vars)
      os << ' ' << v;
    os << " 0\n";
  }
  for (const auto &c : p.clauses) {
    for (int l : c)
      os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r')
      ++i;
    if (i > b)
      out.push_back(s.substr(b, i - b));
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw QdimacsError("expected integer, got '" + std::string(tok) + "'", line);
  return v;
}

// Shared line reader for QDIMACS and the counting format.
struct DimacsReader {
  std::uint32_t num_vars = 0;
  std::size_t declared_clauses = 0;
  bool have_header = false;
  std::vector<std::vector<int>> clauses;
  std::vector<int> pending;
  std::vector<std::pair<std::string, std::size_t>> comments;  // text, line
  std::vector<std::pair<char, std::vector<std::uint32_t>>> blocks;

  void read(std::string_view text, bool allow_blocks) {
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      auto toks = split_ws(line);
      if (toks.empty())
        continue;
      if (toks[0] == "c") {
        auto body = line.substr(line.find('c') + 1);
        if (!body.empty() && body[0] == ' ')
          body.remove_prefix(1);
        while (!body.empty() && body.back() == '\r')
          body.remove_suffix(1);
        comments.emplace_back(std::string(body), line_no);
        continue;
      }
      if (toks[0] == "p") {
        if (have_header)
          throw QdimacsError("duplicate problem line", line_no);
        if (toks.size() != 4 || toks[1] != "cnf")
          throw QdimacsError("malformed problem line", line_no);
        const auto v = to_int(toks[2], line_no), c = to_int(toks[3], line_no);
        if (v < 0 || c < 0)
          throw QdimacsError("negative size in problem line", line_no);
        num_vars = static_cast<std::uint32_t>(v);
        declared_clauses = static_cast<std::size_t>(c);
        have_header = true;
        continue;
      }
      if (!have_header)
        throw QdimacsError("content before problem line", line_no);
      if (toks[0] == "e" || toks[0] == "a") {
        if (!allow_blocks)
          throw QdimacsError("quantifier line in plain CNF", line_no);
        if (!clauses.empty() || !pending.empty())
          throw QdimacsError("quantifier line after clauses", line_no);
        if (toks.size() < 2 || toks.back() != "0")
          throw QdimacsError("quantifier line must end with 0", line_no);
        std::vector<std::uint32_t> vars;
        for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
          const auto v = to_int(toks[i], line_no);
          if (v <= 0 || v > num_vars)
            throw QdimacsError("quantified variable out of range", line_no);
          vars.push_back(static_cast<std::uint32_t>(v));
        }
        blocks.emplace_back(toks[0][0], std::move(vars));
        continue;
      }
      for (auto t : toks) {
        const auto l = to_int(t, line_no);
        if (l == 0) {
          clauses.push_back(std::move(pending));
          pending.clear();
          continue;
        }
        if (static_cast<std::uint64_t>(std::llabs(l)) > num_vars)
          throw QdimacsError("literal " + std::to_string(l) + " exceeds variable count", line_no);
        pending.push_back(static_cast<int>(l));
      }
    }
    if (!have_header)
      throw QdimacsError("missing problem line", line_no);
    if (!pending.empty())
      throw QdimacsError("unterminated clause", line_no);
    if (clauses.size() != declared_clauses)
      throw QdimacsError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                             std::to_string(clauses.size()),
                         line_no);
  }
};

std::vector<std::uint32_t> parse_var_list(std::string_view body, std::size_t line) {
  std::vector<std::uint32_t> out;
  auto toks = split_ws(body);
  if (toks.empty() || toks.back() != "0")
    throw QdimacsError("variable list must end with 0", line);
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    const auto v = to_int(toks[i], line);
    if (v <= 0)
      throw QdimacsError("variable ids are positive", line);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

QbfProblem parse_qdimacs(std::string_view text) {
  DimacsReader r;
  r.read(text, true);
  QbfProblem p;
  p.num_vars = r.num_vars;
  p.clauses = std::move(r.clauses);
  for (auto &[text_, line] : r.comments) {
    std::string_view body = text_;
    if (body.rfind("root ", 0) == 0) {
      const auto v = to_int(split_ws(body.substr(5)).at(0), line);
      if (v == 0 || static_cast<std::uint64_t>(std::llabs(v)) > p.num_vars)
        throw QdimacsError("root literal out of range", line);
      p.root = static_cast<int>(v);
    } else {
      p.comments.push_back(text_);
    }
  }
  for (auto &[q, vars] : r.blocks)
    p.prefix.push_back({q == 'e' ? Quant::Exists : Quant::Forall, std::move(vars)});
  try {
    p.validate();
  } catch (const std::invalid_argument &e) {
    throw QdimacsError(e.what(), 0);
  }
  return p;
}

namespace {

struct Shape {
  std::vector<std::uint32_t> outer, universal, inner;
  std::vector<std::vector<int>> defs;
  int root = 0;
  std::uint32_t num_vars = 0;
  std::vector<std::int8_t> kind;  // 0 outer, 1 universal, 2 inner
};

Shape analyse(const QbfProblem &p) {
  p.validate();
  Shape s;
  s.num_vars = p.num_vars;
  // merge adjacent blocks of equal kind, drop empty ones
  std::vector<QuantBlock> blocks;
  for (const auto &b : p.prefix) {
    if (b.vars.empty())
      continue;
    if (!blocks.empty() && blocks.back().quant == b.quant)
      blocks.back().vars.insert(blocks.back().vars.end(), b.vars.begin(), b.vars.end());
    else
      blocks.push_back(b);
  }
  std::size_t i = 0;
  if (i < blocks.size() && blocks[i].quant == Quant::Exists)
    s.outer = blocks[i++].vars;
  if (i < blocks.size() && blocks[i].quant == Quant::Forall)
    s.universal = blocks[i++].vars;
  if (i < blocks.size() && blocks[i].quant == Quant::Exists)
    s.inner = blocks[i++].vars;
  if (i != blocks.size())
    throw std::invalid_argument("prefix has more than one quantifier alternation after the outer block");
  // free variables are outermost existential
  std::vector<char> bound(p.num_vars + 1, 0);
  for (const auto &b : blocks)
    for (auto v : b.vars)
      bound[v] = 1;
  for (std::uint32_t v = 1; v <= p.num_vars; ++v)
    if (!bound[v])
      s.outer.push_back(v);

  if (p.root) {
    s.root = *p.root;
    // drop the last root unit only; an identical clause may be a definition
    std::size_t skip = p.clauses.size();
    for (std::size_t c = p.clauses.size(); c-- > 0;)
      if (p.clauses[c].size() == 1 && p.clauses[c][0] == s.root) {
        skip = c;
        break;
      }
    for (std::size_t c = 0; c < p.clauses.size(); ++c)
      if (c != skip)
        s.defs.push_back(p.clauses[c]);
  } else {
    if (!s.inner.empty())
      throw std::invalid_argument("an inner existential block requires a root annotation");
    // root <-> AND of clause selectors, each selector <-> OR of its clause
    const int root = static_cast<int>(++s.num_vars);
    std::vector<int> big{root};
    for (const auto &c : p.clauses) {
      const int sel = static_cast<int>(++s.num_vars);
      s.inner.push_back(static_cast<std::uint32_t>(sel));
      std::vector<int> def{-sel};
      for (int l : c) {
        def.push_back(l);
        s.defs.push_back({sel, -l});
      }
      s.defs.push_back(std::move(def));
      s.defs.push_back({-root, sel});
      big.push_back(-sel);
    }
    s.defs.push_back(std::move(big));
    s.inner.push_back(static_cast<std::uint32_t>(root));
    s.root = root;
  }
  s.kind.assign(s.num_vars + 1, 2);
  for (auto v : s.outer)
    s.kind[v] = 0;
  for (auto v : s.universal)
    s.kind[v] = 1;
  return s;
}

std::vector<std::int8_t> outer_model(const Shape &s, const SatSolver &solver) {
  std::vector<std::int8_t> out(s.num_vars + 1, -1);
  for (auto v : s.outer)
    out[v] = solver.value(v) ? 1 : 0;
  return out;
}

// Adds to `target` a copy of defs ∧ root with the universal variables fixed
// by `fixed` (indexed by variable, -1 = free) and inner variables renamed.
bool add_instance(SatSolver &target, const Shape &s, const std::vector<std::int8_t> &fixed, int root) {
  std::unordered_map<std::uint32_t, int> rename;
  auto map_lit = [&](int l) -> int {
    const auto v = static_cast<std::uint32_t>(std::abs(l));
    if (s.kind[v] == 0)
      return l;
    auto [it, fresh] = rename.emplace(v, 0);
    if (fresh)
      it->second = static_cast<int>(target.new_var());
    return l > 0 ? it->second : -it->second;
  };
  auto emit = [&](const std::vector<int> &c) {
    std::vector<int> out;
    for (int l : c) {
      const auto v = static_cast<std::uint32_t>(std::abs(l));
      if (s.kind[v] != 0 && fixed[v] >= 0) {
        if ((fixed[v] == 1) == (l > 0))
          return true;  // satisfied
        continue;
      }
      out.push_back(map_lit(l));
    }
    return target.add_clause(out);
  };
  for (const auto &c : s.defs)
    if (!emit(c))
      return false;
  return emit({root});
}

}  // namespace

QbfResult solve_qbf(const QbfProblem &p, const QbfOptions &opts) {
  const Shape s = analyse(p);
  QbfResult res;

  SatSolver synth;
  synth.ensure_vars(s.num_vars);

  if (s.universal.empty()) {
    for (const auto &c : s.defs)
      synth.add_clause(c);
    synth.add_clause({s.root});
    res.iterations = 1;
    if (synth.solve() == SatSolver::Result::Sat) {
      res.verdict = QbfVerdict::True;
      res.outer = outer_model(s, synth);
    } else {
      res.verdict = QbfVerdict::False;
    }
    return res;
  }

  SatSolver verifier, propagator;
  verifier.ensure_vars(s.num_vars);
  propagator.ensure_vars(s.num_vars);
  for (const auto &c : s.defs) {
    verifier.add_clause(c);
    propagator.add_clause(c);
  }
  verifier.add_clause({-s.root});

  std::vector<char> relaxed(s.num_vars + 1, 0);
  const bool guided = opts.relaxed_root.has_value();
  if (guided) {
    const auto r = static_cast<std::uint32_t>(std::abs(*opts.relaxed_root));
    if (r == 0 || r > s.num_vars || s.kind[r] != 2)
      throw std::invalid_argument("relaxed root must be an inner literal");
    for (auto v : opts.relaxed) {
      if (v == 0 || v > s.num_vars || s.kind[v] != 1)
        throw std::invalid_argument("relaxed variables must be universal");
      relaxed[v] = 1;
    }
    if (opts.relaxed_guard) {
      const auto g = static_cast<std::uint32_t>(std::abs(*opts.relaxed_guard));
      if (g == 0 || g > s.num_vars || s.kind[g] == 0)
        throw std::invalid_argument("relaxed guard must be a universal or inner literal");
    }
  }
  std::set<std::vector<int>> seen_fixed;

  auto refine = [&](const std::vector<int> &assumed, int root) {
    auto implied = propagator.implied(assumed);
    if (!implied)
      return false;  // definitions contradict under this universal assignment
    std::vector<std::int8_t> fixed(s.num_vars + 1, -1);
    for (std::uint32_t v = 1; v <= s.num_vars; ++v)
      if (s.kind[v] != 0 && v < implied->size())
        fixed[v] = (*implied)[v];
    return add_instance(synth, s, fixed, root);
  };

  std::vector<int> candidate, cex, partial;
  for (;;) {
    if (synth.solve() != SatSolver::Result::Sat) {
      res.verdict = QbfVerdict::False;
      return res;
    }
    candidate.clear();
    for (auto v : s.outer)
      candidate.push_back(synth.value(v) ? static_cast<int>(v) : -static_cast<int>(v));

    if (++res.iterations > opts.max_iterations) {
      res.verdict = QbfVerdict::Resource;
      return res;
    }
    if (verifier.solve(candidate) != SatSolver::Result::Sat) {
      res.verdict = QbfVerdict::True;
      res.outer = outer_model(s, synth);
      return res;
    }
    cex.clear();
    partial.clear();
    for (auto v : s.universal) {
      const int l = verifier.value(v) ? static_cast<int>(v) : -static_cast<int>(v);
      cex.push_back(l);
      if (!relaxed[v])
        partial.push_back(l);
    }
    const bool guard_holds =
        !opts.relaxed_guard ||
        verifier.value(static_cast<std::uint32_t>(std::abs(*opts.relaxed_guard))) == (*opts.relaxed_guard > 0);
    bool ok;
    if (guided && guard_holds && seen_fixed.insert(partial).second)
      ok = refine(partial, *opts.relaxed_root);
    else
      ok = refine(cex, s.root);
    if (!ok) {
      res.verdict = QbfVerdict::False;
      return res;
    }
  }
}

QbfResult solve_qbf_by_expansion(const QbfProblem &p, std::uint32_t max_universals) {
  const Shape s = analyse(p);
  if (s.universal.size() > max_universals)
    throw std::invalid_argument("too many universal variables for expansion");
  SatSolver solver;
  solver.ensure_vars(s.num_vars);
  QbfResult res;
  bool ok = true;
  const std::uint64_t total = std::uint64_t{1} << s.universal.size();
  for (std::uint64_t bits = 0; ok && bits < total; ++bits) {
    std::vector<std::int8_t> fixed(s.num_vars + 1, -1);
    for (std::size_t i = 0; i < s.universal.size(); ++i)
      fixed[s.universal[i]] = static_cast<std::int8_t>((bits >> i) & 1);
    ok = add_instance(solver, s, fixed, s.root);
    ++res.iterations;
  }
  if (ok && solver.solve() == SatSolver::Result::Sat) {
    res.verdict = QbfVerdict::True;
    res.outer = outer_model(s, solver);
  } else {
    res.verdict = QbfVerdict::False;
  }
  return res;
}

namespace {

std::uint64_t count_under(SatSolver &solver, const std::vector<std::uint32_t> &count_set,
                          std::vector<int> assumptions) {
  const int act = static_cast<int>(solver.new_var());
  assumptions.push_back(act);
  std::uint64_t n = 0;
  while (solver.solve(assumptions) == SatSolver::Result::Sat) {
    ++n;
    std::vector<int> block{-act};
    for (auto v : count_set)
      block.push_back(solver.value(v) ? -static_cast<int>(v) : static_cast<int>(v));
    if (!solver.add_clause(block))
      break;
  }
  solver.add_clause({-act});
  return n;
}

}  // namespace

std::uint64_t projected_count(const Cnf &cnf, const std::vector<std::uint32_t> &count_set,
                              const std::vector<int> &assumptions) {
  SatSolver solver;
  solver.ensure_vars(cnf.num_vars);
  for (const auto &c : cnf.clauses)
    if (!solver.add_clause(c))
      return 0;
  return count_under(solver, count_set, assumptions);
}

MaxCountResult max_projected_count(const CountingProblem &p) {
  MaxCountResult res;
  SatSolver outer, inner;
  outer.ensure_vars(p.cnf.num_vars);
  inner.ensure_vars(p.cnf.num_vars);
  for (const auto &c : p.cnf.clauses) {
    if (!outer.add_clause(c))
      return res;
    inner.add_clause(c);
  }
  while (outer.solve() == SatSolver::Result::Sat) {
    ++res.candidates;
    std::vector<int> x, block;
    for (auto v : p.max_set) {
      const int l = outer.value(v) ? static_cast<int>(v) : -static_cast<int>(v);
      x.push_back(l);
      block.push_back(-l);
    }
    const auto n = count_under(inner, p.count_set, x);
    if (n > res.count || res.maximizer.empty()) {
      res.count = n;
      res.maximizer.assign(p.cnf.num_vars + 1, -1);
      for (int l : x)
        res.maximizer[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : 0;
    }
    if (!outer.add_clause(block))
      break;
  }
  return res;
}

std::string emit_counting(const CountingProblem &p) {
  std::ostringstream os;
  for (const auto &c : p.comments)
    os << "c " << c << '\n';
  os << "c max";
  for (auto v : p.max_set)
    os << ' ' << v;
  os << " 0\nc count";
  for (auto v : p.count_set)
    os << ' ' << v;
  os << " 0\np cnf " << p.cnf.num_vars << ' ' << p.cnf.clauses.size() << '\n';
  for (const auto &c : p.cnf.clauses) {
    for (int l : c)
      os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

CountingProblem parse_counting(std::string_view text) {
  DimacsReader r;
  r.read(text, false);
  CountingProblem p;
  p.cnf.num_vars = r.num_vars;
  p.cnf.clauses = std::move(r.clauses);
  bool have_max = false, have_count = false;
  for (auto &[body, line] : r.comments) {
    if (body.rfind("max ", 0) == 0 || body == "max") {
      p.max_set = parse_var_list(std::string_view(body).substr(3), line);
      have_max = true;
    } else if (body.rfind("count ", 0) == 0 || body == "count") {
      p.count_set = parse_var_list(std::string_view(body).substr(5), line);
      have_count = true;
    } else {
      p.comments.push_back(body);
    }
  }
  if (!have_max || !have_count)
    throw QdimacsError("missing 'c max' or 'c count' header", 0);
  for (auto v : p.max_set)
    if (v > p.cnf.num_vars)
      throw QdimacsError("max variable out of range", 0);
  for (auto v : p.count_set)
    if (v > p.cnf.num_vars)
      throw QdimacsError("count variable out of range", 0);
  return p;
}

}  // namespace lassynt
