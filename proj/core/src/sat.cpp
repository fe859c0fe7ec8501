#include "lassynt/sat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lassynt {

namespace {

using Lit = std::uint32_t;  // 2*var + sign
constexpr std::uint32_t kNoReason = 0xffffffffu;

inline Lit to_lit(int dimacs) {
  return dimacs > 0 ? 2u * static_cast<Lit>(dimacs) : 2u * static_cast<Lit>(-dimacs) + 1u;
}
inline std::uint32_t var_of(Lit l) { return l >> 1; }

struct Clause {
  std::vector<Lit> lits;
  double activity = 0;
  bool learnt = false;
  bool deleted = false;
};

struct Watcher {
  std::uint32_t cref;
  Lit blocker;
};

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

struct SatSolver::Impl {
  std::uint32_t n = 0;
  bool ok = true;
  std::vector<Clause> clauses;
  std::vector<std::uint32_t> learnts;
  std::vector<std::vector<Watcher>> watches;  // by literal
  std::vector<std::int8_t> assign;            // by var: -1, 0, 1
  std::vector<std::int8_t> phase;
  std::vector<int> level;
  std::vector<std::uint32_t> reason;
  std::vector<double> activity;
  std::vector<char> seen;
  std::vector<Lit> trail;
  std::vector<std::size_t> trail_lim;
  std::size_t qhead = 0;
  double var_inc = 1, cla_inc = 1;
  double max_learnts = 0;
  std::uint64_t n_conflicts = 0, n_decisions = 0;
  std::vector<std::int8_t> model;

  // binary max-heap on activity
  std::vector<std::uint32_t> heap;
  std::vector<int> heap_pos;

  int val(Lit l) const {
    const int a = assign[var_of(l)];
    return a < 0 ? -1 : (a ^ static_cast<int>(l & 1));
  }
  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  void heap_up(std::size_t i) {
    const auto v = heap[i];
    while (i > 0) {
      const std::size_t p = (i - 1) / 2;
      if (activity[heap[p]] >= activity[v])
        break;
      heap[i] = heap[p];
      heap_pos[heap[i]] = static_cast<int>(i);
      i = p;
    }
    heap[i] = v;
    heap_pos[v] = static_cast<int>(i);
  }
  void heap_down(std::size_t i) {
    const auto v = heap[i];
    for (;;) {
      std::size_t c = 2 * i + 1;
      if (c >= heap.size())
        break;
      if (c + 1 < heap.size() && activity[heap[c + 1]] > activity[heap[c]])
        ++c;
      if (activity[heap[c]] <= activity[v])
        break;
      heap[i] = heap[c];
      heap_pos[heap[i]] = static_cast<int>(i);
      i = c;
    }
    heap[i] = v;
    heap_pos[v] = static_cast<int>(i);
  }
  void heap_insert(std::uint32_t v) {
    if (heap_pos[v] >= 0)
      return;
    heap.push_back(v);
    heap_up(heap.size() - 1);
  }
  std::uint32_t heap_pop() {
    const auto top = heap[0];
    heap_pos[top] = -1;
    heap[0] = heap.back();
    heap.pop_back();
    if (!heap.empty()) {
      heap_pos[heap[0]] = 0;
      heap_down(0);
    }
    return top;
  }

  void grow(std::uint32_t m) {
    if (m <= n)
      return;
    watches.resize(2 * (m + 1));
    assign.resize(m + 1, -1);
    phase.resize(m + 1, 0);
    level.resize(m + 1, 0);
    reason.resize(m + 1, kNoReason);
    activity.resize(m + 1, 0);
    seen.resize(m + 1, 0);
    heap_pos.resize(m + 1, -1);
    for (auto v = n + 1; v <= m; ++v)
      heap_insert(v);
    n = m;
  }

  void bump_var(std::uint32_t v) {
    if ((activity[v] += var_inc) > 1e100) {
      for (auto &a : activity)
        a *= 1e-100;
      var_inc *= 1e-100;
    }
    if (heap_pos[v] >= 0)
      heap_up(static_cast<std::size_t>(heap_pos[v]));
  }
  void bump_clause(Clause &c) {
    if ((c.activity += cla_inc) > 1e20) {
      for (auto i : learnts)
        clauses[i].activity *= 1e-20;
      cla_inc *= 1e-20;
    }
  }

  void enqueue(Lit l, std::uint32_t from) {
    const auto v = var_of(l);
    assign[v] = static_cast<std::int8_t>((l & 1) ^ 1);
    level[v] = decision_level();
    reason[v] = from;
    trail.push_back(l);
  }

  void attach(std::uint32_t cref) {
    const auto &c = clauses[cref];
    watches[c.lits[0]].push_back({cref, c.lits[1]});
    watches[c.lits[1]].push_back({cref, c.lits[0]});
  }

  std::uint32_t propagate() {
    while (qhead < trail.size()) {
      const Lit falsified = trail[qhead++] ^ 1u;
      auto &ws = watches[falsified];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const Watcher w = ws[i++];
        Clause &c = clauses[w.cref];
        if (c.deleted)
          continue;
        if (val(w.blocker) == 1) {
          ws[j++] = w;
          continue;
        }
        if (c.lits[0] == falsified)
          std::swap(c.lits[0], c.lits[1]);
        const Lit first = c.lits[0];
        if (val(first) == 1) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (val(c.lits[k]) != 0) {
            std::swap(c.lits[1], c.lits[k]);
            watches[c.lits[1]].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved)
          continue;
        ws[j++] = w;
        if (val(first) == 0) {
          while (i < ws.size())
            ws[j++] = ws[i++];
          ws.resize(j);
          qhead = trail.size();
          return w.cref;
        }
        enqueue(first, w.cref);
      }
      ws.resize(j);
    }
    return kNoReason;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl)
      return;
    for (std::size_t i = trail.size(); i > trail_lim[static_cast<std::size_t>(lvl)]; --i) {
      const auto v = var_of(trail[i - 1]);
      phase[v] = assign[v];
      assign[v] = -1;
      reason[v] = kNoReason;
      heap_insert(v);
    }
    trail.resize(trail_lim[static_cast<std::size_t>(lvl)]);
    trail_lim.resize(static_cast<std::size_t>(lvl));
    qhead = trail.size();
  }

  bool redundant(Lit l) const {
    // local minimisation: every antecedent literal already in the clause
    const auto r = reason[var_of(l)];
    if (r == kNoReason)
      return false;
    const auto &c = clauses[r].lits;
    for (std::size_t k = 1; k < c.size(); ++k)
      if (!seen[var_of(c[k])] && level[var_of(c[k])] > 0)
        return false;
    return true;
  }

  void analyze(std::uint32_t confl, std::vector<Lit> &out, int &bt_level) {
    out.assign(1, 0);
    int path = 0;
    Lit p = 0;
    bool have_p = false;
    std::size_t idx = trail.size();
    do {
      Clause &c = clauses[confl];
      if (c.learnt)
        bump_clause(c);
      for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
        const Lit q = c.lits[k];
        const auto v = var_of(q);
        if (!seen[v] && level[v] > 0) {
          seen[v] = 1;
          bump_var(v);
          if (level[v] >= decision_level())
            ++path;
          else
            out.push_back(q);
        }
      }
      while (!seen[var_of(trail[idx - 1])])
        --idx;
      p = trail[--idx];
      have_p = true;
      confl = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    out[0] = p ^ 1u;

    std::vector<Lit> kept{out[0]};
    for (std::size_t k = 1; k < out.size(); ++k)
      if (!redundant(out[k]))
        kept.push_back(out[k]);
    for (auto l : out)
      seen[var_of(l)] = 0;
    out.swap(kept);

    bt_level = 0;
    if (out.size() > 1) {
      std::size_t best = 1;
      for (std::size_t k = 2; k < out.size(); ++k)
        if (level[var_of(out[k])] > level[var_of(out[best])])
          best = k;
      std::swap(out[1], out[best]);
      bt_level = level[var_of(out[1])];
    }
  }

  bool locked(std::uint32_t cref) const {
    const auto &c = clauses[cref];
    const auto v = var_of(c.lits[0]);
    return assign[v] >= 0 && reason[v] == cref;
  }

  void reduce_db() {
    std::sort(learnts.begin(), learnts.end(), [&](auto a, auto b) {
      return clauses[a].activity < clauses[b].activity;
    });
    std::vector<std::uint32_t> keep;
    const std::size_t half = learnts.size() / 2;
    for (std::size_t i = 0; i < learnts.size(); ++i) {
      auto &c = clauses[learnts[i]];
      if (i < half && c.lits.size() > 2 && !locked(learnts[i])) {
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
      } else {
        keep.push_back(learnts[i]);
      }
    }
    learnts.swap(keep);
  }

  std::uint32_t pick_branch() {
    while (!heap.empty()) {
      const auto v = heap_pop();
      if (assign[v] < 0)
        return v;
    }
    return 0;
  }

  Result search(std::span<const Lit> assumptions, std::int64_t budget, std::int64_t &used) {
    std::vector<Lit> learnt;
    for (;;) {
      const auto confl = propagate();
      if (confl != kNoReason) {
        ++n_conflicts;
        ++used;
        if (decision_level() == 0) {
          ok = false;
          return Result::Unsat;
        }
        int bt = 0;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          clauses.push_back({learnt, 0, true, false});
          const auto cref = static_cast<std::uint32_t>(clauses.size() - 1);
          learnts.push_back(cref);
          attach(cref);
          bump_clause(clauses[cref]);
          enqueue(learnt[0], cref);
        }
        var_inc /= 0.95;
        cla_inc /= 0.999;
        continue;
      }
      if (used >= budget) {
        cancel_until(0);
        return Result::Unknown;
      }
      if (static_cast<double>(learnts.size()) - static_cast<double>(trail.size()) >= max_learnts)
        reduce_db();

      Lit next = 0;
      bool decided = false;
      while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
        const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
        if (val(a) == 1) {
          trail_lim.push_back(trail.size());
        } else if (val(a) == 0) {
          return Result::Unsat;
        } else {
          next = a;
          decided = true;
          break;
        }
      }
      if (!decided) {
        const auto v = pick_branch();
        if (v == 0)
          return Result::Sat;
        ++n_decisions;
        next = 2 * v + (phase[v] == 1 ? 0u : 1u);
      }
      trail_lim.push_back(trail.size());
      enqueue(next, kNoReason);
    }
  }
};

SatSolver::SatSolver() : impl_(new Impl) { impl_->grow(0); }
SatSolver::~SatSolver() { delete impl_; }

std::uint32_t SatSolver::num_vars() const { return impl_->n; }
std::uint32_t SatSolver::new_var() {
  impl_->grow(impl_->n + 1);
  return impl_->n;
}
void SatSolver::ensure_vars(std::uint32_t n) { impl_->grow(n); }
std::uint64_t SatSolver::conflicts() const { return impl_->n_conflicts; }
std::uint64_t SatSolver::decisions() const { return impl_->n_decisions; }

bool SatSolver::add_clause(std::span<const int> dimacs) {
  auto &s = *impl_;
  if (!s.ok)
    return false;
  s.cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) {
    if (d == 0)
      throw std::invalid_argument("literal 0 in clause");
    s.grow(static_cast<std::uint32_t>(std::abs(d)));
    lits.push_back(to_lit(d));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == (lits[i] ^ 1u))
      return true;  // tautology
    const int v = s.val(lits[i]);
    if (v == 1)
      return true;
    if (v < 0)
      kept.push_back(lits[i]);
  }
  if (kept.empty())
    return s.ok = false;
  if (kept.size() == 1) {
    s.enqueue(kept[0], kNoReason);
    if (s.propagate() != kNoReason)
      s.ok = false;
    return s.ok;
  }
  s.clauses.push_back({std::move(kept), 0, false, false});
  s.attach(static_cast<std::uint32_t>(s.clauses.size() - 1));
  return true;
}

SatSolver::Result SatSolver::solve(std::span<const int> assumptions, std::int64_t conflict_limit) {
  auto &s = *impl_;
  s.model.clear();
  if (!s.ok)
    return Result::Unsat;
  std::vector<Lit> as;
  for (int a : assumptions) {
    s.grow(static_cast<std::uint32_t>(std::abs(a)));
    as.push_back(to_lit(a));
  }
  s.cancel_until(0);
  if (s.propagate() != kNoReason) {
    s.ok = false;
    return Result::Unsat;
  }
  s.max_learnts = std::max(2000.0, static_cast<double>(s.clauses.size() - s.learnts.size()) / 3.0);
  const std::int64_t total = conflict_limit < 0 ? INT64_MAX : conflict_limit;
  std::int64_t used = 0;
  Result r = Result::Unknown;
  for (int round = 0; r == Result::Unknown && used < total; ++round) {
    const auto budget = static_cast<std::int64_t>(luby(2, round) * 100);
    std::int64_t local = 0;
    r = s.search(as, std::min(budget, total - used), local);
    used += local;
    s.max_learnts *= 1.05;
  }
  if (r == Result::Sat) {
    s.model.assign(s.n + 1, 0);
    for (std::uint32_t v = 1; v <= s.n; ++v)
      s.model[v] = s.assign[v] == 1 ? 1 : 0;
  }
  s.cancel_until(0);
  return r;
}

bool SatSolver::value(std::uint32_t var) const {
  return var < impl_->model.size() && impl_->model[var] == 1;
}
const std::vector<std::int8_t> &SatSolver::model() const { return impl_->model; }

std::optional<std::vector<std::int8_t>> SatSolver::implied(std::span<const int> assumptions) {
  auto &s = *impl_;
  if (!s.ok)
    return std::nullopt;
  s.cancel_until(0);
  if (s.propagate() != kNoReason) {
    s.ok = false;
    return std::nullopt;
  }
  for (int a : assumptions) {
    s.grow(static_cast<std::uint32_t>(std::abs(a)));
    const Lit l = to_lit(a);
    if (s.val(l) == 1)
      continue;
    if (s.val(l) == 0) {
      s.cancel_until(0);
      return std::nullopt;
    }
    s.trail_lim.push_back(s.trail.size());
    s.enqueue(l, kNoReason);
    if (s.propagate() != kNoReason) {
      s.cancel_until(0);
      return std::nullopt;
    }
  }
  std::vector<std::int8_t> out(s.assign.begin(), s.assign.end());
  s.cancel_until(0);
  return out;
}

std::optional<std::vector<bool>> sat_solve(const Cnf &cnf, std::span<const int> assumptions) {
  SatSolver s;
  s.ensure_vars(cnf.num_vars);
  for (const auto &c : cnf.clauses)
    if (!s.add_clause(c))
      return std::nullopt;
  if (s.solve(assumptions) != SatSolver::Result::Sat)
    return std::nullopt;
  std::vector<bool> m(s.num_vars() + 1, false);
  for (std::uint32_t v = 1; v <= s.num_vars(); ++v)
    m[v] = s.value(v);
  return m;
}

}  // namespace lassynt
