#include "lassynt/bool_expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace lassynt {

const char *role_name(VarRole role) {
  switch (role) {
  case VarRole::System:
    return "system";
  case VarRole::Label:
    return "label";
  case VarRole::Input:
    return "input";
  case VarRole::InputLoop:
    return "input-loop";
  case VarRole::RunOutput:
    return "run-output";
  case VarRole::RunState:
    return "run-state";
  case VarRole::RunLoop:
    return "run-loop";
  case VarRole::Counting:
    return "counting";
  case VarRole::Definitional:
    return "definitional";
  }
  return "?";
}

std::uint32_t VarTable::add(VarRole role, std::string name) {
  roles_.push_back(role);
  names_.push_back(std::move(name));
  return size();
}

std::vector<std::uint32_t> VarTable::with_role(VarRole role) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v <= size(); ++v)
    if (roles_[v - 1] == role)
      out.push_back(v);
  return out;
}

std::size_t ExprPool::KeyHash::operator()(const std::vector<std::uint32_t> &k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto x : k)
    h = (h ^ x) * 0x100000001b3ull;
  return h;
}

ExprPool::ExprPool() {
  nodes_.push_back({Kind::True, 0, {}});
  nodes_.push_back({Kind::False, 0, {}});
}

ExprPool::Ref ExprPool::intern(Node n) {
  std::vector<std::uint32_t> key;
  key.reserve(n.kids.size() + 2);
  key.push_back(static_cast<std::uint32_t>(n.kind));
  key.push_back(n.var);
  key.insert(key.end(), n.kids.begin(), n.kids.end());
  auto [it, fresh] = index_.emplace(std::move(key), static_cast<Ref>(nodes_.size()));
  if (fresh)
    nodes_.push_back(std::move(n));
  return it->second;
}

ExprPool::Ref ExprPool::var(std::uint32_t id) {
  if (id == 0)
    throw std::invalid_argument("variable ids start at 1");
  return intern({Kind::Var, id, {}});
}

ExprPool::Ref ExprPool::negate(Ref a) {
  switch (nodes_[a].kind) {
  case Kind::True:
    return bottom();
  case Kind::False:
    return top();
  case Kind::Not:
    return nodes_[a].kids[0];
  default:
    return intern({Kind::Not, 0, {a}});
  }
}

ExprPool::Ref ExprPool::conj(std::vector<Ref> kids) {
  std::vector<Ref> flat;
  for (Ref k : kids) {
    if (k == bottom())
      return bottom();
    if (k == top())
      continue;
    if (nodes_[k].kind == Kind::And)
      flat.insert(flat.end(), nodes_[k].kids.begin(), nodes_[k].kids.end());
    else
      flat.push_back(k);
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  for (Ref k : flat)
    if (nodes_[k].kind == Kind::Not && std::binary_search(flat.begin(), flat.end(), nodes_[k].kids[0]))
      return bottom();
  if (flat.empty())
    return top();
  if (flat.size() == 1)
    return flat[0];
  return intern({Kind::And, 0, std::move(flat)});
}

ExprPool::Ref ExprPool::disj(std::vector<Ref> kids) {
  std::vector<Ref> flat;
  for (Ref k : kids) {
    if (k == top())
      return top();
    if (k == bottom())
      continue;
    if (nodes_[k].kind == Kind::Or)
      flat.insert(flat.end(), nodes_[k].kids.begin(), nodes_[k].kids.end());
    else
      flat.push_back(k);
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  for (Ref k : flat)
    if (nodes_[k].kind == Kind::Not && std::binary_search(flat.begin(), flat.end(), nodes_[k].kids[0]))
      return top();
  if (flat.empty())
    return bottom();
  if (flat.size() == 1)
    return flat[0];
  return intern({Kind::Or, 0, std::move(flat)});
}

ExprPool::Ref ExprPool::iff(Ref a, Ref b) {
  if (a == b)
    return top();
  if (a == top())
    return b;
  if (b == top())
    return a;
  if (a == bottom())
    return negate(b);
  if (b == bottom())
    return negate(a);
  if (a == negate(b))
    return bottom();
  if (a > b)
    std::swap(a, b);
  return intern({Kind::Iff, 0, {a, b}});
}

ExprPool::Ref ExprPool::exactly_one(std::span<const Ref> xs) {
  std::vector<Ref> parts{disj(std::vector<Ref>(xs.begin(), xs.end()))};
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      parts.push_back(disj(negate(xs[i]), negate(xs[j])));
  return conj(std::move(parts));
}

bool ExprPool::evaluate(Ref root, const std::function<bool(std::uint32_t)> &value) const {
  // nodes are created children-first, so one ascending sweep suffices
  std::vector<std::int8_t> memo(root + 1, -1);
  for (Ref r = 0; r <= root; ++r) {
    const Node &n = nodes_[r];
    bool v = false;
    switch (n.kind) {
    case Kind::True:
      v = true;
      break;
    case Kind::False:
      v = false;
      break;
    case Kind::Var:
      v = value(n.var);
      break;
    case Kind::Not:
      v = !memo[n.kids[0]];
      break;
    case Kind::And:
      v = std::all_of(n.kids.begin(), n.kids.end(), [&](Ref k) { return memo[k] == 1; });
      break;
    case Kind::Or:
      v = std::any_of(n.kids.begin(), n.kids.end(), [&](Ref k) { return memo[k] == 1; });
      break;
    case Kind::Iff:
      v = memo[n.kids[0]] == memo[n.kids[1]];
      break;
    }
    memo[r] = v ? 1 : 0;
  }
  return memo[root] == 1;
}

TseitinResult tseitin(const ExprPool &pool, ExprPool::Ref root, VarTable &vars,
                      std::span<const ExprPool::Ref> extra_roots) {
  TseitinResult res;
  res.first_definitional = vars.size() + 1;
  std::unordered_map<ExprPool::Ref, int> lit_of;
  auto &clauses = res.cnf.clauses;

  // iterative postorder over the DAG reachable from root
  std::vector<std::pair<ExprPool::Ref, bool>> stack{{root, false}};
  for (auto r : extra_roots)
    stack.push_back({r, false});
  while (!stack.empty()) {
    auto [r, expanded] = stack.back();
    stack.pop_back();
    if (lit_of.count(r))
      continue;
    const auto &n = pool.node(r);
    if (!expanded && !n.kids.empty()) {
      stack.push_back({r, true});
      for (auto k : n.kids)
        if (!lit_of.count(k))
          stack.push_back({k, false});
      continue;
    }
    switch (n.kind) {
    case ExprPool::Kind::True:
    case ExprPool::Kind::False: {
      const int d = static_cast<int>(vars.add(VarRole::Definitional,
                                              n.kind == ExprPool::Kind::True ? "true" : "false"));
      clauses.push_back({n.kind == ExprPool::Kind::True ? d : -d});
      lit_of[r] = d;
      break;
    }
    case ExprPool::Kind::Var:
      lit_of[r] = static_cast<int>(n.var);
      break;
    case ExprPool::Kind::Not:
      lit_of[r] = -lit_of.at(n.kids[0]);
      break;
    case ExprPool::Kind::And:
    case ExprPool::Kind::Or: {
      const bool is_and = n.kind == ExprPool::Kind::And;
      const int d = static_cast<int>(vars.add(VarRole::Definitional,
                                              std::string(is_and ? "and" : "or") + "#" +
                                                  std::to_string(r)));
      // and: d -> k_i, (k_1 & ... ) -> d ; or is the dual
      std::vector<int> big{is_and ? d : -d};
      for (auto k : n.kids) {
        const int l = lit_of.at(k);
        clauses.push_back(is_and ? std::vector<int>{-d, l} : std::vector<int>{d, -l});
        big.push_back(is_and ? -l : l);
      }
      clauses.push_back(std::move(big));
      lit_of[r] = d;
      break;
    }
    case ExprPool::Kind::Iff: {
      const int d = static_cast<int>(vars.add(VarRole::Definitional, "iff#" + std::to_string(r)));
      const int a = lit_of.at(n.kids[0]), b = lit_of.at(n.kids[1]);
      clauses.push_back({-d, -a, b});
      clauses.push_back({-d, a, -b});
      clauses.push_back({d, a, b});
      clauses.push_back({d, -a, -b});
      lit_of[r] = d;
      break;
    }
    }
  }
  res.root = lit_of.at(root);
  for (auto r : extra_roots)
    res.extra.push_back(lit_of.at(r));
  clauses.push_back({res.root});
  res.cnf.num_vars = vars.size();
  return res;
}

}  // namespace lassynt
