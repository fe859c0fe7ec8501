#include "lassynt/automata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lassynt {

std::uint32_t Dfa::run(std::span<const Letter> w) const {
  std::uint32_t q = initial;
  for (Letter a : w) {
    if (a >= num_letters)
      throw std::out_of_range("letter outside the DFA alphabet");
    q = next(q, a);
  }
  return q;
}

bool PrefixDfa::all_trackers_dead(std::uint32_t state) const {
  const auto &t = states[state].trackers;
  return std::all_of(t.begin(), t.end(), [](std::uint8_t x) { return x == kDead; });
}

namespace {

std::string state_key(const PrefixDfa::State &s) {
  std::string key;
  key.reserve(2 * s.stored.size());
  for (int a : s.stored)
    key.push_back(static_cast<char>(a + 1));
  for (auto t : s.trackers)
    key.push_back(static_cast<char>(t));
  return key;
}

PrefixDfa::State step(const PrefixDfa::State &q, Letter alpha, std::size_t k) {
  PrefixDfa::State r = q;
  auto pad = std::find(r.stored.begin(), r.stored.end(), PrefixDfa::kPad);
  if (pad != r.stored.end()) {
    // still reading the first k letters: (w #^m, t) -> (w a #^(m-1), t)
    *pad = static_cast<int>(alpha);
    return r;
  }
  const int a = static_cast<int>(alpha);
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint8_t i = q.trackers[j];
    if (i == PrefixDfa::kDead || q.stored[i - 1] != a)
      r.trackers[j] = PrefixDfa::kDead;
    else if (i < k)
      r.trackers[j] = static_cast<std::uint8_t>(i + 1);
    else
      r.trackers[j] = static_cast<std::uint8_t>(j + 1);
  }
  return r;
}

}  // namespace

PrefixDfa build_prefix_dfa(std::vector<std::string> inputs, std::size_t k) {
  if (k == 0 || k > 64)
    throw std::invalid_argument("prefix DFA needs 1 <= k <= 64");
  if (inputs.empty() || inputs.size() > 7)
    throw std::invalid_argument("prefix DFA needs 1 to 7 input propositions");
  PrefixDfa out;
  out.inputs = std::move(inputs);
  out.k = k;
  const std::size_t letters = std::size_t{1} << out.inputs.size();
  out.dfa.num_letters = letters;

  PrefixDfa::State init;
  init.stored.assign(k, PrefixDfa::kPad);
  init.trackers.resize(k);
  for (std::size_t j = 0; j < k; ++j)
    init.trackers[j] = static_cast<std::uint8_t>(j + 1);

  std::unordered_map<std::string, std::uint32_t> index;
  index.emplace(state_key(init), 0);
  out.states.push_back(init);
  for (std::size_t s = 0; s < out.states.size(); ++s) {
    for (Letter a = 0; a < letters; ++a) {
      PrefixDfa::State nxt = step(out.states[s], a, k);
      auto [it, fresh] =
          index.emplace(state_key(nxt), static_cast<std::uint32_t>(out.states.size()));
      if (fresh)
        out.states.push_back(std::move(nxt));
      out.dfa.delta.push_back(it->second);
    }
  }
  out.dfa.initial = 0;
  out.dfa.accepting.resize(out.states.size());
  for (std::uint32_t s = 0; s < out.states.size(); ++s)
    out.dfa.accepting[s] = !out.all_trackers_dead(s);
  return out;
}

bool dfa_accepts(const PrefixDfa &dfa, std::span<const Letter> w) {
  return dfa.dfa.accepts(w);
}

Dfa minimize_dfa(const Dfa &dfa) {
  const std::size_t n = dfa.size();
  const std::size_t letters = dfa.num_letters;
  // restrict to reachable states
  std::vector<std::uint32_t> order{dfa.initial};
  std::vector<bool> seen(n, false);
  seen[dfa.initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter a = 0; a < letters; ++a) {
      const auto t = dfa.next(order[i], a);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }

  std::vector<std::uint32_t> cls(n, 0);
  for (auto s : order)
    cls[s] = dfa.accepting[s] ? 1 : 0;
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
    std::vector<std::uint32_t> next_cls(n, 0);
    for (auto s : order) {
      std::vector<std::uint32_t> sig;
      sig.reserve(letters + 1);
      sig.push_back(cls[s]);
      for (Letter a = 0; a < letters; ++a)
        sig.push_back(cls[dfa.next(s, a)]);
      auto it = sig_index.emplace(std::move(sig),
                                  static_cast<std::uint32_t>(sig_index.size()))
                    .first;
      next_cls[s] = it->second;
    }
    const bool stable = sig_index.size() == num_classes;
    num_classes = sig_index.size();
    cls = std::move(next_cls);
    if (stable)
      break;
  }

  Dfa out;
  out.num_letters = letters;
  out.initial = cls[dfa.initial];
  out.delta.assign(num_classes * letters, 0);
  out.accepting.assign(num_classes, false);
  for (auto s : order) {
    out.accepting[cls[s]] = dfa.accepting[s];
    for (Letter a = 0; a < letters; ++a)
      out.delta[cls[s] * letters + a] = cls[dfa.next(s, a)];
  }
  return out;
}

Dfa minimize_dfa(const PrefixDfa &dfa) { return minimize_dfa(dfa.dfa); }

// ---------------------------------------------------------------------------

std::uint32_t ParityAutomaton::max_color() const {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
}

bool ParityAutomaton::is_deterministic() const {
  if (initial.size() != 1)
    return false;
  return std::all_of(delta.begin(), delta.end(),
                     [](const PosBool &b) { return b.kind == PosBool::Kind::State; });
}

std::uint32_t ParityAutomaton::successor(std::uint32_t q, Letter a) const {
  const PosBool &b = delta.at(q * num_letters() + a);
  if (b.kind != PosBool::Kind::State)
    throw std::invalid_argument("parity automaton is not deterministic");
  return b.state;
}

ParityAutomaton ParityAutomaton::deterministic(std::vector<std::string> props,
                                               std::uint32_t initial,
                                               std::span<const std::uint32_t> successors,
                                               std::vector<std::uint32_t> colors) {
  ParityAutomaton a;
  a.props = std::move(props);
  a.num_states = colors.size();
  if (successors.size() != a.num_states * a.num_letters())
    throw std::invalid_argument("successor table has the wrong size");
  a.initial = {initial};
  a.delta.reserve(successors.size());
  for (auto s : successors) {
    if (s >= a.num_states)
      throw std::invalid_argument("successor out of range");
    a.delta.push_back(PosBool::of(s));
  }
  a.colors = std::move(colors);
  return a;
}

namespace {

// Bit positions of the DFA's inputs inside the automaton's letters.
std::vector<std::size_t> input_bits(const ParityAutomaton &a, const PrefixDfa &dfa) {
  std::vector<std::size_t> bits;
  for (const auto &name : dfa.inputs) {
    auto it = std::find(a.props.begin(), a.props.end(), name);
    if (it == a.props.end())
      throw std::invalid_argument("input '" + name + "' is not in the automaton alphabet");
    bits.push_back(static_cast<std::size_t>(it - a.props.begin()));
  }
  return bits;
}

Letter project_letter(Letter a, const std::vector<std::size_t> &bits) {
  Letter r = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (a & (Letter{1} << bits[i]))
      r |= Letter{1} << i;
  return r;
}

}  // namespace

ParityAutomaton lift_parity(const ParityAutomaton &a, const PrefixDfa &dfa) {
  if (!a.is_deterministic())
    throw std::invalid_argument("lift_parity supports deterministic automata only");
  const auto bits = input_bits(a, dfa);
  const std::size_t letters = a.num_letters();

  ParityAutomaton out;
  out.props = a.props;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  auto intern = [&](std::uint32_t q, std::uint32_t d) {
    auto [it, fresh] = index.emplace(std::pair{q, d}, static_cast<std::uint32_t>(pairs.size()));
    if (fresh)
      pairs.emplace_back(q, d);
    return it->second;
  };
  out.initial = {intern(a.initial.front(), dfa.dfa.initial)};
  std::vector<std::uint32_t> succ;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [q, d] = pairs[i];
    for (Letter l = 0; l < letters; ++l)
      succ.push_back(intern(a.successor(q, l), dfa.dfa.next(d, project_letter(l, bits))));
  }
  out.num_states = pairs.size();
  out.delta.reserve(succ.size());
  for (auto s : succ)
    out.delta.push_back(PosBool::of(s));
  out.colors.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out.colors[i] = dfa.dfa.accepting[pairs[i].second] ? a.colors[pairs[i].first] : 0;
  return out;
}

bool parity_accepts_lasso(const ParityAutomaton &a, const Lasso &trace) {
  if (!a.is_deterministic())
    throw std::invalid_argument("parity_accepts_lasso needs a deterministic automaton");
  const std::size_t len = trace.length();
  const std::size_t loop = trace.prefix.size();
  // first visit index of (state, base position)
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> visit;
  std::vector<std::uint32_t> run;
  std::uint32_t q = a.initial.front();
  std::size_t pos = 0;
  while (true) {
    auto [it, fresh] = visit.emplace(std::pair{q, pos}, run.size());
    if (!fresh) {
      std::uint32_t best = 0;
      for (std::size_t i = it->second; i < run.size(); ++i)
        best = std::max(best, a.colors[run[i]]);
      return best % 2 == 0;
    }
    run.push_back(q);
    q = a.successor(q, trace.at(pos));
    pos = pos + 1 < len ? pos + 1 : loop;
  }
}

std::string to_dot(const PrefixDfa &dfa) {
  std::ostringstream os;
  os << "digraph prefix_dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::uint32_t s = 0; s < dfa.states.size(); ++s) {
    const auto &st = dfa.states[s];
    std::string word, tr;
    for (int a : st.stored)
      word += a == PrefixDfa::kPad ? std::string("#")
                                   : format_letter(static_cast<Letter>(a), dfa.inputs);
    for (std::size_t j = 0; j < st.trackers.size(); ++j) {
      if (j)
        tr += ',';
      tr += st.trackers[j] == PrefixDfa::kDead ? std::string("-")
                                               : std::to_string(st.trackers[j]);
    }
    os << "  q" << s << " [label=\"" << word << "\\n(" << tr << ")\", shape="
       << (dfa.dfa.accepting[s] ? "doublecircle" : "circle") << "];\n";
  }
  os << "  init -> q" << dfa.dfa.initial << ";\n";
  for (std::uint32_t s = 0; s < dfa.states.size(); ++s)
    for (Letter a = 0; a < dfa.dfa.num_letters; ++a)
      os << "  q" << s << " -> q" << dfa.dfa.next(s, a) << " [label=\""
         << format_letter(a, dfa.inputs) << "\"];\n";
  os << "}\n";
  return os.str();
}

namespace {

std::string posbool_text(const PosBool &b) {
  switch (b.kind) {
  case PosBool::Kind::True:
    return "true";
  case PosBool::Kind::False:
    return "false";
  case PosBool::Kind::State:
    return "q" + std::to_string(b.state);
  default: {
    std::string s = "(";
    for (std::size_t i = 0; i < b.children.size(); ++i) {
      if (i)
        s += b.kind == PosBool::Kind::And ? " & " : " | ";
      s += posbool_text(b.children[i]);
    }
    return s + ")";
  }
  }
}

}  // namespace

std::string to_dot(const ParityAutomaton &a) {
  std::ostringstream os;
  os << "digraph parity {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < a.initial.size(); ++i)
    os << "  init" << i << " [shape=point];\n  init" << i << " -> q" << a.initial[i]
       << ";\n";
  for (std::size_t q = 0; q < a.num_states; ++q)
    os << "  q" << q << " [label=\"q" << q << "\\ncolor " << a.colors[q]
       << "\", shape=" << (a.colors[q] % 2 == 0 ? "doublecircle" : "circle") << "];\n";
  const std::size_t letters = a.num_letters();
  for (std::size_t q = 0; q < a.num_states; ++q)
    for (Letter l = 0; l < letters; ++l) {
      const PosBool &b = a.delta[q * letters + l];
      const std::string label = format_letter(l, a.props);
      if (b.kind == PosBool::Kind::State)
        os << "  q" << q << " -> q" << b.state << " [label=\"" << label << "\"];\n";
      else
        os << "  q" << q << " -> q" << q << " [style=dashed, label=\"" << label
           << " / " << posbool_text(b) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Dfa &dfa, std::span<const std::string> props) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::uint32_t s = 0; s < dfa.size(); ++s)
    os << "  q" << s << " [shape=" << (dfa.accepting[s] ? "doublecircle" : "circle") << "];\n";
  os << "  init -> q" << dfa.initial << ";\n";
  for (std::uint32_t s = 0; s < dfa.size(); ++s)
    for (Letter a = 0; a < dfa.num_letters; ++a)
      os << "  q" << s << " -> q" << dfa.next(s, a) << " [label=\"" << format_letter(a, props)
         << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace lassynt
