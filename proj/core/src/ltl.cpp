#include "lassynt/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace lassynt {

struct LtlFormula::Node {
  LtlKind kind;
  std::string name;
  LtlFormula lhs;
  LtlFormula rhs;
};

namespace {

const LtlFormula &empty_formula() {
  static const LtlFormula f;
  return f;
}

bool is_unary(LtlKind k) {
  return k == LtlKind::Not || k == LtlKind::Next || k == LtlKind::Eventually ||
         k == LtlKind::Globally;
}

bool is_binary(LtlKind k) {
  return k == LtlKind::And || k == LtlKind::Or || k == LtlKind::Until ||
         k == LtlKind::Release;
}

}  // namespace

LtlFormula::LtlFormula()
    : node_(std::make_shared<const Node>(Node{LtlKind::True, {}, LtlFormula(nullptr), LtlFormula(nullptr)})) {}

LtlFormula LtlFormula::atom(std::string name) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Atom, std::move(name), LtlFormula(nullptr), LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::neg_atom(std::string name) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::NegAtom, std::move(name), LtlFormula(nullptr), LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::constant(bool value) {
  return LtlFormula(std::make_shared<const Node>(
      Node{value ? LtlKind::True : LtlKind::False, {}, LtlFormula(nullptr),
           LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::make_not(LtlFormula f) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Not, {}, std::move(f), LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::make_and(LtlFormula a, LtlFormula b) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::And, {}, std::move(a), std::move(b)}));
}

LtlFormula LtlFormula::make_or(LtlFormula a, LtlFormula b) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Or, {}, std::move(a), std::move(b)}));
}

LtlFormula LtlFormula::next(LtlFormula f) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Next, {}, std::move(f), LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::until(LtlFormula a, LtlFormula b) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Until, {}, std::move(a), std::move(b)}));
}

LtlFormula LtlFormula::release(LtlFormula a, LtlFormula b) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Release, {}, std::move(a), std::move(b)}));
}

LtlFormula LtlFormula::eventually(LtlFormula f) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Eventually, {}, std::move(f), LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::globally(LtlFormula f) {
  return LtlFormula(std::make_shared<const Node>(
      Node{LtlKind::Globally, {}, std::move(f), LtlFormula(nullptr)}));
}

LtlFormula LtlFormula::implies(LtlFormula a, LtlFormula b) {
  return make_or(make_not(std::move(a)), std::move(b));
}

LtlKind LtlFormula::kind() const { return node_->kind; }
const std::string &LtlFormula::name() const { return node_->name; }

const LtlFormula &LtlFormula::lhs() const {
  return node_->lhs.node_ ? node_->lhs : empty_formula();
}

const LtlFormula &LtlFormula::rhs() const {
  return node_->rhs.node_ ? node_->rhs : empty_formula();
}

bool LtlFormula::is_nnf() const {
  switch (kind()) {
  case LtlKind::Not:
  case LtlKind::Eventually:
  case LtlKind::Globally:
    return false;
  case LtlKind::Next:
    return lhs().is_nnf();
  case LtlKind::And:
  case LtlKind::Or:
  case LtlKind::Until:
  case LtlKind::Release:
    return lhs().is_nnf() && rhs().is_nnf();
  default:
    return true;
  }
}

std::size_t LtlFormula::size() const {
  if (is_unary(kind()))
    return 1 + lhs().size();
  if (is_binary(kind()))
    return 1 + lhs().size() + rhs().size();
  return 1;
}

std::size_t LtlFormula::depth() const {
  if (is_unary(kind()))
    return 1 + lhs().depth();
  if (is_binary(kind()))
    return 1 + std::max(lhs().depth(), rhs().depth());
  return 0;
}

std::set<std::string> LtlFormula::atoms() const {
  std::set<std::string> out;
  std::vector<const LtlFormula *> stack{this};
  while (!stack.empty()) {
    const LtlFormula *f = stack.back();
    stack.pop_back();
    if (f->is_literal())
      out.insert(f->name());
    else if (is_unary(f->kind()))
      stack.push_back(&f->lhs());
    else if (is_binary(f->kind())) {
      stack.push_back(&f->lhs());
      stack.push_back(&f->rhs());
    }
  }
  return out;
}

bool operator==(const LtlFormula &a, const LtlFormula &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.kind() != b.kind())
    return false;
  if (a.is_literal())
    return a.name() == b.name();
  if (is_unary(a.kind()))
    return a.lhs() == b.lhs();
  if (is_binary(a.kind()))
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  return true;
}

// Printing levels: 0 '->'/'|', 1 '&', 2 'U'/'R', 3 unary/primary.
namespace {

int level(LtlKind k) {
  switch (k) {
  case LtlKind::Or:
    return 0;
  case LtlKind::And:
    return 1;
  case LtlKind::Until:
  case LtlKind::Release:
    return 2;
  default:
    return 3;
  }
}

void print(const LtlFormula &f, std::string &out);

void print_at(const LtlFormula &f, int min_level, std::string &out) {
  if (level(f.kind()) < min_level) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print(const LtlFormula &f, std::string &out) {
  switch (f.kind()) {
  case LtlKind::Atom:
    out += f.name();
    break;
  case LtlKind::NegAtom:
    out += '!';
    out += f.name();
    break;
  case LtlKind::True:
    out += "true";
    break;
  case LtlKind::False:
    out += "false";
    break;
  case LtlKind::Not:
  case LtlKind::Next:
  case LtlKind::Eventually:
  case LtlKind::Globally: {
    static constexpr const char *ops[] = {"!", "X ", "F ", "G "};
    const int idx = f.kind() == LtlKind::Not    ? 0
                    : f.kind() == LtlKind::Next ? 1
                    : f.kind() == LtlKind::Eventually ? 2
                                                      : 3;
    out += ops[idx];
    print_at(f.lhs(), 3, out);
    break;
  }
  case LtlKind::And:
    print_at(f.lhs(), 1, out);
    out += " & ";
    print_at(f.rhs(), 1, out);
    break;
  case LtlKind::Or:
    print_at(f.lhs(), 0, out);
    out += " | ";
    print_at(f.rhs(), 0, out);
    break;
  case LtlKind::Until:
  case LtlKind::Release:
    // right associative: left operand must bind tighter
    print_at(f.lhs(), 3, out);
    out += f.kind() == LtlKind::Until ? " U " : " R ";
    print_at(f.rhs(), 2, out);
    break;
  }
}

}  // namespace

std::string LtlFormula::to_string() const {
  std::string s;
  print(*this, s);
  return s;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, LParen, RParen, Not, And, Or, Implies, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      toks.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
    case '(':
      toks.push_back({Tok::LParen, "(", start});
      ++i;
      break;
    case ')':
      toks.push_back({Tok::RParen, ")", start});
      ++i;
      break;
    case '!':
    case '~':
      toks.push_back({Tok::Not, "!", start});
      ++i;
      break;
    case '&':
      i += (i + 1 < s.size() && s[i + 1] == '&') ? 2 : 1;
      toks.push_back({Tok::And, "&", start});
      break;
    case '|':
      i += (i + 1 < s.size() && s[i + 1] == '|') ? 2 : 1;
      toks.push_back({Tok::Or, "|", start});
      break;
    case '-':
      if (i + 1 < s.size() && s[i + 1] == '>') {
        toks.push_back({Tok::Implies, "->", start});
        i += 2;
        break;
      }
      [[fallthrough]];
    default:
      throw LtlParseError("syntax error at position " + std::to_string(start) +
                              ": unexpected character '" + std::string(1, c) + "'",
                          start);
    }
  }
  toks.push_back({Tok::End, "", s.size()});
  return toks;
}

class Parser {
public:
  Parser(std::string_view text, const std::set<std::string> &declared)
      : toks_(tokenize(text)), declared_(declared) {}

  LtlFormula parse() {
    LtlFormula f = implication();
    if (peek().type != Tok::End)
      fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token &peek() const { return toks_[pos_]; }
  bool peek_keyword(const char *kw) const {
    return peek().type == Tok::Ident && peek().text == kw;
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw LtlParseError("syntax error at position " + std::to_string(peek().pos) +
                            ": " + what,
                        peek().pos);
  }

  LtlFormula implication() {
    LtlFormula a = disjunction();
    if (peek().type == Tok::Implies) {
      ++pos_;
      return LtlFormula::implies(std::move(a), implication());
    }
    return a;
  }

  LtlFormula disjunction() {
    LtlFormula a = conjunction();
    while (peek().type == Tok::Or) {
      ++pos_;
      a = LtlFormula::make_or(std::move(a), conjunction());
    }
    return a;
  }

  LtlFormula conjunction() {
    LtlFormula a = binary_temporal();
    while (peek().type == Tok::And) {
      ++pos_;
      a = LtlFormula::make_and(std::move(a), binary_temporal());
    }
    return a;
  }

  LtlFormula binary_temporal() {
    LtlFormula a = unary();
    if (peek_keyword("U")) {
      ++pos_;
      return LtlFormula::until(std::move(a), binary_temporal());
    }
    if (peek_keyword("R")) {
      ++pos_;
      return LtlFormula::release(std::move(a), binary_temporal());
    }
    return a;
  }

  LtlFormula unary() {
    if (peek().type == Tok::Not) {
      ++pos_;
      return LtlFormula::make_not(unary());
    }
    if (peek_keyword("X")) {
      ++pos_;
      return LtlFormula::next(unary());
    }
    if (peek_keyword("F")) {
      ++pos_;
      return LtlFormula::eventually(unary());
    }
    if (peek_keyword("G")) {
      ++pos_;
      return LtlFormula::globally(unary());
    }
    return primary();
  }

  LtlFormula primary() {
    const Token &t = peek();
    if (t.type == Tok::LParen) {
      ++pos_;
      LtlFormula f = implication();
      if (peek().type != Tok::RParen)
        fail("expected ')'");
      ++pos_;
      return f;
    }
    if (t.type != Tok::Ident)
      fail(t.type == Tok::End ? std::string("unexpected end of formula")
                              : "unexpected '" + t.text + "'");
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return LtlFormula::constant(t.text == "true");
    }
    if (t.text == "U" || t.text == "R")
      fail("operator '" + t.text + "' without left operand");
    if (!declared_.count(t.text))
      throw LtlParseError("undeclared atom '" + t.text + "' at position " +
                              std::to_string(t.pos),
                          t.pos);
    ++pos_;
    return LtlFormula::atom(t.text);
  }

  std::vector<Token> toks_;
  const std::set<std::string> &declared_;
  std::size_t pos_ = 0;
};

}  // namespace

LtlFormula parse_ltl(std::string_view text,
                     const std::set<std::string> &declared_atoms) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw LtlParseError("empty formula", 0);
  return Parser(text, declared_atoms).parse();
}

// ---------------------------------------------------------------------------
// NNF

namespace {

LtlFormula nnf(const LtlFormula &f, bool neg) {
  using F = LtlFormula;
  switch (f.kind()) {
  case LtlKind::Atom:
    return neg ? F::neg_atom(f.name()) : f;
  case LtlKind::NegAtom:
    return neg ? F::atom(f.name()) : f;
  case LtlKind::True:
  case LtlKind::False:
    return neg ? F::constant(f.kind() == LtlKind::False) : f;
  case LtlKind::Not:
    return nnf(f.lhs(), !neg);
  case LtlKind::And:
    return neg ? F::make_or(nnf(f.lhs(), true), nnf(f.rhs(), true))
               : F::make_and(nnf(f.lhs(), false), nnf(f.rhs(), false));
  case LtlKind::Or:
    return neg ? F::make_and(nnf(f.lhs(), true), nnf(f.rhs(), true))
               : F::make_or(nnf(f.lhs(), false), nnf(f.rhs(), false));
  case LtlKind::Next:
    return F::next(nnf(f.lhs(), neg));
  case LtlKind::Until:
    return neg ? F::release(nnf(f.lhs(), true), nnf(f.rhs(), true))
               : F::until(nnf(f.lhs(), false), nnf(f.rhs(), false));
  case LtlKind::Release:
    return neg ? F::until(nnf(f.lhs(), true), nnf(f.rhs(), true))
               : F::release(nnf(f.lhs(), false), nnf(f.rhs(), false));
  case LtlKind::Eventually:
    return neg ? F::release(F::constant(false), nnf(f.lhs(), true))
               : F::until(F::constant(true), nnf(f.lhs(), false));
  case LtlKind::Globally:
    return neg ? F::until(F::constant(true), nnf(f.lhs(), true))
               : F::release(F::constant(false), nnf(f.lhs(), false));
  }
  return f;
}

}  // namespace

LtlFormula to_nnf(const LtlFormula &f) { return nnf(f, false); }

// ---------------------------------------------------------------------------
// Evaluation on lassos.
//
// Every subformula is evaluated on all base positions at once as a bit set;
// the successor of the last position is the loop start. Until/Release are
// computed as least/greatest fixpoints of their one-step unfolding.

LassoEvaluator::LassoEvaluator(const LtlFormula &f,
                               const std::vector<std::string> &props) {
  std::unordered_map<std::string, std::uint32_t> bit_of;
  for (std::size_t b = 0; b < props.size(); ++b)
    bit_of.emplace(props[b], static_cast<std::uint32_t>(b));

  auto emit = [&](auto &&self, const LtlFormula &g) -> std::int32_t {
    Op op{g.kind()};
    if (g.is_literal()) {
      auto it = bit_of.find(g.name());
      if (it == bit_of.end())
        throw std::invalid_argument("atom '" + g.name() +
                                    "' is not a proposition of the trace");
      op.bit = it->second;
    } else if (is_unary(g.kind())) {
      op.a = self(self, g.lhs());
    } else if (is_binary(g.kind())) {
      op.a = self(self, g.lhs());
      op.b = self(self, g.rhs());
    }
    ops_.push_back(op);
    return static_cast<std::int32_t>(ops_.size() - 1);
  };
  emit(emit, f);
}

namespace {

// Bit set over lasso positions, fixed word count per evaluation.
struct Scratch {
  std::vector<std::uint64_t> data;
  std::vector<std::uint64_t> tmp;
  std::vector<std::uint64_t> tmp2;
};

}  // namespace

bool LassoEvaluator::evaluate(std::span<const Letter> base,
                              std::size_t loop_start) const {
  const std::size_t len = base.size();
  if (len == 0 || loop_start >= len)
    throw std::invalid_argument("lasso needs a nonempty period");
  const std::size_t words = (len + 63) / 64;
  const std::uint64_t last_mask =
      (len % 64 == 0) ? ~std::uint64_t{0} : (std::uint64_t{1} << (len % 64)) - 1;

  thread_local Scratch scratch;
  scratch.data.assign(ops_.size() * words, 0);
  scratch.tmp.assign(words, 0);
  scratch.tmp2.assign(words, 0);
  auto row = [&](std::size_t i) { return scratch.data.data() + i * words; };
  auto get = [&](const std::uint64_t *r, std::size_t p) {
    return (r[p / 64] >> (p % 64)) & 1u;
  };
  auto fill = [&](std::uint64_t *r, bool value) {
    for (std::size_t w = 0; w < words; ++w)
      r[w] = value ? ~std::uint64_t{0} : 0;
    r[words - 1] &= last_mask;
  };
  // out[p] = in[succ(p)]
  auto shift_next = [&](const std::uint64_t *in, std::uint64_t *out) {
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t v = in[w] >> 1;
      if (w + 1 < words)
        v |= in[w + 1] << 63;
      out[w] = v;
    }
    const std::size_t p = len - 1;
    if (get(in, loop_start))
      out[p / 64] |= std::uint64_t{1} << (p % 64);
    else
      out[p / 64] &= ~(std::uint64_t{1} << (p % 64));
    out[words - 1] &= last_mask;
  };

  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op &op = ops_[i];
    std::uint64_t *r = row(i);
    switch (op.kind) {
    case LtlKind::Atom:
    case LtlKind::NegAtom: {
      const bool pos = op.kind == LtlKind::Atom;
      for (std::size_t p = 0; p < len; ++p)
        if (((base[p] >> op.bit) & 1u) == static_cast<Letter>(pos))
          r[p / 64] |= std::uint64_t{1} << (p % 64);
      break;
    }
    case LtlKind::True:
      fill(r, true);
      break;
    case LtlKind::False:
      fill(r, false);
      break;
    case LtlKind::Not: {
      const std::uint64_t *a = row(op.a);
      for (std::size_t w = 0; w < words; ++w)
        r[w] = ~a[w];
      r[words - 1] &= last_mask;
      break;
    }
    case LtlKind::And: {
      const std::uint64_t *a = row(op.a), *b = row(op.b);
      for (std::size_t w = 0; w < words; ++w)
        r[w] = a[w] & b[w];
      break;
    }
    case LtlKind::Or: {
      const std::uint64_t *a = row(op.a), *b = row(op.b);
      for (std::size_t w = 0; w < words; ++w)
        r[w] = a[w] | b[w];
      break;
    }
    case LtlKind::Next:
      shift_next(row(op.a), r);
      break;
    case LtlKind::Until:
    case LtlKind::Eventually:
    case LtlKind::Release:
    case LtlKind::Globally: {
      const bool is_until = op.kind == LtlKind::Until || op.kind == LtlKind::Eventually;
      const bool unary_op = op.kind == LtlKind::Eventually || op.kind == LtlKind::Globally;
      // F x = true U x, G x = false R x
      const std::uint64_t *lhs = unary_op ? nullptr : row(op.a);
      const std::uint64_t *rhs = unary_op ? row(op.a) : row(op.b);
      fill(r, !is_until);
      while (true) {
        shift_next(r, scratch.tmp.data());
        bool changed = false;
        for (std::size_t w = 0; w < words; ++w) {
          const std::uint64_t l = lhs ? lhs[w] : (is_until ? ~std::uint64_t{0} : 0);
          std::uint64_t v = is_until ? (rhs[w] | (l & scratch.tmp[w]))
                                     : (rhs[w] & (l | scratch.tmp[w]));
          if (w == words - 1)
            v &= last_mask;
          if (v != r[w]) {
            r[w] = v;
            changed = true;
          }
        }
        if (!changed)
          break;
      }
      break;
    }
    }
  }
  return get(row(ops_.size() - 1), 0);
}

bool LassoEvaluator::evaluate(const Lasso &trace) const {
  const Word b = trace.base();
  return evaluate(b, trace.prefix.size());
}

bool eval_on_lasso(const LtlFormula &f, const std::vector<std::string> &props,
                   const Lasso &trace) {
  return LassoEvaluator(f, props).evaluate(trace);
}

}  // namespace lassynt
