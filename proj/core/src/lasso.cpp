#include "lassynt/lasso.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace lassynt {

namespace {

struct WordHash {
  std::size_t operator()(const Word &w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter a : w) {
      h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

Letter Lasso::at(std::size_t position) const {
  if (position < prefix.size())
    return prefix[position];
  return period[(position - prefix.size()) % period.size()];
}

Word Lasso::base() const {
  Word w = prefix;
  w.insert(w.end(), period.begin(), period.end());
  return w;
}

Lasso make_lasso(std::span<const Letter> base, std::size_t loop_start) {
  if (loop_start >= base.size())
    throw std::invalid_argument("lasso loop start outside the base");
  Lasso l;
  l.prefix.assign(base.begin(), base.begin() + loop_start);
  l.period.assign(base.begin() + loop_start, base.end());
  return l;
}

std::size_t delta(std::size_t j, std::size_t k, std::size_t loop_start) {
  if (loop_start >= k)
    throw std::invalid_argument("delta: loop start must be below k");
  if (j < k)
    return j;
  return (j - k) % (k - loop_start) + loop_start;
}

Word unroll(const Lasso &l, std::size_t len) {
  if (l.period.empty())
    throw std::invalid_argument("lasso with empty period");
  Word w;
  w.reserve(len);
  for (std::size_t p = 0; p < len; ++p)
    w.push_back(l.at(p));
  return w;
}

bool word_eq(const Lasso &a, const Lasso &b) {
  const std::size_t len = std::max(a.prefix.size(), b.prefix.size()) +
                          std::lcm(a.period.size(), b.period.size());
  for (std::size_t p = 0; p < len; ++p)
    if (a.at(p) != b.at(p))
      return false;
  return true;
}

std::vector<Letter> full_alphabet(std::size_t num_props) {
  if (num_props >= 31)
    throw std::invalid_argument("too many propositions for a letter mask");
  std::vector<Letter> letters(std::size_t{1} << num_props);
  std::iota(letters.begin(), letters.end(), Letter{0});
  return letters;
}

std::vector<CanonicalWord> enumerate_k_words(std::span<const Letter> alphabet,
                                             std::size_t k) {
  if (k == 0)
    throw std::invalid_argument("lasso bound k must be positive");
  if (alphabet.empty())
    return {};
  std::vector<Letter> sorted(alphabet.begin(), alphabet.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<CanonicalWord> out;
  std::unordered_set<Word, WordHash> seen;
  std::vector<std::size_t> digits(k);
  Word base(k);
  for (std::size_t loop = 0; loop < k; ++loop) {
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      for (std::size_t p = 0; p < k; ++p)
        base[p] = sorted[digits[p]];
      Lasso l = make_lasso(base, loop);
      Word w = unroll(l, 2 * k);
      if (seen.insert(w).second)
        out.push_back(CanonicalWord{std::move(w), k, std::move(l)});
      // odometer, last position least significant
      std::size_t p = k;
      while (p > 0 && ++digits[p - 1] == sorted.size())
        digits[--p] = 0;
      if (p == 0)
        break;
    }
  }
  return out;
}

bool representable_at(const Lasso &l, std::size_t k) {
  if (k == 0)
    return false;
  const Word base = unroll(l, k);
  for (std::size_t loop = 0; loop < k; ++loop)
    if (word_eq(make_lasso(base, loop), l))
      return true;
  return false;
}

Lasso project(const Lasso &l, std::size_t num_bits) {
  const Letter mask = num_bits >= 32 ? ~Letter{0} : (Letter{1} << num_bits) - 1;
  Lasso r = l;
  for (auto &a : r.prefix)
    a &= mask;
  for (auto &a : r.period)
    a &= mask;
  return r;
}

std::string format_letter(Letter letter, std::span<const std::string> props) {
  std::string s = "{";
  bool first = true;
  for (std::size_t b = 0; b < props.size(); ++b) {
    if (letter & (Letter{1} << b)) {
      if (!first)
        s += ',';
      s += props[b];
      first = false;
    }
  }
  return s + "}";
}

std::string format_lasso(const Lasso &l, std::span<const std::string> props) {
  std::string s;
  for (Letter a : l.prefix)
    s += format_letter(a, props) + ' ';
  s += '(';
  for (std::size_t i = 0; i < l.period.size(); ++i) {
    if (i)
      s += ' ';
    s += format_letter(l.period[i], props);
  }
  return s + ")^w";
}

}  // namespace lassynt
