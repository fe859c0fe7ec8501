#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>

#include "lassynt/lasso.hpp"

using namespace lassynt;

namespace {

// All lassos of length exactly k over {0..sigma-1}.
std::vector<Lasso> all_lassos(std::size_t sigma, std::size_t k) {
  std::vector<Lasso> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i)
    total *= sigma;
  for (std::size_t loop = 0; loop < k; ++loop)
    for (std::size_t code = 0; code < total; ++code) {
      Word base(k);
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i, c /= sigma)
        base[i] = static_cast<Letter>(c % sigma);
      out.push_back(make_lasso(base, loop));
    }
  return out;
}

}  // namespace

TEST_CASE("delta maps positions onto the base") {
  CHECK(delta(0, 3, 1) == 0);
  CHECK(delta(2, 3, 1) == 2);
  CHECK(delta(3, 3, 1) == 1);
  CHECK(delta(4, 3, 1) == 2);
  CHECK(delta(7, 3, 0) == 1);
  CHECK(delta(5, 3, 2) == 2);
  CHECK_THROWS_AS(delta(0, 2, 2), std::invalid_argument);
}

TEST_CASE("delta agrees with unrolling") {
  for (std::size_t k = 1; k <= 5; ++k)
    for (const auto &l : all_lassos(2, k)) {
      const auto base = l.base();
      const auto w = unroll(l, 5 * k);
      for (std::size_t j = 0; j < 5 * k; ++j)
        REQUIRE(w[j] == base[delta(j, k, l.prefix.size())]);
    }
}

TEST_CASE("unroll") {
  const Lasso l{{1}, {2, 3}};
  CHECK(unroll(l, 0).empty());
  CHECK(unroll(l, 6) == Word{1, 2, 3, 2, 3, 2});
  CHECK(l.length() == 3);
  CHECK(l.at(4) == 3);
}

TEST_CASE("word_eq") {
  CHECK(word_eq({{}, {0}}, {{0, 0}, {0, 0, 0}}));
  CHECK(word_eq({{}, {0, 1}}, {{0}, {1, 0}}));
  CHECK_FALSE(word_eq({{}, {0, 1}}, {{}, {1, 0}}));
  CHECK(word_eq({{}, {0, 1}}, {{}, {0, 1, 0, 1}}));
}

TEST_CASE("equal 2k-unrollings iff equal words") {
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto ls = all_lassos(2, k);
    for (std::size_t a = 0; a < ls.size(); a += 3)
      for (std::size_t b = 0; b < ls.size(); ++b)
        REQUIRE((unroll(ls[a], 2 * k) == unroll(ls[b], 2 * k)) == word_eq(ls[a], ls[b]));
  }
}

TEST_CASE("enumerate_k_words counts") {
  // independent dedup over long unrollings
  const auto bin = full_alphabet(1);
  CHECK(enumerate_k_words(bin, 1).size() == 2);
  CHECK(enumerate_k_words(bin, 2).size() == 6);
  CHECK(enumerate_k_words(bin, 3).size() == 18);
  CHECK(enumerate_k_words(bin, 4).size() == 48);
  CHECK(enumerate_k_words(bin, 5).size() == 126);
  const auto four = full_alphabet(2);
  CHECK(enumerate_k_words(four, 1).size() == 4);
  CHECK(enumerate_k_words(four, 2).size() == 28);
  const std::vector<Letter> three{0, 1, 2};
  CHECK(enumerate_k_words(three, 3).size() == 69);
}

TEST_CASE("enumerate_k_words matches brute-force dedup and is stable") {
  for (std::size_t k = 1; k <= 4; ++k) {
    std::set<Word> unrollings;
    for (const auto &l : all_lassos(2, k))
      unrollings.insert(unroll(l, 2 * k));
    const auto words = enumerate_k_words(full_alphabet(1), k);
    CHECK(words.size() == unrollings.size());
    CHECK(words.size() >= (std::size_t{1} << k));
    CHECK(words.size() <= k * (std::size_t{1} << k));
    const auto again = enumerate_k_words(full_alphabet(1), k);
    for (std::size_t i = 0; i < words.size(); ++i) {
      CHECK(words[i].representative == again[i].representative);
      CHECK(unroll(words[i].representative, 2 * k) == words[i].unrolling);
    }
  }
}

TEST_CASE("canonical representative is the least (|u|, uv)") {
  const auto words = enumerate_k_words(full_alphabet(1), 3);
  for (const auto &w : words)
    for (const auto &l : all_lassos(2, 3))
      if (word_eq(l, w.representative)) {
        const auto key = [](const Lasso &x) { return std::make_pair(x.prefix.size(), x.base()); };
        REQUIRE_FALSE(key(l) < key(w.representative));
      }
  // constant words are represented with an empty prefix
  CHECK(words.front().representative.prefix.empty());
}

TEST_CASE("representable_at") {
  CHECK(representable_at({{}, {0}}, 3));
  CHECK_FALSE(representable_at({{}, {0, 1}}, 1));
  CHECK(representable_at({{0}, {1}}, 2));
}

TEST_CASE("monotonicity in k") {
  for (std::size_t k = 1; k <= 4; ++k)
    for (const auto &w : enumerate_k_words(full_alphabet(1), k))
      for (std::size_t k2 = k + 1; k2 <= k + 3; ++k2)
        REQUIRE(representable_at(w.representative, k2));
}

TEST_CASE("formatting") {
  const std::vector<std::string> props{"r", "g"};
  CHECK(format_letter(0, props) == "{}");
  CHECK(format_letter(3, props) == "{r,g}");
  CHECK(format_lasso({{1, 0}, {2}}, props) == "{r} {} ({g})^w");
}

TEST_CASE("project keeps the low bits") {
  const Lasso l{{3}, {2, 1}};
  CHECK(project(l, 1) == Lasso{{1}, {0, 1}});
}
