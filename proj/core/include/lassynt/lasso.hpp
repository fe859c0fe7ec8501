#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lassynt {

/// A letter is a set of propositions encoded as a bit mask over an ordered
/// proposition list. Trace letters over I ∪ O put the inputs in the low bits.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// The ultimately periodic word prefix · period^ω.
struct Lasso {
  Word prefix;
  Word period;  // nonempty

  std::size_t length() const { return prefix.size() + period.size(); }
  Letter at(std::size_t position) const;
  /// prefix · period as one word.
  Word base() const;

  friend bool operator==(const Lasso &, const Lasso &) = default;
};

/// Builds the lasso with base `base` whose loop starts at `loop_start`.
Lasso make_lasso(std::span<const Letter> base, std::size_t loop_start);

/// Maps position `j` of the infinite word to a position of the length-k base
/// when the loop starts at `loop_start`.
std::size_t delta(std::size_t j, std::size_t k, std::size_t loop_start);

/// First `len` letters of prefix · period^ω.
Word unroll(const Lasso &l, std::size_t len);

/// Exact equality of the denoted infinite words.
bool word_eq(const Lasso &a, const Lasso &b);

/// One infinite word of L_k, identified by its 2k-unrolling.
struct CanonicalWord {
  Word unrolling;  // 2k letters
  std::size_t k = 0;
  /// Least (|u|, u·v) lasso of length k denoting this word.
  Lasso representative;
};

/// All letters over `num_props` propositions, 0 .. 2^num_props - 1.
std::vector<Letter> full_alphabet(std::size_t num_props);

/// One representative per distinct infinite word of length-k lassos over
/// `alphabet`, ordered by representative (|u| first, then u·v).
std::vector<CanonicalWord> enumerate_k_words(std::span<const Letter> alphabet,
                                             std::size_t k);

/// Whether some lasso of length exactly k denotes the same word as `l`.
bool representable_at(const Lasso &l, std::size_t k);

/// Keeps the low `num_bits` bits of every letter.
Lasso project(const Lasso &l, std::size_t num_bits);

/// `{a,b}` for the propositions of `letter`, `{}` for the empty set.
std::string format_letter(Letter letter, std::span<const std::string> props);
/// `{r} {} ({g})^w` style rendering.
std::string format_lasso(const Lasso &l, std::span<const std::string> props);

}  // namespace lassynt
