#pragma once

// Word primitives: base-k numeration, fractional powers, repetition witnesses
// and factor statistics over finite prefixes of infinite words.
//
// Public contracts use 1-based positions (a_1 a_2 ...); storage is 0-based.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autoseq/alphabet.hpp"
#include "autoseq/rational.hpp"

namespace autoseq {

/// The first N symbols of an infinite word, tagged with where they came from.
struct SequencePrefix {
  std::string source_id;
  Alphabet alphabet;
  FiniteWord data;

  std::size_t size() const noexcept { return data.size(); }
  std::span<const Symbol> view() const noexcept { return data; }
  std::string render() const { return alphabet.render(data); }
};

/// A prefix of length u + ext factorised as U V^alpha with |U| = u, |V| = v.
/// Positions u+v+1 .. u+ext repeat with period v.
struct RepetitionWitness {
  std::uint64_t u = 0;
  std::uint64_t v = 1;
  std::uint64_t ext = 1;

  /// (u + ext) / (u + v)
  Rational ratio() const;
  /// ext / v
  Rational alpha() const;

  bool operator==(const RepetitionWitness&) const = default;
};

/// Most significant digit first; encode_base_k(0, k) is the empty word.
FiniteWord encode_base_k(std::uint64_t n, unsigned k);

/// Leading zeros are accepted. Throws InvalidDigit for a symbol >= k and
/// InvalidArgument on 64-bit overflow.
std::uint64_t decode_base_k(std::span<const Symbol> w, unsigned k);

/// W^x = W repeated floor(x) times, then the prefix of W of length
/// ceil({x}·|W|).
FiniteWord fractional_power(std::span<const Symbol> w, const Rational& x);

/// Checks prefix[i] == prefix[i - v] for u+v < i <= u+ext (1-based).
/// Throws InsufficientData if the witness reaches past the prefix.
bool verify_repetition(std::span<const Symbol> prefix, const RepetitionWitness& w);

struct RepetitionCaps {
  /// Largest period considered. Unset means every v < ell.
  std::optional<std::uint64_t> max_period;
};

/// Best witness with u + ext == ell, maximising the ratio; ties go to the
/// smallest v, then the smallest u. A nontrivial repetition (ext > v) is
/// required; when none exists the result is empty (the trivial U V^1 has
/// ratio 1).
std::optional<RepetitionWitness> best_repetition_at(std::span<const Symbol> prefix,
                                                    std::uint64_t ell,
                                                    const RepetitionCaps& caps = {});

struct DioSample {
  std::uint64_t length = 0;
  Rational best{1};    // ratio of best_repetition_at, 1 if none
  Rational record{1};  // running maximum over the profile so far
  std::optional<RepetitionWitness> witness;
};

/// Number of distinct length-n blocks in the prefix. Throws InsufficientData
/// if n exceeds the prefix length and InvalidArgument for n == 0.
std::size_t factor_complexity(std::span<const Symbol> prefix, std::size_t n);

/// p(1), ..., p(max_n) in one pass over a suffix array of the prefix.
std::vector<std::size_t> complexity_profile(std::span<const Symbol> prefix, std::size_t max_n);

/// Number of length-n blocks w such that wc occurs for at least two distinct c.
std::size_t right_special_count(std::span<const Symbol> prefix, std::size_t n);

/// Text form: contiguous tokens when the alphabet is single-character and has
/// at most ten symbols, otherwise one token per line.
std::string dump_prefix(const SequencePrefix& prefix);

/// Inverse of dump_prefix. The alphabet is the sorted set of tokens seen,
/// unless one is supplied.
SequencePrefix parse_prefix_text(const std::string& text, const std::string& source_id,
                                 const std::optional<Alphabet>& alphabet = std::nullopt);

}  // namespace autoseq
