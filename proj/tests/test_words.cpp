#include <doctest.h>

#include "autoseq/error.hpp"
#include "autoseq/kernels.hpp"
#include "autoseq/source.hpp"
#include "autoseq/dfao.hpp"
#include "autoseq/pda.hpp"
#include "support.hpp"

using namespace autoseq;
using testing::prefix_of;

namespace {

std::string digits(const FiniteWord& w) {
  std::string s;
  for (auto d : w) s += static_cast<char>('0' + d);
  return s;
}

FiniteWord digit_word(const std::string& s) {
  FiniteWord w;
  for (char c : s) w.push_back(static_cast<Symbol>(c - '0'));
  return w;
}

}  // namespace

TEST_SUITE("words") {

TEST_CASE("base-k encoding") {
  CHECK(encode_base_k(0, 2).empty());
  CHECK(digits(encode_base_k(9, 2)) == "1001");
  CHECK(digits(encode_base_k(5, 3)) == "12");
  CHECK(decode_base_k(digit_word("1001"), 2) == 9);
  CHECK(decode_base_k(FiniteWord{}, 7) == 0);
  CHECK(decode_base_k(digit_word("0012"), 3) == 5);
  CHECK_THROWS_AS(decode_base_k(digit_word("2"), 2), Error);
  CHECK_THROWS_AS(encode_base_k(3, 1), Error);
  for (unsigned k : {2u, 3u, 10u})
    for (std::uint64_t n = 0; n < 100000; ++n) REQUIRE(decode_base_k(encode_base_k(n, k), k) == n);
}

TEST_CASE("fractional powers") {
  CHECK(digits(fractional_power(digit_word("01"), Rational(5, 2))) == "01010");
  CHECK(prefix_of("abc").alphabet.render(fractional_power(prefix_of("abc").data, Rational(1))) == "abc");
  CHECK(prefix_of("abc").alphabet.render(fractional_power(prefix_of("abc").data, Rational(5, 3))) == "abcab");
  const auto w = digit_word("0110");
  for (std::int64_t p = 1; p <= 4; ++p) {
    FiniteWord cat;
    for (std::int64_t i = 0; i < p; ++i) cat.insert(cat.end(), w.begin(), w.end());
    CHECK(fractional_power(w, Rational(p)) == cat);
  }
  for (std::int64_t num = 1; num <= 30; ++num)
    for (std::int64_t den = 1; den <= 7; ++den) {
      const Rational x(num, den);
      const auto whole = num / den;
      const Rational frac = x - Rational(whole);
      const auto tail = boost::rational_cast<std::int64_t>(frac * Rational(4) + Rational(den - 1, den));
      CHECK(fractional_power(w, x).size() == static_cast<std::size_t>(whole * 4 + tail));
    }
}

TEST_CASE("verify repetition") {
  const auto abab = prefix_of("abab");
  CHECK(verify_repetition(abab.view(), {0, 2, 4}));
  CHECK_FALSE(verify_repetition(abab.view(), {0, 1, 2}));
  const auto xi2 = pda_prefix(catalog_dpao("xi2"), 1 << 12);
  CHECK_THROWS_AS(verify_repetition(xi2.view(), {(1 << 10) - 1, 1 << 12, 1 << 12}), Error);
  try {
    verify_repetition(xi2.view(), {(1 << 10) - 1, 1 << 12, 1 << 12});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
}

TEST_CASE("best repetition examples") {
  auto aaaa = best_repetition_at(prefix_of("aaaa").view(), 4);
  REQUIRE(aaaa);
  CHECK(*aaaa == RepetitionWitness{0, 1, 4});
  CHECK(aaaa->ratio() == Rational(4));
  auto abab = best_repetition_at(prefix_of("abab").view(), 4);
  REQUIRE(abab);
  CHECK(*abab == RepetitionWitness{0, 2, 4});
  CHECK(abab->ratio() == Rational(2));
  // The period-3 run a..a is a genuine witness.
  auto abca = best_repetition_at(prefix_of("abca").view(), 4);
  REQUIRE(abca);
  CHECK(*abca == RepetitionWitness{0, 3, 4});
  CHECK(abca->ratio() == Rational(4, 3));
  CHECK_FALSE(best_repetition_at(prefix_of("abc").view(), 3));
}

TEST_CASE("best repetition matches exhaustive search on binary words up to length 12") {
  std::size_t checked = 0;
  for (unsigned len = 1; len <= 12; ++len)
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      FiniteWord w(len);
      for (unsigned i = 0; i < len; ++i) w[i] = (bits >> i) & 1u;
      for (std::uint64_t ell = 1; ell <= len; ++ell) {
        const auto got = best_repetition_at(w, ell);
        const auto want = testing::brute_best(w, ell);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
          REQUIRE(*got == *want);
          REQUIRE(verify_repetition(w, *got));
        }
      }
      ++checked;
    }
  CHECK(checked == 8190);
}

TEST_CASE("dio profiles") {
  auto periodic = fixed_source(prefix_of("0101010101010101"));
  auto p = dio_profile(periodic, {4, 8, 16});
  REQUIRE(p.size() == 3);
  CHECK(p[0].best == Rational(2));
  CHECK(p[1].best == Rational(4));
  CHECK(p[2].best == Rational(8));
  auto constant = fixed_source(prefix_of("2222222222"));
  CHECK(dio_profile(constant, {10})[0].best == Rational(10));

  std::vector<std::uint64_t> lengths;
  for (std::uint64_t l = 16; l <= (1u << 14); l *= 2) lengths.push_back(l);
  const auto tm = dio_profile(dfao_source(catalog_dfao("tm")), lengths);
  for (const auto& s : tm) CHECK(s.best <= Rational(3));
  CHECK(tm.back().record <= Rational(3));
}

TEST_CASE("factor complexity and right-special factors") {
  CHECK(factor_complexity(prefix_of("01010101").view(), 2) == 2);
  const auto tm = dfao_prefix(catalog_dfao("tm"), 1 << 16);
  CHECK(factor_complexity(tm.view(), 1) == 2);
  CHECK(factor_complexity(tm.view(), 3) == 6);
  CHECK(right_special_count(prefix_of("01010101").view(), 2) == 0);
  CHECK(right_special_count(prefix_of("0011000111").view(), 1) == 2);
  const auto xi2 = pda_prefix(catalog_dpao("xi2"), 1 << 16);
  CHECK(right_special_count(xi2.view(), 8) == 23);
  CHECK_THROWS_AS(factor_complexity(prefix_of("01").view(), 3), Error);

  for (const auto* p : {&tm, &xi2}) {
    for (std::size_t n = 1; n <= 64; ++n) {
      const auto pn = factor_complexity(p->view(), n);
      CHECK(factor_complexity(p->view(), n + 1) - pn == right_special_count(p->view(), n));
      CHECK(factor_complexity(p->view(), n + 1) <= 2 * pn);
    }
  }
  for (const auto* p : {&tm, &xi2}) {
    const auto head = std::span(p->data).first(3000);
    const auto all = complexity_profile(head, 3000);
    for (std::size_t n : {1u, 2u, 5u, 17u, 64u, 65u, 500u, 2999u, 3000u}) CHECK(all[n - 1] == factor_complexity(head, n));
  }
  CHECK(complexity_profile(prefix_of("abcab").view(), 5) == std::vector<std::size_t>{3, 3, 3, 2, 1});

  // Longer prefixes never lose blocks.
  std::size_t last = 0;
  for (std::size_t len = 64; len <= 4096; len *= 2) {
    const auto c = factor_complexity(std::span(xi2.data).first(len), 10);
    CHECK(c >= last);
    last = c;
  }
}

TEST_CASE("prefix text round trip") {
  const auto p = prefix_of("0211020");
  CHECK(dump_prefix(p) == "0211020\n");
  CHECK(parse_prefix_text(dump_prefix(p), "x").data == p.data);
}

}  // TEST_SUITE
