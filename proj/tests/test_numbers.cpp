#include <random>
#include <regex>

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include "autoseq/error.hpp"
#include "autoseq/numbers.hpp"
#include "autoseq/pda.hpp"

using namespace autoseq;
using boost::multiprecision::cpp_int;

namespace {

// Newton iteration, independent of the library's square root.
cpp_int newton_isqrt(const cpp_int& n) {
  if (n < 2) return n;
  cpp_int x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

cpp_int value_of(const FiniteWord& digits, unsigned b, cpp_int acc = 0) {
  for (auto d : digits) acc = acc * b + d;
  return acc;
}

SequenceSource word_source(FiniteWord w, Alphabet a) {
  const auto size = w.size();
  return SequenceSource(
      "fixture", std::move(a), 0,
      [w = std::move(w)](std::size_t count) {
        REQUIRE(count <= w.size());
        return FiniteWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(count));
      },
      size);
}

}  // namespace

TEST_SUITE("numbers") {

TEST_CASE("rational digits") {
  CHECK(rational_digits(1, 3, 10, 5).render() == "33333");
  CHECK(rational_digits(1, 7, 10, 6).render() == "142857");
  CHECK(rational_digits(0, 1, 2, 4).render() == "0000");
  CHECK(rational_digits(1, 3, 2, 8).render() == "01010101");
}

TEST_CASE("surd digits") {
  const auto s = surd_digits(2, 10, 39);
  CHECK(s.integer_part == FiniteWord{1});
  CHECK(s.fractional.render() == "414213562373095048801688724209698078569");
  const auto b = surd_digits(2, 2, 12);
  CHECK(b.integer_part == FiniteWord{1});
  CHECK(b.fractional.render() == "011010100000");
  CHECK(surd_digits(10, 10, 3).integer_part == FiniteWord{3});
  try {
    surd_digits(4, 10, 5);
    FAIL("perfect square accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PerfectSquare);
  }
}

TEST_CASE("integer square roots against Newton iteration") {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<std::uint64_t> pick_d(2, 100000);
  std::uniform_int_distribution<unsigned> pick_b(2, 16), pick_i(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t d = pick_d(rng);
    const auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d)));
    if (r * r == d || (r + 1) * (r + 1) == d) ++d;
    const unsigned b = pick_b(rng), i = pick_i(rng);
    const auto s = surd_digits(d, b, i);
    const cpp_int scaled = value_of(s.fractional.data, b, value_of(s.integer_part, b));
    const cpp_int target = cpp_int(d) * boost::multiprecision::pow(cpp_int(b), 2 * i);
    INFO("d=" << d << " b=" << b << " i=" << i);
    REQUIRE(scaled == newton_isqrt(target));
    REQUIRE(scaled * scaled <= target);
    REQUIRE((scaled + 1) * (scaled + 1) > target);
    // more precision never changes earlier digits
    const auto longer = surd_digits(d, b, i + 10);
    REQUIRE(std::equal(s.fractional.data.begin(), s.fractional.data.end(), longer.fractional.data.begin()));
  }
}

TEST_CASE("xi3") {
  CHECK(xi3_sequence(10).render() == "1101201100");
  CHECK(xi3_value(5) == 2);
  CHECK(xi3_value(6) == 0);
  const std::regex block("(1+)(0+)(1+)");
  for (std::uint64_t n = 1; n < 100000; ++n) {
    std::string bits;
    for (auto m = n; m; m >>= 1) bits.insert(bits.begin(), static_cast<char>('0' + (m & 1)));
    std::smatch g;
    Symbol expect = static_cast<Symbol>(std::count(bits.begin(), bits.end(), '1') % 2);
    if (std::regex_match(bits, g, block) && g[1].length() == g[2].length() && g[2].length() == g[3].length())
      expect = 2;
    REQUIRE(xi3_value(n) == expect);
  }
}

TEST_CASE("continued fractions") {
  CHECK(cf_quadratic(2) == CFExpansion{1, {}, {2}});
  CHECK(cf_quadratic(3) == CFExpansion{1, {}, {1, 2}});
  CHECK(cf_quadratic(7) == CFExpansion{2, {}, {1, 1, 1, 4}});
  CHECK_THROWS_AS(cf_quadratic(9), Error);
  CHECK(cf_as_sequence(cf_quadratic(2), 6).render() == "222222");
  CHECK(cf_as_sequence(CFExpansion{1, {}, {1}}, 5).render() == "11111");
  CHECK(cf_as_sequence(cf_quadratic(7), 8).render() == "11141114");

  for (std::uint64_t d : {2u, 3u, 5u, 7u, 13u, 19u, 31u, 94u}) {
    const auto cf = cf_quadratic(d);
    std::vector<std::int64_t> a{cf.a0};
    for (std::size_t m = 0; a.size() <= 10; ++m) a.push_back(cf.period[m % cf.period.size()]);
    cpp_int p_prev = 1, q_prev = 0, p = a[0], q = 1;
    for (std::size_t m = 0; m <= 10; ++m) {
      if (m > 0) {
        const cpp_int pn = a[m] * p + p_prev, qn = a[m] * q + q_prev;
        p_prev = p, q_prev = q, p = pn, q = qn;
      }
      // |√d − p/q| < 1/q² ⟺ (pq − 1)² < d q⁴ < (pq + 1)²
      const cpp_int q4 = q * q * q * q;
      INFO("d=" << d << " m=" << m);
      CHECK((p * q - 1) * (p * q - 1) < d * q4);
      CHECK(d * q4 < (p * q + 1) * (p * q + 1));
    }
  }
}

TEST_CASE("longest agreement") {
  const auto x = stream_source(parse_stream_spec("surd:3", 10));
  const auto same = longest_agreement(x, x, 100);
  CHECK(same.length == 100);
  CHECK(same.censored);

  FiniteWord oracle;
  for (std::uint64_t n = 0; n < 10000; ++n) {
    int ones = 0, zeros = 0;
    for (auto m = n; m; m >>= 1) (m & 1 ? ones : zeros)++;
    oracle.push_back(std::abs(ones - zeros) <= 1 ? 1 : 0);
  }
  const auto xi2 = longest_agreement(pda_source(catalog_dpao("xi2")), word_source(oracle, Alphabet::digits(2)), 10000);
  CHECK(xi2.length == 10000);
  CHECK(xi2.censored);

  const auto sqrt2 = imitation_target(parse_stream_spec("surd:2", 2), 100);
  CHECK(sqrt2.render().substr(0, 5) == "10110");
  const auto ones = longest_agreement(word_source(FiniteWord(100, 1), Alphabet::digits(2)),
                                      word_source(sqrt2.data, Alphabet::digits(2)), 100);
  CHECK(ones.length == 1);
  CHECK_FALSE(ones.censored);
  CHECK_THROWS_AS(longest_agreement(x, word_source(oracle, Alphabet::digits(2)), 10), Error);
}

TEST_CASE("stream specs") {
  CHECK(parse_stream_spec("rational:1/3", 2).kind == StreamKind::Rational);
  CHECK(parse_stream_spec("surd:2", 10).d == 2);
  CHECK(parse_stream_spec("file:digits.txt", 10).path == "digits.txt");
  CHECK_THROWS_AS(parse_stream_spec("pi", 10), Error);
  CHECK_THROWS_AS(parse_stream_spec("rational:1/0", 10), Error);
  CHECK_THROWS_AS(parse_stream_spec("surd:16", 10), Error);
  const auto r = stream_source(parse_stream_spec("rational:1/7", 10));
  CHECK(r.first_index() == 1);
  CHECK(r.prefix(6).render() == "142857");
  CHECK(stream_source(parse_stream_spec("xi3", 2)).prefix(10).render() == "1101201100");
}

TEST_CASE("imitation index") {
  const auto sqrt2 = imitation_target(parse_stream_spec("surd:2", 2), 100);
  const auto one = imitation_index(sqrt2, 2, 1);
  CHECK(one.index == 1);
  CHECK_FALSE(one.censored);

  const auto third = imitation_target(parse_stream_spec("rational:1/3", 2), 64);
  const auto t = imitation_index(third, 2, 2);
  CHECK(t.index == 64);
  CHECK(t.censored);
  CHECK(t.best.states.size() == 2);
  for (std::uint64_t n = 0; n < 64; ++n) CHECK(run_dfao(t.best, n) == third.data[n]);

  // frozen from an exhaustive enumeration outside the library
  const auto sqrt2_64 = imitation_target(parse_stream_spec("surd:2", 2), 64);
  const auto two = imitation_index(sqrt2_64, 2, 2);
  CHECK(two.index == 5);
  const auto serial_two = serial::imitation_index(sqrt2_64, 2, 2);
  CHECK(serial_two.index == two.index);
  CHECK(serial_two.best == two.best);
  CHECK(serial_two.structures == two.structures);

  const auto three = imitation_index(sqrt2_64, 2, 3);
  CHECK(three.index >= two.index);
  CHECK(serial::imitation_index(sqrt2_64, 2, 3).best == three.best);

  CHECK(imitation_candidates(2, 1, 2) == 2u);
  CHECK(imitation_candidates(2, 2, 2) == 2u + 16u * 4u);
  try {
    imitation_index(sqrt2_64, 2, 6);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

}  // TEST_SUITE
