#include <random>

#include <doctest.h>

#include "autoseq/machine_io.hpp"
#include "autoseq/tag.hpp"
#include "support.hpp"

using namespace autoseq;

TEST_SUITE("tag") {

TEST_CASE("size") {
  CHECK(TagMachine{catalog_morphic("xi1")}.size() == 6);
  CHECK(TagMachine{catalog_morphic("squares")}.size() == 6);
  CHECK(TagMachine{catalog_morphic("tm-morphic")}.size() == 4);
}

TEST_CASE("uniform machines dilate by exactly k") {
  const auto est = dilation_profile(TagMachine{catalog_morphic("tm-morphic")}, 1 << 10);
  for (const auto& s : est.samples) CHECK(s.ratio == Rational(2));
  CHECK(est.min_ratio == Rational(2));
  CHECK(est.exceeds_one);
  const auto three = dilation_profile(TagMachine{testing::morphism("ab", {"abb", "bab"})}, 1000);
  for (const auto& s : three.samples) CHECK(s.ratio == Rational(3));
}

TEST_CASE("frozen minima at N = 10^4") {
  const auto s1 = dilation_profile(TagMachine{catalog_morphic("xi1")}, 10000);
  CHECK(s1.min_ratio == Rational(2));
  CHECK(s1.argmin == 2);
  CHECK(s1.exceeds_one);

  const auto s2 = dilation_profile(TagMachine{catalog_morphic("squares")}, 10000);
  CHECK(s2.min_ratio == Rational(10199, 10000));
  CHECK(s2.argmin == 10000);
  CHECK_FALSE(s2.exceeds_one);
  // W(n)/n keeps falling towards 1 for the squares machine
  CHECK(dilation_profile(TagMachine{catalog_morphic("squares")}, 1000).min_ratio > s2.min_ratio);
}

TEST_CASE("samples") {
  const auto est = dilation_profile(TagMachine{catalog_morphic("squares")}, 100);
  std::vector<std::uint64_t> ns;
  for (const auto& s : est.samples) ns.push_back(s.n);
  CHECK(ns == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32, 64, 100});
  // W(1) = |σ(a)| = 2
  CHECK(est.samples.front().ratio == Rational(2));
}

TEST_CASE("dilation factor > 1 iff exponential growth") {
  CHECK(dilation_exceeds_one(TagMachine{catalog_morphic("xi1")}));
  CHECK_FALSE(dilation_exceeds_one(TagMachine{catalog_morphic("squares")}));
  CHECK(dilation_exceeds_one(TagMachine{catalog_morphic("tm-morphic")}));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 3), letter(0, 2);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> images;
    for (int a = 0; a < 3; ++a) {
      std::string img = a == 0 ? "a" : "";
      const int l = a == 0 ? std::max(2, len(rng)) : len(rng);
      while (static_cast<int>(img.size()) < l) img += static_cast<char>('a' + letter(rng));
      images.push_back(img);
    }
    const auto spec = testing::morphism("abc", images);
    const TagMachine t{spec};
    REQUIRE(dilation_exceeds_one(t) == exponential_growth(spec));
    // exponential machines keep W(n)/n above 1 on every sample
    if (dilation_exceeds_one(t)) REQUIRE(dilation_profile(t, 2000).min_ratio > Rational(1));
  }
}

}  // TEST_SUITE
