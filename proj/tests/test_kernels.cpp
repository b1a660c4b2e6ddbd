#include <doctest.h>

#include "autoseq/dfao.hpp"
#include "autoseq/kernels.hpp"
#include "autoseq/machine_io.hpp"
#include "autoseq/morphic.hpp"
#include "autoseq/pda.hpp"

using namespace autoseq;

TEST_SUITE("kernels") {

TEST_CASE("parallel kernels reproduce the serial references") {
  const std::vector<SequencePrefix> prefixes = {
      dfao_prefix(catalog_dfao("tm"), 1 << 14),
      dfao_prefix(catalog_dfao("three-squares"), 1 << 14),
      pda_prefix(catalog_dpao("xi2"), 1 << 14),
      fixed_point_prefix(catalog_morphic("xi1"), 1 << 14).coded,
  };
  std::vector<std::size_t> lengths;
  for (std::size_t n = 1; n <= 80; ++n) lengths.push_back(n);
  std::vector<std::uint64_t> dio;
  for (std::uint64_t l = 4; l <= (1u << 12); l += 97) dio.push_back(l);
  for (const auto& p : prefixes) {
    CHECK(parallel::complexity_table(p.view(), lengths) == serial::complexity_table(p.view(), lengths));
    CHECK(parallel::right_special_table(p.view(), lengths) == serial::right_special_table(p.view(), lengths));
    const auto a = parallel::dio_profile(p.view(), dio);
    const auto b = serial::dio_profile(p.view(), dio);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].best == b[i].best);
      CHECK(a[i].record == b[i].record);
      CHECK(a[i].witness == b[i].witness);
    }
    CHECK(parallel::first_mismatch(p.view(), p.view()) == p.size());
  }
  CHECK(parallel::first_mismatch(prefixes[0].view(), prefixes[1].view()) ==
        serial::first_mismatch(prefixes[0].view(), prefixes[1].view()));

  const auto m = catalog_dfao("three-squares");
  const auto f = [&](std::uint64_t n) { return run_dfao(m, n); };
  CHECK(parallel::generate(5000, f) == serial::generate(5000, f));
}

TEST_CASE("complexity tables agree with the single-length counters") {
  const auto p = pda_prefix(catalog_dpao("xi2"), 4096);
  const std::vector<std::size_t> lengths{1, 2, 3, 7, 30, 100};
  const auto table = parallel::complexity_table(p.view(), lengths);
  const auto special = parallel::right_special_table(p.view(), lengths);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    CHECK(table[i] == factor_complexity(p.view(), lengths[i]));
    CHECK(special[i] == right_special_count(p.view(), lengths[i]));
  }
}

}  // TEST_SUITE
