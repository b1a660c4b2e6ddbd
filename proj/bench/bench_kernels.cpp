// OpenMP kernels against their serial references on catalog sequences.

#include <benchmark/benchmark.h>

#include "autoseq/dfao.hpp"
#include "autoseq/kernels.hpp"
#include "autoseq/numbers.hpp"

namespace {

using namespace autoseq;

SequencePrefix thue_morse(std::size_t n) {
  static const auto full = dfao_prefix(catalog_dfao("tm"), 1 << 18);
  auto cut = full;
  cut.data.resize(n);
  return cut;
}

std::vector<std::size_t> block_lengths() {
  std::vector<std::size_t> v;
  for (std::size_t n = 1; n <= 64; ++n) v.push_back(n);
  return v;
}

void BM_GenerateParallel(benchmark::State& st) {
  const auto m = catalog_dfao("tm");
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(parallel::generate(n, [&](std::uint64_t i) { return run_dfao(m, i); }));
}

void BM_GenerateSerial(benchmark::State& st) {
  const auto m = catalog_dfao("tm");
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(serial::generate(n, [&](std::uint64_t i) { return run_dfao(m, i); }));
}

void BM_ComplexityParallel(benchmark::State& st) {
  const auto p = thue_morse(static_cast<std::size_t>(st.range(0)));
  const auto lengths = block_lengths();
  for (auto _ : st) benchmark::DoNotOptimize(parallel::complexity_table(p.view(), lengths));
}

void BM_ComplexitySerial(benchmark::State& st) {
  const auto p = thue_morse(static_cast<std::size_t>(st.range(0)));
  const auto lengths = block_lengths();
  for (auto _ : st) benchmark::DoNotOptimize(serial::complexity_table(p.view(), lengths));
}

std::vector<std::uint64_t> dio_lengths(std::size_t n) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t l = 16; l <= n; l *= 2) v.push_back(l);
  return v;
}

void BM_DioParallel(benchmark::State& st) {
  const auto p = thue_morse(static_cast<std::size_t>(st.range(0)));
  const auto lengths = dio_lengths(p.size());
  for (auto _ : st) benchmark::DoNotOptimize(parallel::dio_profile(p.view(), lengths));
}

void BM_DioSerial(benchmark::State& st) {
  const auto p = thue_morse(static_cast<std::size_t>(st.range(0)));
  const auto lengths = dio_lengths(p.size());
  for (auto _ : st) benchmark::DoNotOptimize(serial::dio_profile(p.view(), lengths));
}

void BM_ImitationParallel(benchmark::State& st) {
  const auto target = imitation_target(parse_stream_spec("surd:2", 2), 64);
  for (auto _ : st) benchmark::DoNotOptimize(imitation_index(target, 2, static_cast<unsigned>(st.range(0))));
}

void BM_ImitationSerial(benchmark::State& st) {
  const auto target = imitation_target(parse_stream_spec("surd:2", 2), 64);
  for (auto _ : st) benchmark::DoNotOptimize(serial::imitation_index(target, 2, static_cast<unsigned>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_GenerateParallel)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_GenerateSerial)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_ComplexityParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ComplexitySerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_DioParallel)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_DioSerial)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_ImitationParallel)->Arg(2)->Arg(3);
BENCHMARK(BM_ImitationSerial)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
