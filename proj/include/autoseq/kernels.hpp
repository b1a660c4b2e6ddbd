#pragma once

// Data-parallel kernels. Each kernel has an OpenMP version (namespace
// `parallel`, used by the library) and a plain loop kept in namespace
// `serial` as the reference the tests and benchmarks compare against.
// Both produce identical results in identical order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "autoseq/words.hpp"

namespace autoseq {

namespace parallel {

/// out[i] = f(i) for i in [0, count).
template <class F>
FiniteWord generate(std::size_t count, F&& f) {
  FiniteWord out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::uint64_t>(i));
  return out;
}

std::vector<std::size_t> complexity_table(std::span<const Symbol> prefix,
                                          std::span<const std::size_t> lengths);

std::vector<std::size_t> right_special_table(std::span<const Symbol> prefix,
                                             std::span<const std::size_t> lengths);

std::vector<DioSample> dio_profile(std::span<const Symbol> prefix,
                                   std::span<const std::uint64_t> lengths,
                                   const RepetitionCaps& caps = {});

/// First index i < count with a[i] != b[i]; count if none.
std::size_t first_mismatch(std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace parallel

namespace serial {

template <class F>
FiniteWord generate(std::size_t count, F&& f) {
  FiniteWord out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = f(static_cast<std::uint64_t>(i));
  return out;
}

std::vector<std::size_t> complexity_table(std::span<const Symbol> prefix,
                                          std::span<const std::size_t> lengths);

std::vector<std::size_t> right_special_table(std::span<const Symbol> prefix,
                                             std::span<const std::size_t> lengths);

std::vector<DioSample> dio_profile(std::span<const Symbol> prefix,
                                   std::span<const std::uint64_t> lengths,
                                   const RepetitionCaps& caps = {});

std::size_t first_mismatch(std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace serial

}  // namespace autoseq
