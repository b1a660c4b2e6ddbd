#include "autoseq/kernels.hpp"

#include <algorithm>

#include "autoseq/error.hpp"

namespace autoseq {

namespace {

void check_lengths(std::span<const Symbol> prefix, std::span<const std::size_t> lengths, std::size_t extra) {
  for (std::size_t n : lengths) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "block length must be >= 1");
    if (n + extra > prefix.size())
      throw Error(ErrorKind::InsufficientData, "block length " + std::to_string(n) + " needs " +
                                                   std::to_string(n + extra) + " symbols, have " +
                                                   std::to_string(prefix.size()));
  }
}

void check_profile_lengths(std::span<const Symbol> prefix, std::span<const std::uint64_t> lengths) {
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i > 0 && lengths[i] <= lengths[i - 1])
      throw Error(ErrorKind::InvalidArgument, "profile lengths must be increasing");
    if (lengths[i] > prefix.size())
      throw Error(ErrorKind::InsufficientData, "profile length " + std::to_string(lengths[i]) +
                                                   " exceeds prefix length " + std::to_string(prefix.size()));
  }
}

DioSample sample_at(std::span<const Symbol> prefix, std::uint64_t ell, const RepetitionCaps& caps) {
  DioSample s;
  s.length = ell;
  s.witness = best_repetition_at(prefix, ell, caps);
  if (s.witness) s.best = s.witness->ratio();
  return s;
}

void fill_records(std::vector<DioSample>& samples) {
  Rational record{1};
  for (auto& s : samples) {
    record = std::max(record, s.best);
    s.record = record;
  }
}

}  // namespace

namespace parallel {

std::vector<std::size_t> complexity_table(std::span<const Symbol> prefix, std::span<const std::size_t> lengths) {
  check_lengths(prefix, lengths, 0);
  std::vector<std::size_t> out(lengths.size());
  // many lengths: one suffix array beats a hash pass per length
  if (lengths.size() > 32) {
    const auto all = complexity_profile(prefix, *std::max_element(lengths.begin(), lengths.end()));
    for (std::size_t i = 0; i < lengths.size(); ++i) out[i] = all[lengths[i] - 1];
    return out;
  }
  const auto m = static_cast<std::int64_t>(lengths.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < m; ++i) out[i] = factor_complexity(prefix, lengths[i]);
  return out;
}

std::vector<std::size_t> right_special_table(std::span<const Symbol> prefix, std::span<const std::size_t> lengths) {
  check_lengths(prefix, lengths, 1);
  std::vector<std::size_t> out(lengths.size());
  const auto m = static_cast<std::int64_t>(lengths.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < m; ++i) out[i] = right_special_count(prefix, lengths[i]);
  return out;
}

std::vector<DioSample> dio_profile(std::span<const Symbol> prefix, std::span<const std::uint64_t> lengths,
                                   const RepetitionCaps& caps) {
  check_profile_lengths(prefix, lengths);
  std::vector<DioSample> out(lengths.size());
  const auto m = static_cast<std::int64_t>(lengths.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < m; ++i) out[i] = sample_at(prefix, lengths[i], caps);
  fill_records(out);
  return out;
}

std::size_t first_mismatch(std::span<const Symbol> a, std::span<const Symbol> b) {
  const std::size_t count = std::min(a.size(), b.size());
  std::size_t first = count;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for reduction(min : first) schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    if (a[i] != b[i]) first = std::min(first, static_cast<std::size_t>(i));
  return first;
}

}  // namespace parallel

namespace serial {

std::vector<std::size_t> complexity_table(std::span<const Symbol> prefix, std::span<const std::size_t> lengths) {
  check_lengths(prefix, lengths, 0);
  std::vector<std::size_t> out;
  out.reserve(lengths.size());
  for (std::size_t n : lengths) out.push_back(factor_complexity(prefix, n));
  return out;
}

std::vector<std::size_t> right_special_table(std::span<const Symbol> prefix, std::span<const std::size_t> lengths) {
  check_lengths(prefix, lengths, 1);
  std::vector<std::size_t> out;
  out.reserve(lengths.size());
  for (std::size_t n : lengths) out.push_back(right_special_count(prefix, n));
  return out;
}

std::vector<DioSample> dio_profile(std::span<const Symbol> prefix, std::span<const std::uint64_t> lengths,
                                   const RepetitionCaps& caps) {
  check_profile_lengths(prefix, lengths);
  std::vector<DioSample> out;
  out.reserve(lengths.size());
  for (std::uint64_t ell : lengths) out.push_back(sample_at(prefix, ell, caps));
  fill_records(out);
  return out;
}

std::size_t first_mismatch(std::span<const Symbol> a, std::span<const Symbol> b) {
  const std::size_t count = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < count; ++i)
    if (a[i] != b[i]) return i;
  return count;
}

}  // namespace serial

}  // namespace autoseq
