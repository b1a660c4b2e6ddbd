#include "autoseq/tag.hpp"

#include <algorithm>

namespace autoseq {

DilationEstimate dilation_profile(const TagMachine& t, std::uint64_t N) {
  if (N == 0) throw Error(ErrorKind::InvalidArgument, "dilation profile needs N >= 1");
  const auto u = internal_fixed_point(t.spec, static_cast<std::size_t>(N));

  DilationEstimate est;
  est.exceeds_one = dilation_exceeds_one(t);
  std::uint64_t w = 0;
  std::uint64_t next_sample = 1;
  for (std::uint64_t n = 1; n <= N; ++n) {
    w += t.spec.sigma.images[u[n - 1]].size();
    const auto ratio = Rational(static_cast<std::int64_t>(w), static_cast<std::int64_t>(n));
    if (n == 1 || ratio < est.min_ratio) {
      est.min_ratio = ratio;
      est.argmin = n;
    }
    if (n == next_sample) {
      est.samples.push_back({n, ratio});
      next_sample *= 2;
    }
  }
  if (est.samples.back().n != N)
    est.samples.push_back({N, Rational(static_cast<std::int64_t>(w), static_cast<std::int64_t>(N))});
  if (std::none_of(est.samples.begin(), est.samples.end(),
                   [&](const DilationSample& s) { return s.n == est.argmin; })) {
    auto at = std::find_if(est.samples.begin(), est.samples.end(),
                           [&](const DilationSample& s) { return s.n > est.argmin; });
    est.samples.insert(at, {est.argmin, est.min_ratio});
  }
  return est;
}

bool dilation_exceeds_one(const TagMachine& t) {
  validate_morphic(t.spec);
  return exponential_growth(t.spec);
}

}  // namespace autoseq
