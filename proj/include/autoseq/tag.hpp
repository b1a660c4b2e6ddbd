#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "autoseq/morphic.hpp"
#include "autoseq/rational.hpp"

namespace autoseq {

/// A morphic spec viewed as a tag machine. The size is derived, never stored.
struct TagMachine {
  MorphicSpec spec;

  /// |A| + L with L the longest image.
  std::size_t size() const { return spec.internal().size() + spec.sigma.max_image_length(); }
};

struct DilationSample {
  std::uint64_t n = 0;
  Rational ratio;  // W(n) / n
};

struct DilationEstimate {
  /// n = 1, 2, 4, ... up to N, plus the argmin when it is not a power of two.
  std::vector<DilationSample> samples;
  Rational min_ratio;
  std::uint64_t argmin = 0;
  /// Exact, from the incidence matrix; not a statement about the samples.
  bool exceeds_one = false;
};

/// W(n) = |σ(u_1 ... u_n)| over the internal fixed point, accumulated in a
/// single pass for n = 1 .. N.
DilationEstimate dilation_profile(const TagMachine& t, std::uint64_t N);

/// Dilation factor > 1 iff the morphism has exponential growth.
bool dilation_exceeds_one(const TagMachine& t);

}  // namespace autoseq
