#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/error.hpp"
#include "autoseq/source.hpp"
#include "autoseq/words.hpp"

namespace autoseq {

/// Non-erasing endomorphism of A*, one image per letter in alphabet order.
struct Morphism {
  Alphabet alphabet;
  std::vector<FiniteWord> images;

  FiniteWord apply(std::span<const Symbol> w) const;
  std::size_t max_image_length() const;
  /// k when every image has length k, 0 otherwise.
  std::size_t uniform_length() const;

  bool operator==(const Morphism&) const = default;
};

/// Morphic word φ(σ^ω(a)).
struct MorphicSpec {
  Morphism sigma;
  Symbol start = 0;
  Alphabet external;
  std::vector<Symbol> coding;

  const Alphabet& internal() const noexcept { return sigma.alphabet; }

  bool operator==(const MorphicSpec&) const = default;
};

/// (M)_{i,j} = |σ(a_j)|_{a_i}, row-major.
struct IncidenceMatrix {
  std::size_t dim = 0;
  std::vector<std::int64_t> entries;

  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  /// M·x for a letter-count vector x.
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;
};

struct LetterGrowth {
  double theta = 1.0;        // spectral-radius estimate governing |σ^n(b)|
  unsigned poly_degree = 0;  // k in |σ^n(b)| ≍ n^k θ^n
  bool exponential = false;  // exact: some reachable component has Perron root > 1
};

struct GrowthReport {
  std::vector<LetterGrowth> per_letter;
  /// Letters of σ^ω(a) whose (θ, k) is lexicographically maximal.
  std::vector<Symbol> maximal_growth;
  bool global_exponential = false;
};

/// U b V b is a prefix of the internal fixed point; p1 < p2 are the 1-based
/// positions of the two b's.
struct MorphicSeed {
  FiniteWord u;
  Symbol b = 0;
  FiniteWord v;
  std::size_t p1 = 0;
  std::size_t p2 = 0;
};

struct FixedPointPrefix {
  SequencePrefix coded;     // over the external alphabet
  SequencePrefix internal;  // over the internal alphabet
};

/// Throws UnsupportedErasing, NotProlongable, UnknownSymbol. Letters missing
/// from σ^ω(a) become warnings.
ValidationReport validate_morphic(const MorphicSpec& spec);

/// First `count` letters of σ^ω(a), expanded by appending σ(u_i) for i = 2, 3, ...
FiniteWord internal_fixed_point(const MorphicSpec& spec, std::size_t count);

FixedPointPrefix fixed_point_prefix(const MorphicSpec& spec, std::size_t count,
                                    const std::string& source_id = "morphic");

SequenceSource morphic_source(const MorphicSpec& spec, const std::string& source_id = "morphic");
/// The uncoded fixed point σ^ω(a) as a source.
SequenceSource internal_source(const MorphicSpec& spec, const std::string& source_id = "morphic-internal");

IncidenceMatrix incidence(const Morphism& sigma);
inline IncidenceMatrix incidence(const MorphicSpec& spec) { return incidence(spec.sigma); }

/// Exact: true iff some strongly connected component of the letter graph has
/// a letter with two or more edges (counted with multiplicity) back into it.
bool exponential_growth(const Morphism& sigma);
inline bool exponential_growth(const MorphicSpec& spec) { return exponential_growth(spec.sigma); }

/// Power-iteration estimate of the spectral radius of M_σ. Throws
/// NumericError when the Collatz–Wielandt bounds do not close within the
/// iteration cap.
double spectral_radius_estimate(const Morphism& sigma, double tol = 1e-9);
inline double spectral_radius_estimate(const MorphicSpec& spec, double tol = 1e-9) {
  return spectral_radius_estimate(spec.sigma, tol);
}

GrowthReport growth_report(const MorphicSpec& spec);

/// Throws PreconditionViolation without exponential growth and
/// BudgetExceeded when no maximal-growth letter repeats within scan_len.
MorphicSeed morphic_witness(const MorphicSpec& spec, std::size_t scan_len = 1 << 16);

/// k-uniform morphism -> k-automaton: δ(q, i) = i-th letter of σ(q), τ = φ.
Dfao to_dfao(const MorphicSpec& spec);
/// k-automaton with δ(q0, 0) = q0 -> k-uniform morphism.
MorphicSpec from_dfao(const Dfao& m);

}  // namespace autoseq
