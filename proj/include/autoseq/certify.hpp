#pragma once
// Repetition certificates: exact, re-checkable evidence that a sequence has
// Diophantine exponent > 1.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/morphic.hpp"
#include "autoseq/pda.hpp"
#include "autoseq/rational.hpp"
#include "autoseq/source.hpp"
#include "autoseq/words.hpp"

namespace autoseq {

enum class CertificateKind { DfaoPigeonhole, MorphicWitness, PdaPair, SequencePair };

struct CertificatePair {
  std::uint64_t n = 0;
  std::uint64_t n_prime = 0;
  unsigned k = 2;
  bool operator==(const CertificatePair&) const = default;
};

/// Seed U b V rendered over the internal alphabet, with the 1-based
/// positions of the two b's.
struct CertificateSeed {
  std::string u;
  std::string b;
  std::string v;
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
  bool operator==(const CertificateSeed&) const = default;
};

struct Certificate {
  CertificateKind kind = CertificateKind::SequencePair;
  /// What the certificate is bound to: a machine-file hash or a stream binding.
  std::string machine;
  std::optional<CertificatePair> pair;
  std::optional<std::string> method;  // exact / protected, for pushdown pairs
  std::optional<CertificateSeed> seed;
  /// Integer at sequence position 1 (pair identities depend on it).
  std::uint64_t first_index = 0;
  Rational dio_lower_bound{1};
  Rational ratio_growth_bound{1};
  /// Pair certificates: the value the witness ratios decrease to, (n'+1)/n'.
  std::optional<Rational> witness_ratio_limit;
  std::uint64_t verified_depth = 0;
  std::vector<RepetitionWitness> witnesses;

  bool operator==(const Certificate&) const = default;
};

/// Why a pair is not output-equivalent: a_{k^ℓ n + i} != a_{k^ℓ n' + i}.
struct PairRefutation {
  std::uint64_t level = 0;
  std::uint64_t offset = 0;
  std::string message;
};

using PairOutcome = std::variant<Certificate, PairRefutation>;

/// Checks a_{k^ℓ n + i} = a_{k^ℓ n' + i} for ℓ <= depth, i < k^ℓ and
/// materialises U_ℓ V_ℓ^{1 + 1/(n'-n)}.
PairOutcome certificate_from_pair(const SequenceSource& source, std::uint64_t n, std::uint64_t n_prime,
                                  unsigned k, std::uint64_t depth,
                                  CertificateKind kind = CertificateKind::SequencePair);

/// First repeated state among n = 1, 2, ... gives the pair.
Certificate certify_dfao(const Dfao& m, std::uint64_t depth);

/// Witness family from the seed of morphic_witness, lengths computed by
/// incidence-matrix action for n = 0 .. depth.
Certificate certify_morphic(const MorphicSpec& spec, std::uint64_t depth);

/// Empty when the budget runs out before a pair is found.
std::optional<Certificate> certify_pda(const Dpao& m, const PairBudget& budget, std::uint64_t depth);

struct VerificationReport {
  bool valid = false;
  std::vector<std::string> lines;  // one per witness, plus the failure if any
  std::string failure;
};

struct VerifyOptions {
  std::uint64_t extra_depth = 0;
  /// When given, morphic witnesses are recomputed from the seed.
  const MorphicSpec* morphic = nullptr;
  /// Base used for the rational-approximation lines; 0 means the alphabet size.
  unsigned base = 0;
};

/// Re-checks every stored witness independently of how it was produced.
VerificationReport verify_certificate(const SequenceSource& source, const Certificate& cert,
                                      const VerifyOptions& options = {});

std::string to_string(CertificateKind kind);
/// Deterministic, pretty-printed JSON.
std::string certificate_to_json(const Certificate& cert);
/// Throws Error(Parse) / Error(InvalidCertificate).
Certificate certificate_from_json(const std::string& text);

}  // namespace autoseq
