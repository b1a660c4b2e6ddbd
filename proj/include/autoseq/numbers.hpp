#pragma once
// Exact digit oracles (rationals, quadratic surds, the ξ3 predicate),
// continued fractions of √d, and the imitation index of small automata.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/source.hpp"
#include "autoseq/words.hpp"

namespace autoseq {

/// First `count` base-b digits of p/q after the point, 0 <= p < q.
SequencePrefix rational_digits(std::uint64_t p, std::uint64_t q, unsigned b, std::size_t count);

struct SurdDigits {
  FiniteWord integer_part;  // base-b digits of floor(√d), most significant first
  SequencePrefix fractional;
};

/// Truncated base-b expansion of √d. Throws PerfectSquare when d is a square.
SurdDigits surd_digits(std::uint64_t d, unsigned b, std::size_t count);

/// 2 when ⟨n⟩_2 = 1^k 0^k 1^k (k >= 1), else the parity of the number of ones.
Symbol xi3_value(std::uint64_t n);
/// Position p holds xi3_value(p).
SequencePrefix xi3_sequence(std::size_t count);

struct CFExpansion {
  std::int64_t a0 = 0;
  std::vector<std::int64_t> preperiod;
  std::vector<std::int64_t> period;

  bool operator==(const CFExpansion&) const = default;
};

/// √d = [a0; preperiod, period, period, ...] with a minimal period.
CFExpansion cf_quadratic(std::uint64_t d);

/// Partial quotients a1 a2 ... over the alphabet of values that occur,
/// ordered numerically.
SequencePrefix cf_as_sequence(const CFExpansion& cf, std::size_t count);
SequenceSource cf_source(const CFExpansion& cf, const std::string& source_id = "cf");

struct Agreement {
  std::size_t length = 0;
  bool censored = false;  // no disagreement within max_len
};

/// Longest common prefix of the two sources, up to max_len. Throws
/// AlphabetMismatch when the alphabets differ.
Agreement longest_agreement(const SequenceSource& a, const SequenceSource& b, std::size_t max_len);

enum class StreamKind { Rational, Surd, Xi3, File };

/// "rational:p/q", "surd:d", "xi3" or "file:<path>", plus the base.
struct DigitStreamSpec {
  StreamKind kind = StreamKind::Xi3;
  unsigned base = 10;
  std::uint64_t p = 0, q = 1;  // rational
  std::uint64_t d = 0;         // surd
  std::string path;            // file
  std::string description;     // the spec text as given
};

DigitStreamSpec parse_stream_spec(const std::string& text, unsigned base);

/// Fractional digits for rational/surd streams (position 1 = first digit after
/// the point), ξ3 from n = 1, file contents from `file_first_index`.
SequenceSource stream_source(const DigitStreamSpec& spec, std::uint64_t file_first_index = 0);

/// Digits an automaton should reproduce from n = 0: the integer-part digits
/// followed by the fractional ones for numbers, the sequence itself otherwise.
SequencePrefix imitation_target(const DigitStreamSpec& spec, std::size_t count);

struct ImitationResult {
  std::size_t index = 0;  // I: longest agreement reached
  bool censored = false;  // I == max_len
  Dfao best;
  std::uint64_t structures = 0;  // canonical transition tables examined
};

/// Upper bound on the candidate machines, Σ_{s <= max_states} s^{s k} · |Δ|^s;
/// empty on overflow.
std::optional<std::uint64_t> imitation_candidates(unsigned k, unsigned max_states, std::size_t outputs);

inline constexpr std::uint64_t kImitationCap = 10'000'000;

/// Every canonical (BFS-labelled, fully reachable) k-DFAO with at most
/// max_states states against the target. Outputs range over the target's
/// alphabet. Throws CapExceeded above the cap.
ImitationResult imitation_index(const SequencePrefix& target, unsigned k, unsigned max_states,
                                std::uint64_t cap = kImitationCap);

namespace serial {
ImitationResult imitation_index(const SequencePrefix& target, unsigned k, unsigned max_states,
                                std::uint64_t cap = kImitationCap);
}

}  // namespace autoseq
