#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "autoseq/error.hpp"
#include "autoseq/source.hpp"
#include "autoseq/words.hpp"

namespace autoseq {

/// Deterministic finite automaton with output reading base-k expansions,
/// most significant digit first. States are indices into `states`.
struct Dfao {
  static constexpr std::size_t kNoState = std::numeric_limits<std::size_t>::max();

  unsigned k = 2;
  std::vector<std::string> states;
  std::size_t initial = 0;
  /// delta[q * k + d]; kNoState marks a missing transition (rejected by validation).
  std::vector<std::size_t> delta;
  Alphabet output_alphabet;
  std::vector<Symbol> tau;

  std::size_t next(std::size_t q, Symbol digit) const { return delta[q * k + digit]; }
  std::size_t state_index(const std::string& name) const;
  /// δ(q0, w) for a digit word w.
  std::size_t run_word(std::span<const Symbol> w) const;

  bool operator==(const Dfao&) const = default;
};

/// Throws on missing transitions, unknown targets, bad outputs or k < 2.
/// Unreachable states are reported as warnings.
ValidationReport validate_dfao(const Dfao& m);

/// τ(δ(q0, ⟨n⟩_k)).
Symbol run_dfao(const Dfao& m, std::uint64_t n);

/// Position p holds the output for n = p - 1.
SequencePrefix dfao_prefix(const Dfao& m, std::size_t count, const std::string& source_id = "dfao");

SequenceSource dfao_source(const Dfao& m, const std::string& source_id = "dfao");

/// "thue-morse" (alias "tm") or "three-squares" (alias "xi0").
Dfao catalog_dfao(const std::string& name);

}  // namespace autoseq
