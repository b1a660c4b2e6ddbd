#pragma once
// Deterministic pushdown automata with output (DPAO) read as transducers on
// base-k expansions. Stacks are words over Γ with the top on the right; the
// empty word stands for the bottom marker #.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/error.hpp"
#include "autoseq/source.hpp"
#include "autoseq/words.hpp"

namespace autoseq {

/// Top-of-stack column: kBottom for #, otherwise 1 + the Γ symbol index.
using StackTop = std::uint32_t;
inline constexpr StackTop kBottom = 0;

struct DpaoTransition {
  std::size_t state = 0;
  StackTop top = kBottom;
  std::optional<Symbol> input;  // nullopt is ε
  std::size_t to = 0;
  FiniteWord push;  // bottom to top

  bool operator==(const DpaoTransition&) const = default;
};

struct Dpao {
  unsigned k = 2;
  std::vector<std::string> states;
  std::size_t initial = 0;
  Alphabet stack_alphabet;  // Γ, without #
  std::vector<DpaoTransition> transitions;
  Alphabet output_alphabet;
  /// tau[q * (|Γ| + 1) + top]
  std::vector<Symbol> tau;

  std::size_t columns() const noexcept { return stack_alphabet.size() + 1; }
  Symbol output(std::size_t q, StackTop top) const { return tau[q * columns() + top]; }
  std::size_t state_index(const std::string& name) const;

  bool operator==(const Dpao&) const = default;
};

struct StackConfig {
  std::size_t state = 0;
  FiniteWord stack;

  StackTop top() const noexcept { return stack.empty() ? kBottom : stack.back() + 1; }
  std::size_t height() const noexcept { return stack.size(); }

  auto operator<=>(const StackConfig&) const = default;
};

/// pop[q][z] lists the states in which the machine can be at the moment the
/// stack first drops below the position holding z, starting from (q, ...z).
/// witness[q][z][i] is an input word realising pop[q][z][i].
struct PopTable {
  std::vector<std::vector<std::vector<std::size_t>>> pop;
  std::vector<std::vector<std::vector<FiniteWord>>> witness;

  bool permanent(std::size_t q, Symbol z) const { return pop[q][z].empty(); }
};

enum class PairMethod { Exact, Protected };

struct EquivalentPair {
  std::uint64_t n = 0;
  std::uint64_t n_prime = 0;
  PairMethod method = PairMethod::Exact;
};

struct PairBudget {
  std::uint64_t n_max = 1000;
  std::size_t height_cap = 64;
};

struct DistinguishVerdict {
  bool distinguished = false;
  FiniteWord witness;  // meaningful when distinguished
  std::size_t depth = 0;
};

/// Throws DeterminismConflict, Incomplete, IncreasingEpsilon, UnknownSymbol,
/// UnknownState. Unreachable states are warnings.
ValidationReport validate_dpao(const Dpao& m);

/// Digit transition followed by the exhaustive ε-closure.
StackConfig step_input(const Dpao& m, const StackConfig& c, Symbol digit);

/// C(n): the configuration after reading ⟨n⟩_k from the closed initial one.
StackConfig config_of(const Dpao& m, std::uint64_t n);

Symbol output_at(const Dpao& m, std::uint64_t n);
Symbol output_of(const Dpao& m, const StackConfig& c);

/// Position p holds the output for n = p - 1.
SequencePrefix pda_prefix(const Dpao& m, std::size_t count, const std::string& source_id = "dpao");
SequenceSource pda_source(const Dpao& m, const std::string& source_id = "dpao");

PopTable pop_analysis(const Dpao& m);

/// Scans n = 1 .. n_max. Returns the pair with the smallest n', then the
/// smallest n; the exact method wins ties.
std::optional<EquivalentPair> find_equivalent_pair(const Dpao& m, const PairBudget& budget);

/// Compares the outputs from C(n) and C(n') on every word of length <= depth.
/// Agreement proves nothing about longer words.
DistinguishVerdict bounded_distinguish(const Dpao& m, std::uint64_t n, std::uint64_t n_prime, std::size_t depth);
DistinguishVerdict bounded_distinguish(const Dpao& m, const StackConfig& a, const StackConfig& b,
                                       std::size_t depth);

/// |Q| + |Γ| + L, L the longest push word.
std::size_t pda_size(const Dpao& m);

/// Stack-free DPAO computing the same sequence as the automaton.
Dpao dpao_from_dfao(const Dfao& m);

std::string to_string(PairMethod method);

/// "xi2" (the balance machine) or "push-only".
Dpao catalog_dpao(const std::string& name);

}  // namespace autoseq
