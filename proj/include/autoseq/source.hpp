#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autoseq/words.hpp"

namespace autoseq {

/// Deterministic, restartable producer of an infinite word. Asking for a
/// longer prefix always extends the shorter one.
///
/// `first_index` is the integer whose symbol sits at position 1: machine
/// outputs start at n = 0, sequences defined from a_1 (such as the ξ3
/// predicate) start at n = 1.
class SequenceSource {
 public:
  using Generator = std::function<FiniteWord(std::size_t count)>;

  SequenceSource(std::string id, Alphabet alphabet, std::uint64_t first_index, Generator generator,
                 std::optional<std::size_t> available = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::uint64_t first_index() const noexcept { return first_index_; }
  /// Finite sources (files) cap the prefix length.
  std::optional<std::size_t> available() const noexcept { return available_; }

  /// Value certificates are bound to; defaults to the id.
  const std::string& binding() const noexcept { return binding_; }
  void set_binding(std::string binding) { binding_ = std::move(binding); }

  /// Throws InsufficientData when count exceeds what a finite source holds.
  SequencePrefix prefix(std::size_t count) const;

  /// 1-based sequence position holding the value for integer n.
  std::uint64_t position_of(std::uint64_t n) const { return n - first_index_ + 1; }

 private:
  std::string id_;
  Alphabet alphabet_;
  std::uint64_t first_index_;
  Generator generator_;
  std::optional<std::size_t> available_;
  std::string binding_;
};

/// Source over an already materialised word (file contents, test fixtures).
SequenceSource fixed_source(const SequencePrefix& prefix, std::uint64_t first_index = 0);

/// Best-repetition profile of the source at increasing lengths.
std::vector<DioSample> dio_profile(const SequenceSource& source, const std::vector<std::uint64_t>& lengths,
                                   const RepetitionCaps& caps = {});

}  // namespace autoseq
