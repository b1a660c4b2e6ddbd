#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace autoseq {

using Symbol = std::uint32_t;
using FiniteWord = std::vector<Symbol>;

/// Ordered set of symbol names. The order is fixed at construction; incidence
/// matrices and stack encodings index into it.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  /// "0", "1", ..., "b-1".
  static Alphabet digits(unsigned base);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& name(Symbol s) const { return symbols_.at(s); }

  std::optional<Symbol> find(const std::string& name) const;
  /// Throws Error(UnknownSymbol) when absent.
  Symbol index(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }

  /// True when every name is a single byte, so words can be written contiguously.
  bool single_char() const noexcept;

  /// Concatenates symbol names (single-char alphabets) or joins them with sep.
  std::string render(const FiniteWord& w, const std::string& sep = " ") const;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> lookup_;
};

}  // namespace autoseq
