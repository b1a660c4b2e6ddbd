#include "autoseq/alphabet.hpp"

#include "autoseq/error.hpp"
#include "autoseq/rational.hpp"

#include <charconv>

namespace autoseq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidBase: return "invalid-base";
    case ErrorKind::InvalidDigit: return "invalid-digit";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::MissingTransition: return "missing-transition";
    case ErrorKind::UnknownState: return "unknown-state";
    case ErrorKind::UnknownSymbol: return "unknown-symbol";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::NotProlongable: return "not-prolongable";
    case ErrorKind::UnsupportedErasing: return "unsupported-erasing";
    case ErrorKind::UnsupportedForm: return "unsupported-form";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::DeterminismConflict: return "determinism-conflict";
    case ErrorKind::Incomplete: return "incompleteness";
    case ErrorKind::IncreasingEpsilon: return "increasing-epsilon";
    case ErrorKind::NumericError: return "numeric-error";
    case ErrorKind::PerfectSquare: return "perfect-square";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::AlphabetMismatch: return "alphabet-mismatch";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::InvalidCertificate: return "invalid-certificate";
    case ErrorKind::VerificationFailure: return "verification-failure";
  }
  return "error";
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol name");
    if (!lookup_.emplace(symbols_[i], static_cast<Symbol>(i)).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate symbol '" + symbols_[i] + "'");
  }
}

Alphabet Alphabet::digits(unsigned base) {
  if (base < 2) throw Error(ErrorKind::InvalidBase, "base must be >= 2");
  std::vector<std::string> names;
  names.reserve(base);
  for (unsigned d = 0; d < base; ++d) names.push_back(std::to_string(d));
  return Alphabet(std::move(names));
}

std::optional<Symbol> Alphabet::find(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::index(const std::string& name) const {
  auto s = find(name);
  if (!s) throw Error(ErrorKind::UnknownSymbol, "symbol '" + name + "' not in alphabet");
  return *s;
}

bool Alphabet::single_char() const noexcept {
  for (const auto& s : symbols_)
    if (s.size() != 1) return false;
  return true;
}

std::string Alphabet::render(const FiniteWord& w, const std::string& sep) const {
  std::string out;
  const bool compact = single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += sep;
    out += name(w[i]);
  }
  return out;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {
std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::Parse, "not an integer: '" + std::string(s) + "'");
  return v;
}
}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(std::string_view(text).substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
  return Rational(parse_int(std::string_view(text).substr(0, slash)), den);
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace autoseq
