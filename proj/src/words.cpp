#include "autoseq/words.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "autoseq/error.hpp"
#include "block_ids.hpp"

namespace autoseq {

Rational RepetitionWitness::ratio() const {
  return Rational(static_cast<std::int64_t>(u + ext), static_cast<std::int64_t>(u + v));
}

Rational RepetitionWitness::alpha() const {
  return Rational(static_cast<std::int64_t>(ext), static_cast<std::int64_t>(v));
}

FiniteWord encode_base_k(std::uint64_t n, unsigned k) {
  if (k < 2) throw Error(ErrorKind::InvalidBase, "base " + std::to_string(k) + " < 2");
  FiniteWord digits;
  while (n > 0) {
    digits.push_back(static_cast<Symbol>(n % k));
    n /= k;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::uint64_t decode_base_k(std::span<const Symbol> w, unsigned k) {
  if (k < 2) throw Error(ErrorKind::InvalidBase, "base " + std::to_string(k) + " < 2");
  std::uint64_t value = 0;
  for (Symbol d : w) {
    if (d >= k)
      throw Error(ErrorKind::InvalidDigit,
                  "digit " + std::to_string(d) + " not below base " + std::to_string(k));
    if (value > (UINT64_MAX - d) / k) throw Error(ErrorKind::InvalidArgument, "value exceeds 64 bits");
    value = value * k + d;
  }
  return value;
}

FiniteWord fractional_power(std::span<const Symbol> w, const Rational& x) {
  if (w.empty()) throw Error(ErrorKind::InvalidArgument, "fractional power of the empty word");
  if (x <= 0) throw Error(ErrorKind::InvalidArgument, "exponent must be positive");
  const std::int64_t whole = x.numerator() / x.denominator();
  const Rational frac = x - whole;
  // ceil(frac * |W|)
  const Rational scaled = frac * static_cast<std::int64_t>(w.size());
  std::int64_t tail = scaled.numerator() / scaled.denominator();
  if (tail * scaled.denominator() != scaled.numerator()) ++tail;

  FiniteWord out;
  out.reserve(static_cast<std::size_t>(whole) * w.size() + static_cast<std::size_t>(tail));
  for (std::int64_t i = 0; i < whole; ++i) out.insert(out.end(), w.begin(), w.end());
  out.insert(out.end(), w.begin(), w.begin() + tail);
  return out;
}

bool verify_repetition(std::span<const Symbol> prefix, const RepetitionWitness& w) {
  if (w.v == 0 || w.ext < w.v) throw Error(ErrorKind::InvalidArgument, "witness needs v >= 1 and ext >= v");
  if (w.u + w.ext > prefix.size())
    throw Error(ErrorKind::InsufficientData, "witness ends at " + std::to_string(w.u + w.ext) +
                                                 " but only " + std::to_string(prefix.size()) +
                                                 " symbols are available");
  // 1-based i in (u+v, u+ext]  ->  0-based i-1
  for (std::uint64_t i = w.u + w.v; i < w.u + w.ext; ++i)
    if (prefix[i] != prefix[i - w.v]) return false;
  return true;
}

std::optional<RepetitionWitness> best_repetition_at(std::span<const Symbol> prefix, std::uint64_t ell,
                                                    const RepetitionCaps& caps) {
  if (ell > prefix.size())
    throw Error(ErrorKind::InsufficientData, "ell " + std::to_string(ell) + " beyond prefix");
  if (ell < 2) return std::nullopt;
  std::uint64_t v_max = ell - 1;
  if (caps.max_period) v_max = std::min(v_max, *caps.max_period);

  // For a fixed v the best u is the smallest one, i.e. the longest run of
  // period-v agreements ending at ell. The ratio is ell / (ell - run).
  std::uint64_t best_run = 0;
  std::uint64_t best_v = 0;
  for (std::uint64_t v = 1; v <= v_max; ++v) {
    const std::uint64_t limit = ell - v;  // keeps u >= 0
    if (limit <= best_run) break;         // later v cannot beat the current run
    std::uint64_t run = 0;
    while (run < limit && prefix[ell - 1 - run] == prefix[ell - 1 - run - v]) ++run;
    if (run > best_run) {
      best_run = run;
      best_v = v;
    }
  }
  if (best_run == 0) return std::nullopt;
  RepetitionWitness w;
  w.v = best_v;
  w.u = ell - best_v - best_run;
  w.ext = best_run + best_v;
  return w;
}

std::size_t factor_complexity(std::span<const Symbol> prefix, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "block length must be >= 1");
  if (n > prefix.size())
    throw Error(ErrorKind::InsufficientData,
                "block length " + std::to_string(n) + " exceeds prefix length " + std::to_string(prefix.size()));
  return detail::BlockIds(prefix, n).distinct();
}

std::vector<std::size_t> complexity_profile(std::span<const Symbol> prefix, std::size_t max_n) {
  const std::size_t len = prefix.size();
  if (max_n > len)
    throw Error(ErrorKind::InsufficientData,
                "block length " + std::to_string(max_n) + " exceeds prefix length " + std::to_string(len));
  // prefix doubling
  std::vector<std::size_t> sa(len), rank(len), tmp(len);
  for (std::size_t i = 0; i < len; ++i) {
    sa[i] = i;
    rank[i] = prefix[i];
  }
  for (std::size_t gap = 1;; gap *= 2) {
    auto key = [&](std::size_t i) {
      return std::pair<std::size_t, std::int64_t>(rank[i], i + gap < len ? static_cast<std::int64_t>(rank[i + gap]) : -1);
    };
    std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < len; ++i) tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]));
    rank.swap(tmp);
    if (len == 0 || rank[sa[len - 1]] == len - 1) break;
  }
  // Kasai: lcp of each suffix with its predecessor in sorted order
  std::vector<std::size_t> lcp(len, 0);
  for (std::size_t i = 0, h = 0; i < len; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < len && j + h < len && prefix[i + h] == prefix[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h) --h;
  }
  // suffix r starts a new length-n block for lcp[r] < n <= its length
  std::vector<std::int64_t> diff(max_n + 2, 0);
  for (std::size_t r = 0; r < len; ++r) {
    const std::size_t lo = lcp[r] + 1, hi = std::min(len - sa[r], max_n);
    if (lo > hi) continue;
    ++diff[lo];
    --diff[hi + 1];
  }
  std::vector<std::size_t> p(max_n);
  std::int64_t run = 0;
  for (std::size_t n = 1; n <= max_n; ++n) p[n - 1] = static_cast<std::size_t>(run += diff[n]);
  return p;
}

std::size_t right_special_count(std::span<const Symbol> prefix, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "block length must be >= 1");
  if (n + 1 > prefix.size())
    throw Error(ErrorKind::InsufficientData,
                "need at least " + std::to_string(n + 1) + " symbols, have " + std::to_string(prefix.size()));
  const detail::BlockIds ids(prefix.first(prefix.size() - 1), n);
  constexpr Symbol kUnset = static_cast<Symbol>(-1);
  std::vector<Symbol> first_successor(ids.distinct(), kUnset);
  std::vector<char> special(ids.distinct(), 0);
  std::size_t count = 0;
  for (std::size_t j = 0; j + n < prefix.size(); ++j) {
    const auto id = ids.id_at(j);
    const Symbol next = prefix[j + n];
    if (first_successor[id] == kUnset) {
      first_successor[id] = next;
    } else if (!special[id] && first_successor[id] != next) {
      special[id] = 1;
      ++count;
    }
  }
  return count;
}

std::string dump_prefix(const SequencePrefix& prefix) {
  const bool compact = prefix.alphabet.single_char() && prefix.alphabet.size() <= 10;
  std::string out;
  for (Symbol s : prefix.data) {
    out += prefix.alphabet.name(s);
    if (!compact) out += '\n';
  }
  if (compact) out += '\n';
  return out;
}

SequencePrefix parse_prefix_text(const std::string& text, const std::string& source_id,
                                 const std::optional<Alphabet>& alphabet) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
  }
  std::vector<std::string> tokens;
  if (lines.size() == 1) {
    for (char c : lines.front())
      if (c != ' ') tokens.emplace_back(1, c);
  } else {
    tokens = std::move(lines);
  }

  SequencePrefix prefix;
  prefix.source_id = source_id;
  if (alphabet) {
    prefix.alphabet = *alphabet;
  } else {
    std::set<std::string> seen(tokens.begin(), tokens.end());
    prefix.alphabet = Alphabet(std::vector<std::string>(seen.begin(), seen.end()));
  }
  prefix.data.reserve(tokens.size());
  for (const auto& t : tokens) prefix.data.push_back(prefix.alphabet.index(t));
  return prefix;
}

}  // namespace autoseq
