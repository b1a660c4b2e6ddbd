#include "autoseq/numbers.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "autoseq/kernels.hpp"

namespace autoseq {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void check_base(unsigned b) {
  if (b < 2) throw Error(ErrorKind::InvalidBase, "base " + std::to_string(b) + " < 2");
}

std::uint64_t isqrt64(std::uint64_t d) {
  return static_cast<std::uint64_t>(boost::multiprecision::sqrt(BigInt(d)));
}

// Base-b digits of x, most significant first, padded with zeros to `width`.
FiniteWord big_digits(BigInt x, unsigned b, std::size_t width = 0) {
  // Peel several digits per big division.
  unsigned chunk = 1;
  std::uint64_t step = b;
  while (step <= UINT64_MAX / b / b) {
    step *= b;
    ++chunk;
  }
  FiniteWord out;
  while (x > 0) {
    auto part = static_cast<std::uint64_t>(x % step);
    x /= step;
    for (unsigned i = 0; i < chunk; ++i) {
      out.push_back(static_cast<Symbol>(part % b));
      part /= b;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  if (out.size() < width) out.resize(width, 0);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

SequencePrefix rational_digits(std::uint64_t p, std::uint64_t q, unsigned b, std::size_t count) {
  check_base(b);
  if (q == 0 || p >= q) throw Error(ErrorKind::InvalidArgument, "rational digits need 0 <= p < q");
  SequencePrefix out;
  out.source_id = "rational:" + std::to_string(p) + "/" + std::to_string(q);
  out.alphabet = Alphabet::digits(b);
  out.data.reserve(count);
  unsigned __int128 r = p;
  for (std::size_t i = 0; i < count; ++i) {
    r *= b;
    out.data.push_back(static_cast<Symbol>(r / q));
    r %= q;
  }
  return out;
}

SurdDigits surd_digits(std::uint64_t d, unsigned b, std::size_t count) {
  check_base(b);
  const auto root = isqrt64(d);
  if (root * root == d) throw Error(ErrorKind::PerfectSquare, std::to_string(d) + " is a perfect square");
  const BigInt scale = boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(count));
  // floor(√d · b^count) = isqrt(d · b^{2 count}); its low `count` digits are
  // the truncated fractional expansion.
  const BigInt s = boost::multiprecision::sqrt(BigInt(d) * scale * scale);
  SurdDigits out;
  out.integer_part = big_digits(BigInt(root), b, 1);
  out.fractional.source_id = "surd:" + std::to_string(d);
  out.fractional.alphabet = Alphabet::digits(b);
  out.fractional.data = count ? big_digits(s % scale, b, count) : FiniteWord{};
  return out;
}

Symbol xi3_value(std::uint64_t n) {
  const int ones = __builtin_popcountll(n);
  if (n != 0) {
    const int len = 64 - __builtin_clzll(n);
    if (len % 3 == 0) {
      const int k = len / 3;
      const std::uint64_t block = (std::uint64_t{1} << k) - 1;
      if (n == ((block << (2 * k)) | block)) return 2;
    }
  }
  return static_cast<Symbol>(ones % 2);
}

SequencePrefix xi3_sequence(std::size_t count) {
  SequencePrefix out;
  out.source_id = "xi3";
  out.alphabet = Alphabet::digits(3);
  out.data = parallel::generate(count, [](std::uint64_t i) { return xi3_value(i + 1); });
  return out;
}

CFExpansion cf_quadratic(std::uint64_t d) {
  const auto a0 = isqrt64(d);
  if (a0 * a0 == d) throw Error(ErrorKind::PerfectSquare, std::to_string(d) + " is a perfect square");
  if (d > (std::uint64_t{1} << 60)) throw Error(ErrorKind::InvalidArgument, "d too large");
  // (√d + m) / den = a + 1 / next, classical integer recurrence
  const auto D = static_cast<std::int64_t>(d);
  const auto A0 = static_cast<std::int64_t>(a0);
  std::int64_t m = 0, den = 1, a = A0;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  std::vector<std::int64_t> quotients;
  for (;;) {
    m = den * a - m;
    den = (D - m * m) / den;
    a = (A0 + m) / den;
    const auto [it, fresh] = seen.emplace(std::make_pair(m, den), quotients.size());
    if (!fresh) {
      CFExpansion cf;
      cf.a0 = A0;
      cf.preperiod.assign(quotients.begin(), quotients.begin() + static_cast<std::ptrdiff_t>(it->second));
      cf.period.assign(quotients.begin() + static_cast<std::ptrdiff_t>(it->second), quotients.end());
      const std::size_t len = cf.period.size();
      for (std::size_t p = 1; p < len; ++p) {
        if (len % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < len && periodic; ++i) periodic = cf.period[i] == cf.period[i - p];
        if (periodic) {
          cf.period.resize(p);
          break;
        }
      }
      return cf;
    }
    quotients.push_back(a);
  }
}

namespace {

Alphabet cf_alphabet(const CFExpansion& cf) {
  std::vector<std::int64_t> values(cf.preperiod);
  values.insert(values.end(), cf.period.begin(), cf.period.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::string> names;
  for (auto v : values) names.push_back(std::to_string(v));
  return Alphabet(std::move(names));
}

}  // namespace

SequencePrefix cf_as_sequence(const CFExpansion& cf, std::size_t count) {
  if (cf.period.empty()) throw Error(ErrorKind::InvalidArgument, "continued fraction needs a period");
  for (auto v : cf.preperiod)
    if (v < 1) throw Error(ErrorKind::InvalidArgument, "partial quotients must be positive");
  for (auto v : cf.period)
    if (v < 1) throw Error(ErrorKind::InvalidArgument, "partial quotients must be positive");
  SequencePrefix out;
  out.source_id = "cf";
  out.alphabet = cf_alphabet(cf);
  out.data.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto v = i < cf.preperiod.size() ? cf.preperiod[i]
                                           : cf.period[(i - cf.preperiod.size()) % cf.period.size()];
    out.data.push_back(out.alphabet.index(std::to_string(v)));
  }
  return out;
}

SequenceSource cf_source(const CFExpansion& cf, const std::string& source_id) {
  return SequenceSource(source_id, cf_alphabet(cf), 1,
                        [cf](std::size_t count) { return cf_as_sequence(cf, count).data; });
}

Agreement longest_agreement(const SequenceSource& a, const SequenceSource& b, std::size_t max_len) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(ErrorKind::AlphabetMismatch, "sources '" + a.id() + "' and '" + b.id() + "' use different alphabets");
  const auto pa = a.prefix(max_len);
  const auto pb = b.prefix(max_len);
  const auto n = parallel::first_mismatch(pa.view(), pb.view());
  return {n, n == max_len};
}

DigitStreamSpec parse_stream_spec(const std::string& text, unsigned base) {
  check_base(base);
  DigitStreamSpec spec;
  spec.base = base;
  spec.description = text;
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "bad number '" + s + "' in stream spec '" + text + "'");
    try {
      return static_cast<std::uint64_t>(std::stoull(s));
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::InvalidArgument, "number '" + s + "' out of range");
    }
  };
  if (text == "xi3") {
    spec.kind = StreamKind::Xi3;
  } else if (text.rfind("rational:", 0) == 0) {
    const auto body = text.substr(9);
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw Error(ErrorKind::Parse, "expected rational:p/q, got '" + text + "'");
    spec.kind = StreamKind::Rational;
    spec.p = number(body.substr(0, slash));
    spec.q = number(body.substr(slash + 1));
    if (spec.q == 0 || spec.p >= spec.q) throw Error(ErrorKind::InvalidArgument, "rational stream needs 0 <= p < q");
  } else if (text.rfind("surd:", 0) == 0) {
    spec.kind = StreamKind::Surd;
    spec.d = number(text.substr(5));
    if (spec.d < 2) throw Error(ErrorKind::InvalidArgument, "surd stream needs d >= 2");
    const auto r = isqrt64(spec.d);
    if (r * r == spec.d) throw Error(ErrorKind::PerfectSquare, std::to_string(spec.d) + " is a perfect square");
  } else if (text.rfind("file:", 0) == 0) {
    spec.kind = StreamKind::File;
    spec.path = text.substr(5);
    if (spec.path.empty()) throw Error(ErrorKind::Parse, "file stream needs a path");
  } else {
    throw Error(ErrorKind::Parse, "unknown stream spec '" + text + "'");
  }
  return spec;
}

namespace {

SequencePrefix read_file_prefix(const DigitStreamSpec& spec) {
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + spec.path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_prefix_text(text.str(), spec.description);
}

}  // namespace

SequenceSource stream_source(const DigitStreamSpec& spec, std::uint64_t file_first_index) {
  const unsigned b = spec.base;
  const std::string id = spec.description + (spec.kind == StreamKind::Rational || spec.kind == StreamKind::Surd
                                                  ? "@base" + std::to_string(b)
                                                  : "");
  switch (spec.kind) {
    case StreamKind::Rational:
      return SequenceSource(id, Alphabet::digits(b), 1, [p = spec.p, q = spec.q, b](std::size_t count) {
        return rational_digits(p, q, b, count).data;
      });
    case StreamKind::Surd:
      return SequenceSource(id, Alphabet::digits(b), 1,
                            [d = spec.d, b](std::size_t count) { return surd_digits(d, b, count).fractional.data; });
    case StreamKind::Xi3:
      return SequenceSource(id, Alphabet::digits(3), 1, [](std::size_t count) { return xi3_sequence(count).data; });
    case StreamKind::File:
      return fixed_source(read_file_prefix(spec), file_first_index);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown stream kind");
}

SequencePrefix imitation_target(const DigitStreamSpec& spec, std::size_t count) {
  SequencePrefix out;
  out.source_id = spec.description;
  FiniteWord head;
  switch (spec.kind) {
    case StreamKind::Rational:
      head = {0};
      out = rational_digits(spec.p, spec.q, spec.base, count);
      break;
    case StreamKind::Surd: {
      auto s = surd_digits(spec.d, spec.base, count);
      head = s.integer_part;
      out = std::move(s.fractional);
      break;
    }
    case StreamKind::Xi3:
      return xi3_sequence(count);
    case StreamKind::File: {
      auto p = read_file_prefix(spec);
      if (p.size() < count)
        throw Error(ErrorKind::InsufficientData, "'" + spec.path + "' holds " + std::to_string(p.size()) + " symbols");
      p.data.resize(count);
      return p;
    }
  }
  head.insert(head.end(), out.data.begin(), out.data.end());
  head.resize(count);
  out.data = std::move(head);
  return out;
}

std::optional<std::uint64_t> imitation_candidates(unsigned k, unsigned max_states, std::size_t outputs) {
  std::uint64_t sum = 0;
  for (std::uint64_t s = 1; s <= max_states; ++s) {
    std::uint64_t term = 1;
    for (std::uint64_t i = 0; i < s * k; ++i)
      if (__builtin_mul_overflow(term, s, &term)) return std::nullopt;
    for (std::uint64_t i = 0; i < s; ++i)
      if (__builtin_mul_overflow(term, static_cast<std::uint64_t>(outputs), &term)) return std::nullopt;
    if (__builtin_add_overflow(sum, term, &sum)) return std::nullopt;
  }
  return sum;
}

namespace {

struct Candidate {
  std::size_t agree = 0;
  unsigned states = 0;
  std::uint64_t index = 0;
  bool valid = false;

  // Larger agreement first, then fewer states, then earlier table.
  bool better_than(const Candidate& o) const {
    if (!o.valid) return valid;
    if (agree != o.agree) return agree > o.agree;
    if (states != o.states) return states < o.states;
    return index < o.index;
  }
};

// Transition table number `index` in row-major order, first entry most
// significant. False unless the table is in canonical BFS labelling with
// every state reachable.
bool decode_canonical(std::uint64_t index, unsigned s, unsigned k, std::vector<std::uint32_t>& table) {
  const std::size_t cells = static_cast<std::size_t>(s) * k;
  table.resize(cells);
  for (std::size_t j = cells; j-- > 0;) {
    table[j] = static_cast<std::uint32_t>(index % s);
    index /= s;
  }
  std::uint32_t discovered = 1;
  for (std::size_t j = 0; j < cells; ++j) {
    if (j / k >= discovered) return false;
    if (table[j] > discovered) return false;
    if (table[j] == discovered) ++discovered;
  }
  return discovered == s;
}

// Longest prefix of the target any output map can reach on this table; the
// first conflicting constraint τ(q) = a_n ends every choice of τ.
std::size_t agreement(const std::vector<std::uint32_t>& table, unsigned k, std::span<const Symbol> target,
                      std::vector<std::uint32_t>& state, std::vector<std::int64_t>& tau) {
  state.resize(target.size());
  std::fill(tau.begin(), tau.end(), -1);
  for (std::size_t n = 0; n < target.size(); ++n) {
    state[n] = n == 0 ? 0 : table[state[n / k] * k + n % k];
    auto& t = tau[state[n]];
    if (t < 0)
      t = target[n];
    else if (t != static_cast<std::int64_t>(target[n]))
      return n;
  }
  return target.size();
}

std::uint64_t table_count(unsigned s, unsigned k) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < s * k; ++i) total *= s;
  return total;
}

void check_imitation(const SequencePrefix& target, unsigned k, unsigned max_states, std::uint64_t cap) {
  check_base(k);
  if (max_states == 0) throw Error(ErrorKind::InvalidArgument, "need at least one state");
  if (target.alphabet.size() == 0) throw Error(ErrorKind::InvalidArgument, "target has no alphabet");
  const auto need = imitation_candidates(k, max_states, target.alphabet.size());
  if (!need || *need > cap)
    throw Error(ErrorKind::CapExceeded, "enumeration needs " + (need ? std::to_string(*need) : std::string("> 2^64")) +
                                            " candidate machines, cap is " + std::to_string(cap));
}

ImitationResult finish(const SequencePrefix& target, unsigned k, const Candidate& best, std::uint64_t structures) {
  std::vector<std::uint32_t> table, state;
  decode_canonical(best.index, best.states, k, table);
  std::vector<std::int64_t> tau(best.states);
  agreement(table, k, target.view(), state, tau);

  ImitationResult r;
  r.index = best.agree;
  r.censored = best.agree == target.size();
  r.structures = structures;
  r.best.k = k;
  for (unsigned q = 0; q < best.states; ++q) r.best.states.push_back("q" + std::to_string(q));
  r.best.initial = 0;
  r.best.delta.assign(table.begin(), table.end());
  r.best.output_alphabet = target.alphabet;
  // unconstrained states output the first symbol
  for (auto t : tau) r.best.tau.push_back(t < 0 ? 0 : static_cast<Symbol>(t));
  return r;
}

}  // namespace

ImitationResult imitation_index(const SequencePrefix& target, unsigned k, unsigned max_states, std::uint64_t cap) {
  check_imitation(target, k, max_states, cap);
  Candidate best;
  std::uint64_t structures = 0;
  for (unsigned s = 1; s <= max_states; ++s) {
    const auto total = static_cast<std::int64_t>(table_count(s, k));
#pragma omp parallel
    {
      Candidate local;
      std::uint64_t local_count = 0;
      std::vector<std::uint32_t> table, state;
      std::vector<std::int64_t> tau(s);
#pragma omp for schedule(dynamic, 256) nowait
      for (std::int64_t i = 0; i < total; ++i) {
        if (!decode_canonical(static_cast<std::uint64_t>(i), s, k, table)) continue;
        ++local_count;
        Candidate c{agreement(table, k, target.view(), state, tau), s, static_cast<std::uint64_t>(i), true};
        if (c.better_than(local)) local = c;
      }
#pragma omp critical
      {
        structures += local_count;
        if (local.better_than(best)) best = local;
      }
    }
  }
  return finish(target, k, best, structures);
}

namespace serial {

ImitationResult imitation_index(const SequencePrefix& target, unsigned k, unsigned max_states, std::uint64_t cap) {
  check_imitation(target, k, max_states, cap);
  Candidate best;
  std::uint64_t structures = 0;
  std::vector<std::uint32_t> table, state;
  for (unsigned s = 1; s <= max_states; ++s) {
    std::vector<std::int64_t> tau(s);
    const auto total = table_count(s, k);
    for (std::uint64_t i = 0; i < total; ++i) {
      if (!decode_canonical(i, s, k, table)) continue;
      ++structures;
      Candidate c{agreement(table, k, target.view(), state, tau), s, i, true};
      if (c.better_than(best)) best = c;
    }
  }
  return finish(target, k, best, structures);
}

}  // namespace serial

}  // namespace autoseq
