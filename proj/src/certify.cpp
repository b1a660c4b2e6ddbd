#include "autoseq/certify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "autoseq/kernels.hpp"

namespace autoseq {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::NumericError, "index overflows 64 bits");
  return r;
}

std::uint64_t power(unsigned k, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, k);
  return r;
}

Rational ratio_of(std::uint64_t num, std::uint64_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

RepetitionWitness pair_witness(std::uint64_t n, std::uint64_t n_prime, std::uint64_t scale, std::uint64_t first) {
  return {scale * n - first, scale * (n_prime - n), scale * (n_prime - n) + scale};
}

Rational pair_bound(std::uint64_t n_prime) { return Rational(1) + ratio_of(1, n_prime - 1); }

// Prefix length needed to check pair identities up to `depth`.
std::uint64_t pair_span(std::uint64_t n_prime, unsigned k, std::uint64_t depth, std::uint64_t first) {
  constexpr std::uint64_t kMaxSpan = std::uint64_t{1} << 32;
  const auto need = checked_mul(power(k, depth), n_prime + 1) - first;
  if (need > kMaxSpan)
    throw Error(ErrorKind::BudgetExceeded, "pair check at this depth needs " + std::to_string(need) + " symbols");
  return need;
}

struct MorphicFamily {
  std::vector<RepetitionWitness> witnesses;
  Rational dio_lower_bound;
  Rational ratio_growth_bound;
};

std::vector<std::int64_t> letter_counts(const FiniteWord& w, std::size_t dim) {
  std::vector<std::int64_t> c(dim, 0);
  for (Symbol s : w) ++c[s];
  return c;
}

std::uint64_t total(const std::vector<std::int64_t>& c) {
  std::int64_t t = 0;
  for (auto x : c)
    if (__builtin_add_overflow(t, x, &t)) throw Error(ErrorKind::NumericError, "length overflows 64 bits");
  return static_cast<std::uint64_t>(t);
}

MorphicFamily morphic_family(const MorphicSpec& spec, const MorphicSeed& seed, std::uint64_t depth) {
  const auto m = incidence(spec);
  FiniteWord bv{seed.b};
  bv.insert(bv.end(), seed.v.begin(), seed.v.end());
  auto cu = letter_counts(seed.u, m.dim);
  auto cbv = letter_counts(bv, m.dim);
  auto cb = letter_counts({seed.b}, m.dim);

  MorphicFamily f;
  for (std::uint64_t n = 0; n <= depth; ++n) {
    const auto u = total(cu), v = total(cbv), b = total(cb);
    f.witnesses.push_back({u, v, v + b});
    if (n < depth) {
      cu = m.apply(cu);
      cbv = m.apply(cbv);
      cb = m.apply(cb);
    }
  }
  f.dio_lower_bound = f.witnesses.front().ratio();
  for (const auto& w : f.witnesses) f.dio_lower_bound = std::min(f.dio_lower_bound, w.ratio());
  if (f.witnesses.size() < 2) {
    f.ratio_growth_bound = Rational(static_cast<std::int64_t>(spec.sigma.max_image_length()));
  } else {
    f.ratio_growth_bound = Rational(0);
    for (std::size_t i = 1; i < f.witnesses.size(); ++i) {
      const auto& a = f.witnesses[i - 1];
      const auto& b = f.witnesses[i];
      f.ratio_growth_bound = std::max(f.ratio_growth_bound, ratio_of(b.u + b.v, a.u + a.v));
    }
  }
  return f;
}

std::uint64_t reach_of(const std::vector<RepetitionWitness>& ws) {
  std::uint64_t r = 0;
  for (const auto& w : ws) r = std::max(r, w.u + w.ext);
  return r;
}

std::string approximation_line(std::size_t index, const RepetitionWitness& w, unsigned base) {
  const auto b = std::to_string(base);
  return "witness " + std::to_string(index) + ": u=" + std::to_string(w.u) + " v=" + std::to_string(w.v) +
         " ext=" + std::to_string(w.ext) + " ratio=" + to_string(w.ratio()) + "; p/q with q = " + b + "^" +
         std::to_string(w.u) + "*(" + b + "^" + std::to_string(w.v) + "-1) satisfies |x - p/q| < q^-(" +
         to_string(w.ratio()) + ")";
}

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::DfaoPigeonhole: return "dfao-pigeonhole";
    case CertificateKind::MorphicWitness: return "morphic-witness";
    case CertificateKind::PdaPair: return "pda-pair";
    case CertificateKind::SequencePair: return "sequence-pair";
  }
  return "unknown";
}

PairOutcome certificate_from_pair(const SequenceSource& source, std::uint64_t n, std::uint64_t n_prime, unsigned k,
                                  std::uint64_t depth, CertificateKind kind) {
  if (n == 0 || n >= n_prime) throw Error(ErrorKind::PreconditionViolation, "pair needs 0 < n < n'");
  if (k < 2) throw Error(ErrorKind::InvalidBase, "k = " + std::to_string(k) + " < 2");
  const auto first = source.first_index();
  if (n < first)
    throw Error(ErrorKind::PreconditionViolation, "n = " + std::to_string(n) + " precedes the first index");
  const auto prefix = source.prefix(static_cast<std::size_t>(pair_span(n_prime, k, depth, first)));
  const auto a = prefix.view();

  Certificate cert;
  cert.kind = kind;
  cert.machine = source.binding();
  cert.pair = CertificatePair{n, n_prime, k};
  cert.first_index = first;
  std::uint64_t scale = 1;
  for (std::uint64_t level = 0; level <= depth; ++level, scale *= k) {
    const auto lhs = a.subspan(source.position_of(scale * n) - 1, scale);
    const auto rhs = a.subspan(source.position_of(scale * n_prime) - 1, scale);
    const auto i = parallel::first_mismatch(lhs, rhs);
    if (i < scale) {
      return PairRefutation{level, i,
                            "a(" + std::to_string(scale * n + i) + ") != a(" + std::to_string(scale * n_prime + i) +
                                ") at level " + std::to_string(level) + ", offset " + std::to_string(i)};
    }
    const auto w = pair_witness(n, n_prime, scale, first);
    if (!verify_repetition(a, w))
      throw Error(ErrorKind::VerificationFailure, "pair witness failed its own check at level " + std::to_string(level));
    cert.witnesses.push_back(w);
  }
  cert.verified_depth = depth;
  cert.dio_lower_bound = pair_bound(n_prime);
  cert.ratio_growth_bound = Rational(k);
  cert.witness_ratio_limit = ratio_of(n_prime + 1, n_prime);
  return cert;
}

namespace {

Certificate expect_certificate(PairOutcome outcome) {
  if (auto* r = std::get_if<PairRefutation>(&outcome))
    throw Error(ErrorKind::VerificationFailure, "equivalent pair refuted: " + r->message);
  return std::get<Certificate>(std::move(outcome));
}

}  // namespace

Certificate certify_dfao(const Dfao& m, std::uint64_t depth) {
  validate_dfao(m);
  std::map<std::size_t, std::uint64_t> seen;
  for (std::uint64_t n = 1;; ++n) {
    const auto q = m.run_word(encode_base_k(n, m.k));
    const auto [it, fresh] = seen.emplace(q, n);
    if (!fresh)
      return expect_certificate(
          certificate_from_pair(dfao_source(m), it->second, n, m.k, depth, CertificateKind::DfaoPigeonhole));
  }
}

Certificate certify_morphic(const MorphicSpec& spec, std::uint64_t depth) {
  const auto seed = morphic_witness(spec);
  auto family = morphic_family(spec, seed, depth);
  const auto source = internal_source(spec);
  const auto prefix = source.prefix(static_cast<std::size_t>(reach_of(family.witnesses)));
  for (std::size_t i = 0; i < family.witnesses.size(); ++i)
    if (!verify_repetition(prefix.view(), family.witnesses[i]))
      throw Error(ErrorKind::VerificationFailure, "morphic witness " + std::to_string(i) + " does not hold");

  Certificate cert;
  cert.kind = CertificateKind::MorphicWitness;
  cert.machine = source.binding();
  const auto& a = spec.internal();
  cert.seed = CertificateSeed{a.render(seed.u), a.name(seed.b), a.render(seed.v), seed.p1, seed.p2};
  cert.first_index = 0;
  cert.dio_lower_bound = family.dio_lower_bound;
  cert.ratio_growth_bound = family.ratio_growth_bound;
  cert.verified_depth = depth;
  cert.witnesses = std::move(family.witnesses);
  return cert;
}

std::optional<Certificate> certify_pda(const Dpao& m, const PairBudget& budget, std::uint64_t depth) {
  const auto pair = find_equivalent_pair(m, budget);
  if (!pair) return std::nullopt;
  auto cert = expect_certificate(
      certificate_from_pair(pda_source(m), pair->n, pair->n_prime, m.k, depth, CertificateKind::PdaPair));
  cert.method = to_string(pair->method);
  return cert;
}

VerificationReport verify_certificate(const SequenceSource& source, const Certificate& cert,
                                      const VerifyOptions& options) {
  VerificationReport report;
  auto fail = [&](const std::string& why) {
    report.valid = false;
    report.failure = why;
    report.lines.push_back("INVALID: " + why);
    return report;
  };
  if (cert.machine != source.binding())
    return fail("certificate is bound to '" + cert.machine + "', source is '" + source.binding() + "'");
  if (cert.first_index != source.first_index()) return fail("first index does not match the source");
  if (cert.witnesses.empty()) return fail("no witnesses");
  if (cert.dio_lower_bound <= Rational(1)) return fail("dio lower bound is not > 1");

  const bool is_pair = cert.kind != CertificateKind::MorphicWitness;
  try {
    if (is_pair) {
      if (!cert.pair) return fail("pair certificate without a pair");
      const auto& p = *cert.pair;
      if (p.n == 0 || p.n >= p.n_prime) return fail("pair needs 0 < n < n'");
      if (cert.dio_lower_bound != pair_bound(p.n_prime)) return fail("dio lower bound is not 1 + 1/(n'-1)");
      if (cert.ratio_growth_bound != Rational(p.k)) return fail("ratio growth bound is not k");
      if (cert.witnesses.size() != cert.verified_depth + 1) return fail("one witness per level expected");
      std::uint64_t scale = 1;
      for (std::size_t level = 0; level < cert.witnesses.size(); ++level, scale = checked_mul(scale, p.k))
        if (cert.witnesses[level] != pair_witness(p.n, p.n_prime, scale, cert.first_index))
          return fail("witness " + std::to_string(level) + " does not match the pair");
      const auto outcome =
          certificate_from_pair(source, p.n, p.n_prime, p.k, cert.verified_depth + options.extra_depth, cert.kind);
      if (const auto* r = std::get_if<PairRefutation>(&outcome)) return fail(r->message);
    } else {
      if (!cert.seed) return fail("morphic certificate without a seed");
      MorphicFamily family;
      family.witnesses = cert.witnesses;
      Rational lowest = cert.witnesses.front().ratio();
      for (const auto& w : cert.witnesses) lowest = std::min(lowest, w.ratio());
      if (cert.dio_lower_bound != lowest) return fail("dio lower bound is not the smallest witness ratio");
      if (options.morphic) {
        const auto fresh = certify_morphic(*options.morphic, cert.verified_depth);
        if (fresh.seed != cert.seed) return fail("seed does not match the morphism");
        if (fresh.witnesses != cert.witnesses) return fail("witnesses do not match the morphism");
        if (fresh.ratio_growth_bound != cert.ratio_growth_bound) return fail("ratio growth bound does not match");
      }
    }
    const auto prefix = source.prefix(static_cast<std::size_t>(reach_of(cert.witnesses)));
    for (std::size_t i = 0; i < cert.witnesses.size(); ++i)
      if (!verify_repetition(prefix.view(), cert.witnesses[i]))
        return fail("witness " + std::to_string(i) + " fails against the source");
  } catch (const Error& e) {
    return fail(e.what());
  }

  const unsigned base = options.base ? options.base : static_cast<unsigned>(source.alphabet().size());
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i)
    report.lines.push_back(approximation_line(i, cert.witnesses[i], base));
  report.valid = true;
  return report;
}

std::string certificate_to_json(const Certificate& cert) {
  Json j;
  j["kind"] = to_string(cert.kind);
  j["machine"] = cert.machine;
  if (cert.pair) {
    j["n"] = cert.pair->n;
    j["nPrime"] = cert.pair->n_prime;
    j["k"] = cert.pair->k;
  }
  if (cert.method) j["method"] = *cert.method;
  if (cert.seed) {
    j["seed"] = Json{{"U", cert.seed->u}, {"b", cert.seed->b}, {"V", cert.seed->v},
                     {"p1", cert.seed->p1}, {"p2", cert.seed->p2}};
  }
  j["firstIndex"] = cert.first_index;
  j["dioLowerBound"] = to_string(cert.dio_lower_bound);
  j["ratioGrowthBound"] = to_string(cert.ratio_growth_bound);
  if (cert.witness_ratio_limit) j["witnessRatioLimit"] = to_string(*cert.witness_ratio_limit);
  j["verifiedDepth"] = cert.verified_depth;
  Json ws = Json::array();
  for (const auto& w : cert.witnesses) ws.push_back(Json{{"u", w.u}, {"v", w.v}, {"ext", w.ext}});
  j["witnesses"] = std::move(ws);
  return j.dump(2) + "\n";
}

namespace {

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw Error(ErrorKind::InvalidCertificate, "unknown field '" + key + "' in " + where);
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::InvalidCertificate, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorKind::InvalidCertificate, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Certificate certificate_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidCertificate, "certificate must be a JSON object");
  only_keys(j,
            {"kind", "machine", "n", "nPrime", "k", "method", "seed", "firstIndex", "dioLowerBound",
             "ratioGrowthBound", "witnessRatioLimit", "verifiedDepth", "witnesses"},
            "certificate");
  Certificate cert;
  const auto kind = field<std::string>(j, "kind");
  bool known = false;
  for (auto k : {CertificateKind::DfaoPigeonhole, CertificateKind::MorphicWitness, CertificateKind::PdaPair,
                 CertificateKind::SequencePair})
    if (to_string(k) == kind) {
      cert.kind = k;
      known = true;
    }
  if (!known) throw Error(ErrorKind::InvalidCertificate, "unknown certificate kind '" + kind + "'");
  cert.machine = field<std::string>(j, "machine");
  if (j.contains("n") || j.contains("nPrime") || j.contains("k"))
    cert.pair = CertificatePair{field<std::uint64_t>(j, "n"), field<std::uint64_t>(j, "nPrime"),
                                field<unsigned>(j, "k")};
  if (j.contains("method")) cert.method = field<std::string>(j, "method");
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_object()) throw Error(ErrorKind::InvalidCertificate, "seed must be an object");
    only_keys(s, {"U", "b", "V", "p1", "p2"}, "seed");
    cert.seed = CertificateSeed{field<std::string>(s, "U"), field<std::string>(s, "b"), field<std::string>(s, "V"),
                                field<std::uint64_t>(s, "p1"), field<std::uint64_t>(s, "p2")};
  }
  cert.first_index = j.contains("firstIndex") ? field<std::uint64_t>(j, "firstIndex") : 0;
  try {
    cert.dio_lower_bound = parse_rational(field<std::string>(j, "dioLowerBound"));
    cert.ratio_growth_bound = parse_rational(field<std::string>(j, "ratioGrowthBound"));
    if (j.contains("witnessRatioLimit"))
      cert.witness_ratio_limit = parse_rational(field<std::string>(j, "witnessRatioLimit"));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidCertificate, e.what());
  }
  cert.verified_depth = field<std::uint64_t>(j, "verifiedDepth");
  const auto& ws = j.contains("witnesses") ? j.at("witnesses") : Json();
  if (!ws.is_array()) throw Error(ErrorKind::InvalidCertificate, "witnesses must be an array");
  for (const auto& w : ws) {
    if (!w.is_object()) throw Error(ErrorKind::InvalidCertificate, "witness must be an object");
    only_keys(w, {"u", "v", "ext"}, "witness");
    RepetitionWitness r{field<std::uint64_t>(w, "u"), field<std::uint64_t>(w, "v"), field<std::uint64_t>(w, "ext")};
    if (r.v == 0) throw Error(ErrorKind::InvalidCertificate, "witness period must be positive");
    cert.witnesses.push_back(r);
  }
  return cert;
}

}  // namespace autoseq
