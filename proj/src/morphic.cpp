#include "autoseq/morphic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace autoseq {

FiniteWord Morphism::apply(std::span<const Symbol> w) const {
  FiniteWord out;
  for (Symbol s : w) out.insert(out.end(), images[s].begin(), images[s].end());
  return out;
}

std::size_t Morphism::max_image_length() const {
  std::size_t m = 0;
  for (const auto& img : images) m = std::max(m, img.size());
  return m;
}

std::size_t Morphism::uniform_length() const {
  if (images.empty()) return 0;
  const std::size_t k = images.front().size();
  for (const auto& img : images)
    if (img.size() != k) return 0;
  return k;
}

std::vector<std::int64_t> IncidenceMatrix::apply(const std::vector<std::int64_t>& x) const {
  std::vector<std::int64_t> y(dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::int64_t term = 0;
      if (__builtin_mul_overflow(at(i, j), x[j], &term) || __builtin_add_overflow(y[i], term, &y[i]))
        throw Error(ErrorKind::NumericError, "letter counts overflow 64 bits");
    }
  return y;
}

namespace {

void check_morphism(const Morphism& sigma) {
  if (sigma.alphabet.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty internal alphabet");
  if (sigma.images.size() != sigma.alphabet.size())
    throw Error(ErrorKind::InvalidArgument, "every internal letter needs an image");
  for (std::size_t a = 0; a < sigma.images.size(); ++a) {
    if (sigma.images[a].empty())
      throw Error(ErrorKind::UnsupportedErasing, "image of '" + sigma.alphabet.name(static_cast<Symbol>(a)) +
                                                     "' is empty; erasing morphisms are not supported");
    for (Symbol s : sigma.images[a])
      if (s >= sigma.alphabet.size()) throw Error(ErrorKind::UnknownSymbol, "image letter outside the alphabet");
  }
}

std::vector<char> reachable_letters(const Morphism& sigma, Symbol from) {
  std::vector<char> seen(sigma.alphabet.size(), 0);
  std::deque<Symbol> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    const Symbol a = queue.front();
    queue.pop_front();
    for (Symbol s : sigma.images[a])
      if (!seen[s]) {
        seen[s] = 1;
        queue.push_back(s);
      }
  }
  return seen;
}

// Strongly connected components of the letter graph j -> i for each letter
// i occurring in σ(a_j). Components come out in reverse topological order
// (sinks first), as Tarjan's algorithm emits them.
struct Components {
  std::vector<std::size_t> of;                 // letter -> component
  std::vector<std::vector<Symbol>> members;    // component -> letters
  std::vector<std::vector<std::size_t>> succ;  // condensation edges
};

Components strongly_connected(const IncidenceMatrix& m) {
  const std::size_t n = m.dim;
  Components c;
  c.of.assign(n, SIZE_MAX);
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (std::size_t w = 0; w < n; ++w) {
      if (m.at(w, v) == 0) continue;  // edge v -> w
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<Symbol> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        c.of[w] = c.members.size();
        comp.push_back(static_cast<Symbol>(w));
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      c.members.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);

  c.succ.resize(c.members.size());
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (m.at(w, v) > 0 && c.of[v] != c.of[w]) c.succ[c.of[v]].push_back(c.of[w]);
  for (auto& s : c.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return c;
}

// An irreducible nonnegative integer matrix has Perron root exactly 1 when it
// is a single cycle, i.e. every column sum inside the component equals 1.
bool component_exponential(const IncidenceMatrix& m, const std::vector<Symbol>& comp) {
  for (Symbol j : comp) {
    std::int64_t inside = 0;
    for (Symbol i : comp) inside += m.at(i, j);
    if (inside >= 2) return true;
  }
  return false;
}

bool component_trivial(const IncidenceMatrix& m, const std::vector<Symbol>& comp) {
  return comp.size() == 1 && m.at(comp[0], comp[0]) == 0;
}

// Perron root of the component submatrix by power iteration on I + A (which
// is primitive, so the iteration converges even for periodic components).
// Stops once the Collatz–Wielandt bounds min/max (Bx)_i / x_i are within tol.
double component_radius(const IncidenceMatrix& m, const std::vector<Symbol>& comp, double tol) {
  if (component_trivial(m, comp)) return 0.0;
  const std::size_t d = comp.size();
  std::vector<double> x(d, 1.0), y(d);
  constexpr int kMaxIterations = 200000;
  for (int it = 0; it < kMaxIterations; ++it) {
    double lo = INFINITY, hi = 0.0, norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      double s = x[r];
      for (std::size_t c = 0; c < d; ++c) s += static_cast<double>(m.at(comp[r], comp[c])) * x[c];
      y[r] = s;
      lo = std::min(lo, s / x[r]);
      hi = std::max(hi, s / x[r]);
      norm = std::max(norm, s);
    }
    if (hi - lo <= tol) return 0.5 * (lo + hi) - 1.0;
    for (std::size_t r = 0; r < d; ++r) x[r] = y[r] / norm;
  }
  throw Error(ErrorKind::NumericError, "power iteration did not converge");
}

bool same_theta(double a, double b) { return std::abs(a - b) <= 1e-7 * std::max(1.0, std::max(a, b)); }

}  // namespace

ValidationReport validate_morphic(const MorphicSpec& spec) {
  check_morphism(spec.sigma);
  const auto& sigma = spec.sigma;
  if (spec.start >= sigma.alphabet.size()) throw Error(ErrorKind::UnknownSymbol, "start letter outside the alphabet");
  const auto& img = sigma.images[spec.start];
  if (img.front() != spec.start || img.size() < 2)
    throw Error(ErrorKind::NotProlongable, "σ(" + sigma.alphabet.name(spec.start) + ") must start with " +
                                               sigma.alphabet.name(spec.start) + " and have length >= 2");
  if (spec.coding.size() != sigma.alphabet.size())
    throw Error(ErrorKind::InvalidArgument, "coding must be defined on every internal letter");
  for (Symbol b : spec.coding)
    if (b >= spec.external.size()) throw Error(ErrorKind::UnknownSymbol, "coding value outside the external alphabet");

  ValidationReport report;
  const auto seen = reachable_letters(sigma, spec.start);
  for (std::size_t a = 0; a < seen.size(); ++a)
    if (!seen[a])
      report.warnings.push_back("letter '" + sigma.alphabet.name(static_cast<Symbol>(a)) +
                                "' does not occur in the fixed point");
  return report;
}

FiniteWord internal_fixed_point(const MorphicSpec& spec, std::size_t count) {
  validate_morphic(spec);
  FiniteWord u = spec.sigma.images[spec.start];
  u.reserve(count + spec.sigma.max_image_length());
  for (std::size_t i = 1; u.size() < count; ++i) {
    const auto& img = spec.sigma.images[u[i]];
    u.insert(u.end(), img.begin(), img.end());
  }
  u.resize(count);
  return u;
}

FixedPointPrefix fixed_point_prefix(const MorphicSpec& spec, std::size_t count, const std::string& source_id) {
  FixedPointPrefix out;
  out.internal.source_id = source_id + ":internal";
  out.internal.alphabet = spec.internal();
  out.internal.data = internal_fixed_point(spec, count);
  out.coded.source_id = source_id;
  out.coded.alphabet = spec.external;
  out.coded.data.reserve(count);
  for (Symbol s : out.internal.data) out.coded.data.push_back(spec.coding[s]);
  return out;
}

SequenceSource morphic_source(const MorphicSpec& spec, const std::string& source_id) {
  validate_morphic(spec);
  return SequenceSource(source_id, spec.external, 0,
                        [spec](std::size_t count) { return fixed_point_prefix(spec, count).coded.data; });
}

SequenceSource internal_source(const MorphicSpec& spec, const std::string& source_id) {
  validate_morphic(spec);
  return SequenceSource(source_id, spec.internal(), 0,
                        [spec](std::size_t count) { return internal_fixed_point(spec, count); });
}

IncidenceMatrix incidence(const Morphism& sigma) {
  check_morphism(sigma);
  IncidenceMatrix m;
  m.dim = sigma.alphabet.size();
  m.entries.assign(m.dim * m.dim, 0);
  for (std::size_t j = 0; j < m.dim; ++j)
    for (Symbol i : sigma.images[j]) ++m.entries[i * m.dim + j];
  return m;
}

bool exponential_growth(const Morphism& sigma) {
  const auto m = incidence(sigma);
  const auto comps = strongly_connected(m);
  for (const auto& comp : comps.members)
    if (component_exponential(m, comp)) return true;
  return false;
}

double spectral_radius_estimate(const Morphism& sigma, double tol) {
  const auto m = incidence(sigma);
  const auto comps = strongly_connected(m);
  double theta = 0.0;
  for (const auto& comp : comps.members) theta = std::max(theta, component_radius(m, comp, tol));
  return theta;
}

GrowthReport growth_report(const MorphicSpec& spec) {
  validate_morphic(spec);
  const auto m = incidence(spec.sigma);
  const auto comps = strongly_connected(m);
  const std::size_t nc = comps.members.size();

  std::vector<double> radius(nc);
  std::vector<char> expo(nc), trivial(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    radius[c] = component_radius(m, comps.members[c], 1e-12);
    expo[c] = component_exponential(m, comps.members[c]);
    trivial[c] = component_trivial(m, comps.members[c]);
  }

  // Reachability closure over the condensation. Components are in reverse
  // topological order, so successors always have smaller indices.
  std::vector<std::vector<char>> reach(nc, std::vector<char>(nc, 0));
  for (std::size_t c = 0; c < nc; ++c) {
    reach[c][c] = 1;
    for (std::size_t d : comps.succ[c])
      for (std::size_t e = 0; e < nc; ++e) reach[c][e] |= reach[d][e];
  }

  // Growth order of a letter in component c: θ is the largest Perron root
  // reachable from c, and the polynomial degree is one less than the largest
  // number of θ-components met along a single path of the condensation.
  auto chain_count = [&](std::size_t start, double theta) {
    std::vector<int> best(nc, 0);
    for (std::size_t c = 0; c < nc; ++c) {  // sinks first
      int tail = 0;
      for (std::size_t d : comps.succ[c]) tail = std::max(tail, best[d]);
      const bool counts = !trivial[c] && same_theta(radius[c], theta);
      best[c] = tail + (counts ? 1 : 0);
    }
    return best[start];
  };

  GrowthReport report;
  report.global_exponential = std::any_of(expo.begin(), expo.end(), [](char e) { return e != 0; });
  report.per_letter.resize(m.dim);
  std::vector<double> comp_theta(nc, 0.0);
  std::vector<unsigned> comp_degree(nc, 0);
  std::vector<char> comp_expo(nc, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t e = 0; e < nc; ++e)
      if (reach[c][e]) {
        comp_theta[c] = std::max(comp_theta[c], radius[e]);
        comp_expo[c] |= expo[e];
      }
    const int chain = chain_count(c, comp_theta[c]);
    comp_degree[c] = chain > 0 ? static_cast<unsigned>(chain - 1) : 0;
  }
  for (std::size_t a = 0; a < m.dim; ++a) {
    const auto c = comps.of[a];
    report.per_letter[a] = LetterGrowth{comp_theta[c], comp_degree[c], comp_expo[c] != 0};
  }

  const auto occurs = reachable_letters(spec.sigma, spec.start);
  const LetterGrowth* top = nullptr;
  for (std::size_t a = 0; a < m.dim; ++a) {
    if (!occurs[a]) continue;
    const auto& g = report.per_letter[a];
    if (!top || (!same_theta(g.theta, top->theta) && g.theta > top->theta) ||
        (same_theta(g.theta, top->theta) && g.poly_degree > top->poly_degree))
      top = &g;
  }
  for (std::size_t a = 0; a < m.dim; ++a) {
    const auto& g = report.per_letter[a];
    if (occurs[a] && same_theta(g.theta, top->theta) && g.poly_degree == top->poly_degree)
      report.maximal_growth.push_back(static_cast<Symbol>(a));
  }
  return report;
}

MorphicSeed morphic_witness(const MorphicSpec& spec, std::size_t scan_len) {
  if (!exponential_growth(spec))
    throw Error(ErrorKind::PreconditionViolation, "morphism does not have exponential growth");
  const auto report = growth_report(spec);
  const auto u = internal_fixed_point(spec, scan_len);
  for (Symbol b : report.maximal_growth) {
    std::size_t first = SIZE_MAX;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != b) continue;
      if (first == SIZE_MAX) {
        first = i;
        continue;
      }
      MorphicSeed seed;
      seed.b = b;
      seed.p1 = first + 1;
      seed.p2 = i + 1;
      seed.u.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(first));
      seed.v.assign(u.begin() + static_cast<std::ptrdiff_t>(first + 1), u.begin() + static_cast<std::ptrdiff_t>(i));
      return seed;
    }
  }
  throw Error(ErrorKind::BudgetExceeded,
              "no maximal-growth letter occurs twice in the first " + std::to_string(scan_len) + " letters");
}

Dfao to_dfao(const MorphicSpec& spec) {
  validate_morphic(spec);
  const std::size_t k = spec.sigma.uniform_length();
  if (k < 2) throw Error(ErrorKind::UnsupportedForm, "morphism is not k-uniform with k >= 2");
  Dfao m;
  m.k = static_cast<unsigned>(k);
  m.states = spec.internal().symbols();
  m.initial = spec.start;
  m.delta.reserve(m.states.size() * k);
  for (const auto& img : spec.sigma.images)
    for (Symbol s : img) m.delta.push_back(s);
  m.output_alphabet = spec.external;
  m.tau = spec.coding;
  return m;
}

MorphicSpec from_dfao(const Dfao& m) {
  validate_dfao(m);
  if (m.next(m.initial, 0) != m.initial)
    throw Error(ErrorKind::UnsupportedForm, "conversion needs δ(q0, 0) = q0");
  MorphicSpec spec;
  spec.sigma.alphabet = Alphabet(m.states);
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    FiniteWord img;
    for (unsigned d = 0; d < m.k; ++d) img.push_back(static_cast<Symbol>(m.next(q, d)));
    spec.sigma.images.push_back(std::move(img));
  }
  spec.start = static_cast<Symbol>(m.initial);
  spec.external = m.output_alphabet;
  spec.coding = m.tau;
  return spec;
}

}  // namespace autoseq
