#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoseq/morphic.hpp"
#include "autoseq/pda.hpp"
#include "autoseq/words.hpp"

namespace testing {

using namespace autoseq;

/// Word over single-character symbols of `a`.
inline FiniteWord word(const Alphabet& a, const std::string& s) {
  FiniteWord w;
  for (char c : s) w.push_back(a.index(std::string(1, c)));
  return w;
}

/// Word over the letters occurring in s, alphabet sorted.
inline SequencePrefix prefix_of(const std::string& s) { return parse_prefix_text(s, "test"); }

/// Purely morphic spec over single-character letters, start = first letter.
inline MorphicSpec morphism(const std::string& letters, const std::vector<std::string>& images) {
  MorphicSpec spec;
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  spec.sigma.alphabet = Alphabet(names);
  for (const auto& img : images) spec.sigma.images.push_back(word(spec.sigma.alphabet, img));
  spec.start = 0;
  spec.external = spec.sigma.alphabet;
  for (Symbol s = 0; s < names.size(); ++s) spec.coding.push_back(s);
  return spec;
}

/// |σ^n(letter)| by direct iteration, saturating at `cap`.
inline std::uint64_t iterate_length(const Morphism& sigma, Symbol letter, unsigned n, std::uint64_t cap) {
  FiniteWord w{letter};
  for (unsigned i = 0; i < n && w.size() < cap; ++i) w = sigma.apply(w);
  return std::min<std::uint64_t>(w.size(), cap);
}

// Smallest u + v with a nontrivial period-v run reaching ell; ties by v then u.
inline std::optional<RepetitionWitness> brute_best(const FiniteWord& w, std::uint64_t ell) {
  std::optional<RepetitionWitness> best;
  for (std::uint64_t v = 1; v < ell; ++v)
    for (std::uint64_t u = 0; u + v < ell; ++u) {
      bool ok = true;
      for (std::uint64_t i = u + v + 1; i <= ell && ok; ++i) ok = w[i - 1] == w[i - 1 - v];
      if (!ok) continue;
      RepetitionWitness c{u, v, ell - u};
      if (!best || c.ratio() > best->ratio() ||
          (c.ratio() == best->ratio() && (c.v < best->v || (c.v == best->v && c.u < best->u))))
        best = c;
    }
  return best;
}


// max over letters of |σ^n(b)|, through letter-count vectors in floating point
inline double max_length(const Morphism& s, unsigned n) {
  const auto dim = s.alphabet.size();
  double best = 0;
  for (Symbol b = 0; b < dim; ++b) {
    std::vector<double> count(dim, 0.0);
    count[b] = 1;
    for (unsigned i = 0; i < n; ++i) {
      std::vector<double> next(dim, 0.0);
      for (Symbol a = 0; a < dim; ++a)
        for (Symbol c : s.images[a]) next[c] += count[a];
      count = std::move(next);
    }
    double len = 0;
    for (double c : count) len += c;
    best = std::max(best, len);
  }
  return best;
}


inline MorphicSpec random_morphism(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letters(1, 4), lens(1, 3);
  const int dim = letters(rng);
  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::string alphabet = std::string("abcd").substr(0, static_cast<std::size_t>(dim));
  std::vector<std::string> images;
  for (int a = 0; a < dim; ++a) {
    std::string img;
    const int len = a == 0 ? std::max(2, lens(rng)) : lens(rng);
    if (a == 0) img += 'a';
    while (static_cast<int>(img.size()) < len) img += alphabet[static_cast<std::size_t>(pick(rng))];
    images.push_back(img);
  }
  return morphism(alphabet, images);
}


// Transition-by-transition simulator, written against the definition only.
struct Sim {
  const Dpao& m;

  const DpaoTransition* find(std::size_t q, StackTop top, std::optional<Symbol> in) const {
    for (const auto& t : m.transitions)
      if (t.state == q && t.top == top && t.input == in) return &t;
    return nullptr;
  }

  static StackTop top_of(const FiniteWord& s) { return s.empty() ? kBottom : s.back() + 1; }

  // Applies t to (q, s) as one atomic rewrite of the top; returns false if
  // the stack is then below height `floor`.
  static bool apply(const DpaoTransition& t, std::size_t& q, FiniteWord& s, std::size_t floor) {
    if (t.top != kBottom) s.pop_back();
    s.insert(s.end(), t.push.begin(), t.push.end());
    q = t.to;
    return s.size() >= floor;
  }

  // Runs `input` from (q, s); returns the state at the first drop below `floor`.
  std::optional<std::size_t> first_drop(std::size_t q, FiniteWord s, const FiniteWord& input, std::size_t floor) const {
    auto close = [&]() -> bool {
      while (const auto* e = find(q, top_of(s), std::nullopt))
        if (!apply(*e, q, s, floor)) return false;
      return true;
    };
    if (!close()) return q;
    for (Symbol d : input) {
      const auto* t = find(q, top_of(s), d);
      if (!t) throw std::logic_error("incomplete machine");
      if (!apply(*t, q, s, floor)) return q;
      if (!close()) return q;
    }
    return std::nullopt;
  }
};

inline Dpao random_dpao(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nstates(1, 3), ngamma(1, 2), coin(0, 3), plen(0, 2);
  Dpao m;
  m.k = 2;
  const auto s = static_cast<std::size_t>(nstates(rng));
  const auto g = static_cast<std::size_t>(ngamma(rng));
  for (std::size_t q = 0; q < s; ++q) m.states.push_back("r" + std::to_string(q));
  m.stack_alphabet = g == 1 ? Alphabet({"X"}) : Alphabet({"X", "Y"});
  m.output_alphabet = Alphabet::digits(2);
  std::uniform_int_distribution<std::size_t> pick_state(0, s - 1), pick_sym(0, g - 1);
  auto push = [&] {
    FiniteWord w(static_cast<std::size_t>(plen(rng)));
    for (auto& x : w) x = static_cast<Symbol>(pick_sym(rng));
    return w;
  };
  for (std::size_t q = 0; q < s; ++q)
    for (StackTop top = 0; top <= g; ++top) {
      if (top != kBottom && coin(rng) == 0) {
        m.transitions.push_back({q, top, std::nullopt, pick_state(rng), {}});
        continue;
      }
      for (Symbol d = 0; d < 2; ++d) m.transitions.push_back({q, top, d, pick_state(rng), push()});
    }
  for (std::size_t i = 0; i < s * (g + 1); ++i) m.tau.push_back(static_cast<Symbol>(coin(rng) & 1));
  return m;
}

inline std::vector<FiniteWord> all_words(std::size_t max_len) {
  std::vector<FiniteWord> out{{}};
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      FiniteWord w(len);
      for (std::size_t i = 0; i < len; ++i) w[i] = (bits >> i) & 1u;
      out.push_back(w);
    }
  return out;
}

}  // namespace testing
