#include "autoseq/pda.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "autoseq/kernels.hpp"

namespace autoseq {

std::size_t Dpao::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return i;
  throw Error(ErrorKind::UnknownState, "state '" + name + "' not declared");
}

std::string to_string(PairMethod method) { return method == PairMethod::Exact ? "exact" : "protected"; }

namespace {

constexpr std::int64_t kNone = -1;

// Transition lookup by (state, top, input) built once per operation.
class Table {
 public:
  explicit Table(const Dpao& m) : m_(m), cols_(m.columns()) {
    eps_.assign(m.states.size() * cols_, kNone);
    digit_.assign(m.states.size() * cols_ * m.k, kNone);
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      const auto& t = m.transitions[i];
      if (t.input)
        digit_[(t.state * cols_ + t.top) * m.k + *t.input] = static_cast<std::int64_t>(i);
      else
        eps_[t.state * cols_ + t.top] = static_cast<std::int64_t>(i);
    }
  }

  const Dpao& machine() const noexcept { return m_; }

  std::int64_t eps(std::size_t q, StackTop top) const { return eps_[q * cols_ + top]; }
  std::int64_t digit(std::size_t q, StackTop top, Symbol d) const { return digit_[(q * cols_ + top) * m_.k + d]; }

  static void apply(const DpaoTransition& t, StackConfig& c) {
    if (t.top != kBottom) c.stack.pop_back();
    c.stack.insert(c.stack.end(), t.push.begin(), t.push.end());
    c.state = t.to;
  }

  void close(StackConfig& c) const {
    for (;;) {
      const auto top = c.top();
      if (top == kBottom) return;
      const auto i = eps(c.state, top);
      if (i == kNone) return;
      apply(m_.transitions[static_cast<std::size_t>(i)], c);
    }
  }

  void step(StackConfig& c, Symbol d) const {
    if (d >= m_.k) throw Error(ErrorKind::InvalidDigit, "digit " + std::to_string(d) + " outside base");
    const auto i = digit(c.state, c.top(), d);
    if (i == kNone)
      throw Error(ErrorKind::MissingTransition, "no transition from '" + m_.states[c.state] + "' on digit " +
                                                    std::to_string(d));
    apply(m_.transitions[static_cast<std::size_t>(i)], c);
    close(c);
  }

  StackConfig initial() const {
    StackConfig c{m_.initial, {}};
    close(c);
    return c;
  }

  StackConfig config_of(std::uint64_t n) const {
    auto c = initial();
    for (Symbol d : encode_base_k(n, m_.k)) step(c, d);
    return c;
  }

  Symbol output(const StackConfig& c) const { return m_.output(c.state, c.top()); }

 private:
  const Dpao& m_;
  std::size_t cols_;
  std::vector<std::int64_t> eps_;
  std::vector<std::int64_t> digit_;
};

void check_structure(const Dpao& m) {
  if (m.k < 2) throw Error(ErrorKind::InvalidBase, "k = " + std::to_string(m.k) + " < 2");
  if (m.states.empty()) throw Error(ErrorKind::InvalidArgument, "machine has no states");
  if (m.initial >= m.states.size()) throw Error(ErrorKind::UnknownState, "initial state out of range");
  const std::size_t gamma = m.stack_alphabet.size();
  for (const auto& t : m.transitions) {
    if (t.state >= m.states.size() || t.to >= m.states.size())
      throw Error(ErrorKind::UnknownState, "transition uses an undeclared state");
    if (t.top > gamma) throw Error(ErrorKind::UnknownSymbol, "transition top outside the stack alphabet");
    if (t.input && *t.input >= m.k) throw Error(ErrorKind::InvalidDigit, "transition input outside base");
    for (Symbol s : t.push)
      if (s >= gamma) throw Error(ErrorKind::UnknownSymbol, "push word outside the stack alphabet");
    if (!t.input && t.top == kBottom)
      throw Error(ErrorKind::IncreasingEpsilon, "ε-move on # in state '" + m.states[t.state] +
                                                    "' cannot decrease the stack");
    if (!t.input && !t.push.empty())
      throw Error(ErrorKind::IncreasingEpsilon, "ε-move from '" + m.states[t.state] + "' must push nothing");
  }
  if (m.tau.size() != m.states.size() * m.columns())
    throw Error(ErrorKind::InvalidArgument, "output table must cover every (state, top) pair");
  for (Symbol b : m.tau)
    if (b >= m.output_alphabet.size()) throw Error(ErrorKind::UnknownSymbol, "output outside the output alphabet");

  std::set<std::tuple<std::size_t, StackTop, std::int64_t>> seen;
  std::set<std::pair<std::size_t, StackTop>> with_eps, with_digit;
  for (const auto& t : m.transitions) {
    const std::int64_t in = t.input ? static_cast<std::int64_t>(*t.input) : kNone;
    if (!seen.insert({t.state, t.top, in}).second)
      throw Error(ErrorKind::DeterminismConflict, "two transitions from '" + m.states[t.state] + "' on the same input");
    (t.input ? with_digit : with_eps).insert({t.state, t.top});
  }
  for (const auto& key : with_eps)
    if (with_digit.count(key))
      throw Error(ErrorKind::DeterminismConflict,
                  "state '" + m.states[key.first] + "' has both an ε-move and a digit move on the same top");
}

std::string top_name(const Dpao& m, StackTop top) {
  return top == kBottom ? "#" : m.stack_alphabet.name(top - 1);
}

// Heads (state, top) reachable from the initial configuration. within[h]
// collects the heads met from h before the stack drops below h's position.
std::vector<char> reachable_heads(const Dpao& m, const PopTable& pops) {
  const std::size_t cols = m.columns();
  const std::size_t nh = m.states.size() * cols;
  std::vector<std::vector<char>> within(nh, std::vector<char>(nh, 0));
  for (std::size_t h = 0; h < nh; ++h) within[h][h] = 1;

  auto merge = [&](std::vector<char>& into, std::size_t from) {
    bool changed = false;
    for (std::size_t i = 0; i < nh; ++i)
      if (within[from][i] && !into[i]) into[i] = changed = true;
    return changed;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : m.transitions) {
      const std::size_t h = t.state * cols + t.top;
      // Stack at h's position and above after the move, bottom to top.
      std::vector<StackTop> tops;
      if (t.top == kBottom) tops.push_back(kBottom);
      for (Symbol x : t.push) tops.push_back(x + 1);
      if (tops.empty()) continue;
      std::vector<std::size_t> current{t.to};
      for (std::size_t i = tops.size(); i-- > 0;) {
        std::vector<std::size_t> next;
        for (std::size_t s : current) {
          changed |= merge(within[h], s * cols + tops[i]);
          if (tops[i] == kBottom) continue;
          for (std::size_t p : pops.pop[s][tops[i] - 1]) next.push_back(p);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        current = std::move(next);
      }
    }
  }
  return within[m.initial * cols + kBottom];
}

}  // namespace

PopTable pop_analysis(const Dpao& m) {
  check_structure(m);
  const std::size_t nq = m.states.size();
  const std::size_t gamma = m.stack_alphabet.size();
  std::vector<std::vector<std::vector<std::optional<FiniteWord>>>> found(
      nq, std::vector<std::vector<std::optional<FiniteWord>>>(gamma, std::vector<std::optional<FiniteWord>>(nq)));

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : m.transitions) {
      if (t.top == kBottom) continue;
      const Symbol z = t.top - 1;
      std::map<std::size_t, FiniteWord> reach;
      reach[t.to] = t.input ? FiniteWord{*t.input} : FiniteWord{};
      for (std::size_t i = t.push.size(); i-- > 0;) {
        std::map<std::size_t, FiniteWord> next;
        for (const auto& [s, w] : reach)
          for (std::size_t p = 0; p < nq; ++p) {
            const auto& tail = found[s][t.push[i]][p];
            if (!tail || next.count(p)) continue;
            auto word = w;
            word.insert(word.end(), tail->begin(), tail->end());
            next.emplace(p, std::move(word));
          }
        reach = std::move(next);
      }
      for (auto& [p, w] : reach)
        if (!found[t.state][z][p]) {
          found[t.state][z][p] = std::move(w);
          changed = true;
        }
    }
  }

  PopTable table;
  table.pop.assign(nq, std::vector<std::vector<std::size_t>>(gamma));
  table.witness.assign(nq, std::vector<std::vector<FiniteWord>>(gamma));
  for (std::size_t q = 0; q < nq; ++q)
    for (Symbol z = 0; z < gamma; ++z)
      for (std::size_t p = 0; p < nq; ++p)
        if (found[q][z][p]) {
          table.pop[q][z].push_back(p);
          table.witness[q][z].push_back(*found[q][z][p]);
        }
  return table;
}

ValidationReport validate_dpao(const Dpao& m) {
  check_structure(m);
  const auto heads = reachable_heads(m, pop_analysis(m));
  const Table table(m);
  ValidationReport report;
  std::vector<char> state_seen(m.states.size(), 0);
  for (std::size_t q = 0; q < m.states.size(); ++q)
    for (StackTop top = 0; top < m.columns(); ++top) {
      if (!heads[q * m.columns() + top]) continue;
      state_seen[q] = 1;
      if (table.eps(q, top) != kNone) continue;
      for (Symbol d = 0; d < m.k; ++d)
        if (table.digit(q, top, d) == kNone)
          throw Error(ErrorKind::Incomplete, "no move from '" + m.states[q] + "' with top " + top_name(m, top) +
                                                 " on digit " + std::to_string(d));
    }
  for (std::size_t q = 0; q < m.states.size(); ++q)
    if (!state_seen[q]) report.warnings.push_back("state '" + m.states[q] + "' is unreachable");
  return report;
}

StackConfig step_input(const Dpao& m, const StackConfig& c, Symbol digit) {
  const Table table(m);
  auto next = c;
  table.close(next);
  table.step(next, digit);
  return next;
}

StackConfig config_of(const Dpao& m, std::uint64_t n) { return Table(m).config_of(n); }

Symbol output_of(const Dpao& m, const StackConfig& c) { return m.output(c.state, c.top()); }

Symbol output_at(const Dpao& m, std::uint64_t n) { return output_of(m, config_of(m, n)); }

SequencePrefix pda_prefix(const Dpao& m, std::size_t count, const std::string& source_id) {
  const Table table(m);
  SequencePrefix p;
  p.source_id = source_id;
  p.alphabet = m.output_alphabet;
  p.data = parallel::generate(count, [&table](std::uint64_t n) { return table.output(table.config_of(n)); });
  return p;
}

SequenceSource pda_source(const Dpao& m, const std::string& source_id) {
  validate_dpao(m);
  return SequenceSource(source_id, m.output_alphabet, 0,
                        [m](std::size_t count) { return pda_prefix(m, count).data; });
}

std::optional<EquivalentPair> find_equivalent_pair(const Dpao& m, const PairBudget& budget) {
  validate_dpao(m);
  const auto pops = pop_analysis(m);
  const Table table(m);
  std::map<StackConfig, std::uint64_t> exact;
  std::map<std::pair<std::size_t, Symbol>, std::uint64_t> protected_sig;

  for (std::uint64_t n = 1; n <= budget.n_max; ++n) {
    const auto c = table.config_of(n);
    std::optional<std::uint64_t> by_exact, by_protected;
    const bool indexable = c.height() <= budget.height_cap;
    if (indexable) {
      if (auto it = exact.find(c); it != exact.end()) by_exact = it->second;
    }
    std::optional<std::pair<std::size_t, Symbol>> sig;
    if (c.height() >= 2 && pops.permanent(c.state, c.stack.back())) {
      sig = std::make_pair(c.state, c.stack.back());
      if (auto it = protected_sig.find(*sig); it != protected_sig.end()) by_protected = it->second;
    }
    if (by_exact && (!by_protected || *by_exact <= *by_protected)) return EquivalentPair{*by_exact, n, PairMethod::Exact};
    if (by_protected) return EquivalentPair{*by_protected, n, PairMethod::Protected};
    if (indexable) exact.emplace(c, n);
    if (sig) protected_sig.emplace(*sig, n);
  }
  return std::nullopt;
}

DistinguishVerdict bounded_distinguish(const Dpao& m, const StackConfig& a, const StackConfig& b,
                                       std::size_t depth) {
  const Table table(m);
  struct Item {
    StackConfig x, y;
    FiniteWord w;
  };
  std::set<std::pair<StackConfig, StackConfig>> visited;
  std::deque<Item> queue;
  Item start{a, b, {}};
  table.close(start.x);
  table.close(start.y);
  visited.insert({start.x, start.y});
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    auto item = std::move(queue.front());
    queue.pop_front();
    if (table.output(item.x) != table.output(item.y)) return {true, item.w, depth};
    if (item.w.size() == depth || item.x == item.y) continue;
    for (Symbol d = 0; d < m.k; ++d) {
      Item next{item.x, item.y, item.w};
      table.step(next.x, d);
      table.step(next.y, d);
      next.w.push_back(d);
      if (visited.insert({next.x, next.y}).second) queue.push_back(std::move(next));
    }
  }
  return {false, {}, depth};
}

DistinguishVerdict bounded_distinguish(const Dpao& m, std::uint64_t n, std::uint64_t n_prime, std::size_t depth) {
  const Table table(m);
  return bounded_distinguish(m, table.config_of(n), table.config_of(n_prime), depth);
}

std::size_t pda_size(const Dpao& m) {
  std::size_t longest = 0;
  for (const auto& t : m.transitions) longest = std::max(longest, t.push.size());
  return m.states.size() + m.stack_alphabet.size() + longest;
}

Dpao dpao_from_dfao(const Dfao& a) {
  validate_dfao(a);
  Dpao m;
  m.k = a.k;
  m.states = a.states;
  m.initial = a.initial;
  for (std::size_t q = 0; q < a.states.size(); ++q)
    for (Symbol d = 0; d < a.k; ++d) m.transitions.push_back({q, kBottom, d, a.next(q, d), {}});
  m.output_alphabet = a.output_alphabet;
  m.tau = a.tau;
  return m;
}

Dpao catalog_dpao(const std::string& name) {
  Dpao m;
  m.k = 2;
  m.stack_alphabet = Alphabet({"X"});
  m.output_alphabet = Alphabet::digits(2);
  constexpr StackTop X = 1;
  const FiniteWord none, one{0}, two{0, 0};
  if (name == "xi2") {
    // Output 1 iff the counts of 0s and 1s in ⟨n⟩_2 differ by at most one.
    // q1 / q-1: more ones / more zeros, the stack holds the surplus minus one.
    enum : std::size_t { Qm, Q0, Q1 };
    m.states = {"q-1", "q0", "q1"};
    m.initial = Q0;
    m.transitions = {
        {Q0, kBottom, 1, Q1, none},  {Q0, kBottom, 0, Qm, none},  {Q1, kBottom, 0, Q0, none},
        {Q1, kBottom, 1, Q1, one},   {Q1, X, 0, Q1, none},        {Q1, X, 1, Q1, two},
        {Qm, kBottom, 0, Qm, one},   {Qm, kBottom, 1, Q0, none},  {Qm, X, 0, Qm, two},
        {Qm, X, 1, Qm, none},
    };
    m.tau = {1, 0, 1, 0, 1, 0};
    return m;
  }
  if (name == "push-only") {
    // Remembers the last digit read and pushes one X per digit.
    m.states = {"s0", "s1"};
    m.initial = 0;
    for (std::size_t q = 0; q < 2; ++q)
      for (Symbol d = 0; d < 2; ++d) {
        m.transitions.push_back({q, kBottom, d, d, one});
        m.transitions.push_back({q, X, d, d, two});
      }
    m.tau = {1, 0, 1, 0};
    return m;
  }
  throw Error(ErrorKind::UnknownName, "no catalog pushdown machine named '" + name + "'");
}

}  // namespace autoseq
