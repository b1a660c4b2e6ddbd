#include "autoseq/dfao.hpp"

#include <deque>

#include "autoseq/kernels.hpp"

namespace autoseq {

std::size_t Dfao::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return i;
  throw Error(ErrorKind::UnknownState, "state '" + name + "' not declared");
}

std::size_t Dfao::run_word(std::span<const Symbol> w) const {
  std::size_t q = initial;
  for (Symbol d : w) q = next(q, d);
  return q;
}

ValidationReport validate_dfao(const Dfao& m) {
  if (m.k < 2) throw Error(ErrorKind::InvalidBase, "k = " + std::to_string(m.k) + " < 2");
  if (m.states.empty()) throw Error(ErrorKind::InvalidArgument, "automaton has no states");
  if (m.initial >= m.states.size()) throw Error(ErrorKind::UnknownState, "initial state out of range");
  if (m.delta.size() != m.states.size() * m.k)
    throw Error(ErrorKind::MissingTransition, "transition table has wrong size");
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    for (unsigned d = 0; d < m.k; ++d) {
      const std::size_t target = m.delta[q * m.k + d];
      if (target == Dfao::kNoState)
        throw Error(ErrorKind::MissingTransition,
                    "no transition from '" + m.states[q] + "' on digit " + std::to_string(d));
      if (target >= m.states.size())
        throw Error(ErrorKind::UnknownState, "transition from '" + m.states[q] + "' to undeclared state");
    }
  }
  if (m.tau.size() != m.states.size())
    throw Error(ErrorKind::InvalidArgument, "output table must cover every state");
  for (std::size_t q = 0; q < m.states.size(); ++q)
    if (m.tau[q] >= m.output_alphabet.size())
      throw Error(ErrorKind::UnknownSymbol, "output of '" + m.states[q] + "' outside the output alphabet");

  ValidationReport report;
  std::vector<char> seen(m.states.size(), 0);
  std::deque<std::size_t> queue{m.initial};
  seen[m.initial] = 1;
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (unsigned d = 0; d < m.k; ++d) {
      const auto t = m.next(q, d);
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  for (std::size_t q = 0; q < m.states.size(); ++q)
    if (!seen[q]) report.warnings.push_back("state '" + m.states[q] + "' is unreachable");
  return report;
}

Symbol run_dfao(const Dfao& m, std::uint64_t n) {
  std::size_t q = m.initial;
  if (n > 0) {
    // most significant digit first
    std::uint64_t scale = 1;
    while (scale <= n / m.k) scale *= m.k;
    for (; scale > 0; scale /= m.k) q = m.next(q, static_cast<Symbol>((n / scale) % m.k));
  }
  return m.tau[q];
}

SequencePrefix dfao_prefix(const Dfao& m, std::size_t count, const std::string& source_id) {
  SequencePrefix p;
  p.source_id = source_id;
  p.alphabet = m.output_alphabet;
  p.data = parallel::generate(count, [&m](std::uint64_t n) { return run_dfao(m, n); });
  return p;
}

SequenceSource dfao_source(const Dfao& m, const std::string& source_id) {
  return SequenceSource(source_id, m.output_alphabet, 0,
                        [m](std::size_t count) { return dfao_prefix(m, count).data; });
}

namespace {

Dfao make(unsigned k, std::vector<std::string> states, std::vector<std::vector<std::size_t>> rows,
          std::vector<Symbol> outputs) {
  Dfao m;
  m.k = k;
  m.states = std::move(states);
  m.initial = 0;
  for (const auto& row : rows) m.delta.insert(m.delta.end(), row.begin(), row.end());
  m.output_alphabet = Alphabet::digits(2);
  m.tau = std::move(outputs);
  return m;
}

}  // namespace

Dfao catalog_dfao(const std::string& name) {
  if (name == "thue-morse" || name == "tm") {
    // δ(q0,0)=δ(q1,1)=q0, δ(q0,1)=δ(q1,0)=q1, τ(q0)=0, τ(q1)=1
    return make(2, {"q0", "q1"}, {{0, 1}, {1, 0}}, {0, 1});
  }
  if (name == "three-squares" || name == "xi0") {
    // Output 0 exactly on n = 4^i (8j + 7).
    enum { A, B, C, D, E, F };
    return make(2, {"A", "B", "C", "D", "E", "F"},
                {{A, B}, {A, C}, {A, D}, {E, D}, {F, B}, {E, B}},
                {1, 1, 1, 0, 1, 0});
  }
  throw Error(ErrorKind::UnknownName, "no catalog automaton named '" + name + "'");
}

}  // namespace autoseq
