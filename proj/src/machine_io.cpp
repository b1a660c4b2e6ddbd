#include "autoseq/machine_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

namespace autoseq {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) bad("unknown field '" + key + "' in " + where);
}

const Json& need(const Json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> names(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of strings");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& x : j) {
    out.push_back(text(x, what + " entry"));
    if (!seen.insert(out.back()).second) bad("duplicate name '" + out.back() + "' in " + what);
  }
  return out;
}

unsigned base_of(const Json& j) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() > 1 << 16)
    bad("k must be a small nonnegative integer");
  return j.get<unsigned>();
}

Symbol digit_of(const std::string& s, unsigned k) {
  if (s.empty() || s.size() > 5 || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::InvalidDigit, "'" + s + "' is not a digit");
  const auto d = static_cast<unsigned>(std::stoul(s));
  if (d >= k) throw Error(ErrorKind::InvalidDigit, "digit " + s + " outside base " + std::to_string(k));
  return d;
}

std::size_t index_in(const std::vector<std::string>& list, const std::string& name, ErrorKind kind,
                     const std::string& what) {
  const auto it = std::find(list.begin(), list.end(), name);
  if (it == list.end()) throw Error(kind, what + " '" + name + "' not declared");
  return static_cast<std::size_t>(it - list.begin());
}

// Digit names "0".."m-1" (at least binary) when every output is a decimal
// digit string, otherwise the sorted set of output names.
Alphabet default_output_alphabet(const std::vector<std::string>& values) {
  bool numeric = !values.empty();
  unsigned top = 1;
  for (const auto& v : values) {
    if (v.empty() || v.size() > 4 || v.find_first_not_of("0123456789") != std::string::npos ||
        (v.size() > 1 && v[0] == '0')) {
      numeric = false;
      break;
    }
    top = std::max(top, static_cast<unsigned>(std::stoul(v)));
  }
  if (numeric) return Alphabet::digits(top + 1);
  std::set<std::string> distinct(values.begin(), values.end());
  return Alphabet(std::vector<std::string>(distinct.begin(), distinct.end()));
}

Alphabet output_alphabet(const Json& j, const std::vector<std::string>& values) {
  if (j.contains("outputAlphabet")) return Alphabet(names(j.at("outputAlphabet"), "outputAlphabet"));
  return default_output_alphabet(values);
}

Dfao parse_dfao(const Json& j) {
  only_keys(j, {"kind", "k", "states", "initial", "delta", "output", "outputAlphabet"}, "dfao");
  Dfao m;
  m.k = base_of(need(j, "k"));
  if (m.k < 2) throw Error(ErrorKind::InvalidBase, "k = " + std::to_string(m.k) + " < 2");
  m.states = names(need(j, "states"), "states");
  m.initial = index_in(m.states, text(need(j, "initial"), "initial"), ErrorKind::UnknownState, "state");
  m.delta.assign(m.states.size() * m.k, Dfao::kNoState);
  const auto& delta = need(j, "delta");
  if (!delta.is_object()) bad("delta must be an object");
  for (const auto& [from, row] : delta.items()) {
    const auto q = index_in(m.states, from, ErrorKind::UnknownState, "state");
    if (!row.is_object()) bad("delta row must be an object");
    for (const auto& [digit, to] : row.items())
      m.delta[q * m.k + digit_of(digit, m.k)] =
          index_in(m.states, text(to, "transition target"), ErrorKind::UnknownState, "state");
  }
  const auto& output = need(j, "output");
  if (!output.is_object()) bad("output must be an object");
  std::vector<std::string> values(m.states.size());
  std::vector<char> given(m.states.size(), 0);
  for (const auto& [state, value] : output.items()) {
    const auto q = index_in(m.states, state, ErrorKind::UnknownState, "state");
    values[q] = text(value, "output");
    given[q] = 1;
  }
  for (std::size_t q = 0; q < m.states.size(); ++q)
    if (!given[q]) throw Error(ErrorKind::InvalidArgument, "no output for state '" + m.states[q] + "'");
  m.output_alphabet = output_alphabet(j, values);
  for (const auto& v : values) m.tau.push_back(m.output_alphabet.index(v));
  return m;
}

FiniteWord letters(const Json& j, const Alphabet& a, const std::string& what) {
  FiniteWord w;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) w.push_back(a.index(std::string(1, c)));
  } else if (j.is_array()) {
    for (const auto& x : j) w.push_back(a.index(text(x, what)));
  } else {
    bad(what + " must be a string or an array");
  }
  return w;
}

MorphicSpec parse_morphic(const Json& j) {
  only_keys(j, {"kind", "internal", "start", "rules", "external", "coding"}, "morphic");
  MorphicSpec spec;
  spec.sigma.alphabet = Alphabet(names(need(j, "internal"), "internal"));
  const auto& a = spec.sigma.alphabet;
  spec.start = a.index(text(need(j, "start"), "start"));
  const auto& rules = need(j, "rules");
  if (!rules.is_object()) bad("rules must be an object");
  spec.sigma.images.assign(a.size(), {});
  std::vector<char> given(a.size(), 0);
  for (const auto& [letter, image] : rules.items()) {
    const auto s = a.index(letter);
    spec.sigma.images[s] = letters(image, a, "rule");
    given[s] = 1;
  }
  for (std::size_t s = 0; s < a.size(); ++s)
    if (!given[s]) throw Error(ErrorKind::InvalidArgument, "no rule for letter '" + a.name(static_cast<Symbol>(s)) + "'");
  spec.external = Alphabet(names(need(j, "external"), "external"));
  const auto& coding = need(j, "coding");
  if (!coding.is_object()) bad("coding must be an object");
  spec.coding.assign(a.size(), 0);
  std::fill(given.begin(), given.end(), 0);
  for (const auto& [letter, value] : coding.items()) {
    const auto s = a.index(letter);
    spec.coding[s] = spec.external.index(text(value, "coding value"));
    given[s] = 1;
  }
  for (std::size_t s = 0; s < a.size(); ++s)
    if (!given[s])
      throw Error(ErrorKind::InvalidArgument, "no coding for letter '" + a.name(static_cast<Symbol>(s)) + "'");
  return spec;
}

FiniteWord stack_word(const std::string& s, const Alphabet& gamma) {
  FiniteWord w;
  if (!gamma.single_char() || s.find(' ') != std::string::npos) {
    std::istringstream in(s);
    std::string token;
    while (in >> token) w.push_back(gamma.index(token));
  } else {
    for (char c : s) w.push_back(gamma.index(std::string(1, c)));
  }
  return w;
}

StackTop top_of(const std::string& s, const Alphabet& gamma) {
  return s == "#" ? kBottom : gamma.index(s) + 1;
}

Dpao parse_dpao(const Json& j) {
  only_keys(j, {"kind", "k", "states", "initial", "stack", "transitions", "output", "outputAlphabet"}, "dpao");
  Dpao m;
  m.k = base_of(need(j, "k"));
  if (m.k < 2) throw Error(ErrorKind::InvalidBase, "k = " + std::to_string(m.k) + " < 2");
  m.states = names(need(j, "states"), "states");
  m.initial = index_in(m.states, text(need(j, "initial"), "initial"), ErrorKind::UnknownState, "state");
  m.stack_alphabet = Alphabet(names(need(j, "stack"), "stack"));
  if (m.stack_alphabet.contains("#")) bad("'#' is reserved for the bottom marker");
  const auto& ts = need(j, "transitions");
  if (!ts.is_array()) bad("transitions must be an array");
  for (const auto& t : ts) {
    only_keys(t, {"state", "top", "input", "to", "push"}, "transition");
    DpaoTransition tr;
    tr.state = index_in(m.states, text(need(t, "state"), "state"), ErrorKind::UnknownState, "state");
    tr.top = top_of(text(need(t, "top"), "top"), m.stack_alphabet);
    const auto input = text(need(t, "input"), "input");
    if (input != "eps") tr.input = digit_of(input, m.k);
    tr.to = index_in(m.states, text(need(t, "to"), "to"), ErrorKind::UnknownState, "state");
    tr.push = stack_word(t.contains("push") ? text(t.at("push"), "push") : "", m.stack_alphabet);
    m.transitions.push_back(std::move(tr));
  }
  const auto& output = need(j, "output");
  if (!output.is_object()) bad("output must be an object");
  const std::size_t cols = m.columns();
  std::vector<std::string> values(m.states.size() * cols);
  std::vector<char> given(values.size(), 0);
  for (const auto& [state, row] : output.items()) {
    const auto q = index_in(m.states, state, ErrorKind::UnknownState, "state");
    if (!row.is_object()) bad("output row must be an object");
    for (const auto& [top, value] : row.items()) {
      const auto c = q * cols + top_of(top, m.stack_alphabet);
      values[c] = text(value, "output");
      given[c] = 1;
    }
  }
  for (std::size_t c = 0; c < values.size(); ++c)
    if (!given[c])
      throw Error(ErrorKind::InvalidArgument, "no output for state '" + m.states[c / cols] + "' with top " +
                                                  (c % cols == 0 ? std::string("#")
                                                                 : m.stack_alphabet.name(static_cast<Symbol>(c % cols - 1))));
  m.output_alphabet = output_alphabet(j, values);
  for (const auto& v : values) m.tau.push_back(m.output_alphabet.index(v));
  return m;
}

std::string top_name(StackTop top, const Alphabet& gamma) { return top == kBottom ? "#" : gamma.name(top - 1); }

OrderedJson word_json(const FiniteWord& w, const Alphabet& a) {
  if (a.single_char()) return a.render(w);
  OrderedJson arr = OrderedJson::array();
  for (Symbol s : w) arr.push_back(a.name(s));
  return arr;
}

void emit_output_alphabet(OrderedJson& j, const Alphabet& a, const std::vector<Symbol>& tau) {
  std::vector<std::string> values;
  for (Symbol s : tau) values.push_back(a.name(s));
  if (!(default_output_alphabet(values) == a)) j["outputAlphabet"] = a.symbols();
}

OrderedJson dfao_json(const Dfao& m) {
  OrderedJson j;
  j["kind"] = "dfao";
  j["k"] = m.k;
  j["states"] = m.states;
  j["initial"] = m.states[m.initial];
  OrderedJson delta = OrderedJson::object();
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    OrderedJson row = OrderedJson::object();
    for (unsigned d = 0; d < m.k; ++d) row[std::to_string(d)] = m.states[m.next(q, d)];
    delta[m.states[q]] = std::move(row);
  }
  j["delta"] = std::move(delta);
  OrderedJson output = OrderedJson::object();
  for (std::size_t q = 0; q < m.states.size(); ++q) output[m.states[q]] = m.output_alphabet.name(m.tau[q]);
  j["output"] = std::move(output);
  emit_output_alphabet(j, m.output_alphabet, m.tau);
  return j;
}

OrderedJson morphic_json(const MorphicSpec& spec, const std::string& kind) {
  const auto& a = spec.internal();
  OrderedJson j;
  j["kind"] = kind.empty() ? "morphic" : kind;
  j["internal"] = a.symbols();
  j["start"] = a.name(spec.start);
  OrderedJson rules = OrderedJson::object();
  for (std::size_t s = 0; s < a.size(); ++s) rules[a.name(static_cast<Symbol>(s))] = word_json(spec.sigma.images[s], a);
  j["rules"] = std::move(rules);
  j["external"] = spec.external.symbols();
  OrderedJson coding = OrderedJson::object();
  for (std::size_t s = 0; s < a.size(); ++s) coding[a.name(static_cast<Symbol>(s))] = spec.external.name(spec.coding[s]);
  j["coding"] = std::move(coding);
  return j;
}

OrderedJson dpao_json(const Dpao& m) {
  const auto& gamma = m.stack_alphabet;
  OrderedJson j;
  j["kind"] = "dpao";
  j["k"] = m.k;
  j["states"] = m.states;
  j["initial"] = m.states[m.initial];
  j["stack"] = gamma.symbols();
  OrderedJson ts = OrderedJson::array();
  for (const auto& t : m.transitions) {
    OrderedJson o;
    o["state"] = m.states[t.state];
    o["top"] = top_name(t.top, gamma);
    o["input"] = t.input ? std::to_string(*t.input) : "eps";
    o["to"] = m.states[t.to];
    o["push"] = gamma.render(t.push);
    ts.push_back(std::move(o));
  }
  j["transitions"] = std::move(ts);
  OrderedJson output = OrderedJson::object();
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    OrderedJson row = OrderedJson::object();
    for (StackTop top = 0; top < m.columns(); ++top) row[top_name(top, gamma)] = m.output_alphabet.name(m.output(q, top));
    output[m.states[q]] = std::move(row);
  }
  j["output"] = std::move(output);
  emit_output_alphabet(j, m.output_alphabet, m.tau);
  return j;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::NumericError, "SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

MachineFile parse_machine(const std::string& body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
  if (!j.is_object()) bad("machine file must be a JSON object");
  MachineFile file;
  file.kind = text(need(j, "kind"), "kind");
  try {
    if (file.kind == "dfao") {
      auto m = parse_dfao(j);
      file.report = validate_dfao(m);
      file.machine = std::move(m);
    } else if (file.kind == "morphic" || file.kind == "tag") {
      auto m = parse_morphic(j);
      file.report = validate_morphic(m);
      file.machine = std::move(m);
    } else if (file.kind == "dpao") {
      auto m = parse_dpao(j);
      file.report = validate_dpao(m);
      file.machine = std::move(m);
    } else {
      bad("unknown machine kind '" + file.kind + "'");
    }
  } catch (const Json::exception& e) {
    bad(e.what());
  }
  file.hash = sha256_hex(j.dump());
  return file;
}

MachineFile load_machine(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return parse_machine(body.str());
}

std::string machine_to_json(const Machine& m, const std::string& kind) {
  OrderedJson j = std::visit(
      [&](const auto& x) -> OrderedJson {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Dfao>)
          return dfao_json(x);
        else if constexpr (std::is_same_v<T, MorphicSpec>)
          return morphic_json(x, kind);
        else
          return dpao_json(x);
      },
      m);
  return j.dump(2) + "\n";
}

SequenceSource source_for(const MachineFile& file) {
  auto source = std::visit(
      [&](const auto& x) -> SequenceSource {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Dfao>)
          return dfao_source(x, file.kind);
        else if constexpr (std::is_same_v<T, MorphicSpec>)
          return morphic_source(x, file.kind);
        else
          return pda_source(x, file.kind);
      },
      file.machine);
  source.set_binding(file.hash);
  return source;
}

SequenceSource bound_stream_source(const DigitStreamSpec& spec, std::uint64_t file_first_index) {
  auto source = stream_source(spec, file_first_index);
  if (spec.kind == StreamKind::File) {
    std::ifstream in(spec.path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    source.set_binding(sha256_hex(body.str()));
  } else {
    source.set_binding(sha256_hex(source.id()));
  }
  return source;
}

}  // namespace autoseq
