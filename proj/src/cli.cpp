#include "autoseq/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "autoseq/certify.hpp"
#include "autoseq/kernels.hpp"
#include "autoseq/machine_io.hpp"
#include "autoseq/numbers.hpp"
#include "autoseq/tag.hpp"

namespace autoseq {

namespace {

using OrderedJson = nlohmann::ordered_json;

// ---------------------------------------------------------------- reports

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

class Report {
 public:
  void field(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
  Table& table(const std::string& title, std::vector<std::string> columns) {
    tables_.push_back({title, std::move(columns), {}});
    return tables_.back();
  }

  void print(std::ostream& out, bool json) const {
    if (json) {
      OrderedJson j;
      OrderedJson f = OrderedJson::object();
      for (const auto& [k, v] : fields_) f[k] = v;
      j["fields"] = std::move(f);
      OrderedJson ts = OrderedJson::array();
      for (const auto& t : tables_) ts.push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
      j["tables"] = std::move(ts);
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : fields_) out << k << ": " << v << "\n";
    for (const auto& t : tables_) {
      out << "\n" << t.title << "\n";
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
      for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c) s += "  ";
          s += cells[c] + std::string(width[c] - cells[c].size(), ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << "\n";
      };
      line(t.columns);
      for (const auto& row : t.rows) line(row);
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
  std::vector<Table> tables_;
};

std::string approx(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string exact_and_approx(const Rational& r) { return to_string(r) + " (~" + approx(to_double(r)) + ")"; }

std::string yes_no(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- numbers

std::uint64_t parse_count(const std::string& s) {
  auto plain = [&](const std::string& t) -> std::uint64_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "bad number '" + s + "'");
    return std::stoull(t);
  };
  const auto caret = s.find('^');
  if (caret == std::string::npos) return plain(s);
  const auto base = plain(s.substr(0, caret));
  const auto exp = plain(s.substr(caret + 1));
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) throw Error(ErrorKind::InvalidArgument, "'" + s + "' overflows");
  return r;
}

/// "a..b" (inclusive), "b^i..b^j" (powers), or "x,y,z".
std::vector<std::uint64_t> parse_lengths(const std::string& s) {
  std::vector<std::uint64_t> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const auto lo = s.substr(0, dots), hi = s.substr(dots + 2);
    const auto lc = lo.find('^'), hc = hi.find('^');
    if (lc != std::string::npos && hc != std::string::npos && lo.substr(0, lc) == hi.substr(0, hc)) {
      const auto base = parse_count(lo.substr(0, lc));
      if (base < 2) throw Error(ErrorKind::InvalidArgument, "power ranges need a base >= 2");
      const auto from = parse_count(lo.substr(lc + 1)), to = parse_count(hi.substr(hc + 1));
      for (auto e = from; e <= to; ++e) out.push_back(parse_count(std::to_string(base) + "^" + std::to_string(e)));
    } else {
      const auto from = parse_count(lo), to = parse_count(hi);
      if (to >= from && to - from > 10'000'000) throw Error(ErrorKind::InvalidArgument, "range too long");
      for (auto n = from; n <= to; ++n) out.push_back(n);
    }
  } else {
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_count(item));
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty length list '" + s + "'");
  if (!std::is_sorted(out.begin(), out.end())) throw Error(ErrorKind::InvalidArgument, "lengths must increase");
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::Parse, "expected n,n' but got '" + s + "'");
  return {parse_count(s.substr(0, comma)), parse_count(s.substr(comma + 1))};
}

// ---------------------------------------------------------------- files

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

// ---------------------------------------------------------------- sources

struct SourceOptions {
  std::string machine;
  std::string catalog;
  std::string stream;
  unsigned base = 10;
  std::uint64_t first_index = 0;
};

void add_machine_options(CLI::App* cmd, SourceOptions& o) {
  cmd->add_option("--machine", o.machine, "machine file (JSON)");
  cmd->add_option("--catalog", o.catalog, "built-in machine name");
}

void add_source_options(CLI::App* cmd, SourceOptions& o) {
  add_machine_options(cmd, o);
  cmd->add_option("--stream", o.stream, "rational:p/q, surd:d, xi3 or file:<path>");
  cmd->add_option("--base", o.base, "digit base for number streams")->capture_default_str();
  cmd->add_option("--first-index", o.first_index, "integer at position 1 of a file stream")->capture_default_str();
}

bool has_machine(const SourceOptions& o) { return !o.machine.empty() || !o.catalog.empty(); }

MachineFile load_machine_file(const SourceOptions& o) {
  if (!o.machine.empty() && !o.catalog.empty())
    throw Error(ErrorKind::InvalidArgument, "give either --machine or --catalog");
  if (!o.machine.empty()) return load_machine(o.machine);
  if (!o.catalog.empty()) return catalog_machine(o.catalog);
  throw Error(ErrorKind::InvalidArgument, "a machine is required (--machine or --catalog)");
}

SequenceSource load_source(const SourceOptions& o) {
  if (has_machine(o)) {
    if (!o.stream.empty()) throw Error(ErrorKind::InvalidArgument, "give a machine or a stream, not both");
    return source_for(load_machine_file(o));
  }
  if (o.stream.empty()) throw Error(ErrorKind::InvalidArgument, "a machine or a stream is required");
  return bound_stream_source(parse_stream_spec(o.stream, o.base), o.first_index);
}

std::size_t machine_size(const MachineFile& f) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Dfao>)
          return m.states.size();
        else if constexpr (std::is_same_v<T, MorphicSpec>)
          return TagMachine{m}.size();
        else
          return pda_size(m);
      },
      f.machine);
}

const MorphicSpec& need_morphic(const MachineFile& f, const std::string& what) {
  const auto* spec = std::get_if<MorphicSpec>(&f.machine);
  if (!spec) throw Error(ErrorKind::UnsupportedForm, what + " needs a morphic (tag) machine");
  return *spec;
}

Dpao need_dpao(const MachineFile& f) {
  if (const auto* d = std::get_if<Dpao>(&f.machine)) return *d;
  if (const auto* a = std::get_if<Dfao>(&f.machine)) return dpao_from_dfao(*a);
  throw Error(ErrorKind::UnsupportedForm, "equivalence search needs a dfao or dpao machine");
}

void warn(const MachineFile& f, std::ostream& err) {
  for (const auto& w : f.report.warnings) err << "warning: " << w << "\n";
}

// ---------------------------------------------------------------- sections

void growth_section(Report& r, const MorphicSpec& spec) {
  const auto g = growth_report(spec);
  r.field("exponential growth", yes_no(g.global_exponential));
  r.field("spectral radius (approximate)", approx(spectral_radius_estimate(spec)));
  std::string maximal;
  for (Symbol s : g.maximal_growth) maximal += (maximal.empty() ? "" : " ") + spec.internal().name(s);
  r.field("maximal growth letters", maximal);
  auto& t = r.table("letter growth |s^n(b)| ~ n^k theta^n", {"letter", "theta (approximate)", "k", "exponential"});
  for (std::size_t a = 0; a < g.per_letter.size(); ++a) {
    const auto& l = g.per_letter[a];
    t.rows.push_back({spec.internal().name(static_cast<Symbol>(a)), approx(l.theta), std::to_string(l.poly_degree),
                      yes_no(l.exponential)});
  }
}

void dilation_section(Report& r, const MorphicSpec& spec, std::uint64_t n) {
  const TagMachine t{spec};
  const auto est = dilation_profile(t, n);
  r.field("tag machine size", std::to_string(t.size()));
  r.field("dilation factor > 1", yes_no(est.exceeds_one));
  r.field("min W(n)/n for n <= " + std::to_string(n), exact_and_approx(est.min_ratio));
  r.field("attained at n", std::to_string(est.argmin));
  auto& table = r.table("dilation samples W(n)/n", {"n", "W(n)/n", "approximate"});
  for (const auto& s : est.samples) table.rows.push_back({std::to_string(s.n), to_string(s.ratio), approx(to_double(s.ratio))});
}

// ---------------------------------------------------------------- commands

struct Options {
  SourceOptions src;
  std::string format = "text";
  std::string out_path;
  std::string count_text = "100";
  // analyze
  std::string complexity, right_special, dio, dilation;
  std::string prefix_text = "65536";
  std::uint64_t max_period = 0;
  bool growth = false;
  // certify / verify / equiv
  std::string pair_text;
  unsigned k = 2;
  std::uint64_t depth = 12;
  std::uint64_t budget = 1000;
  std::size_t height_cap = 64;
  std::string cert_path;
  std::uint64_t extra_depth = 0;
  std::string distinguish;
  bool pop = false;
  // imitate
  unsigned states = 1;
  std::size_t len = 100;
  int imitate_k = 0;
  std::uint64_t cap = kImitationCap;
  // cf
  std::uint64_t d = 2;
  // catalog
  std::string name;
  bool all = false;
  std::string dir = ".";
};

int cmd_digits(const Options& o, std::ostream& out) {
  const auto source = load_source(o.src);
  const auto p = source.prefix(static_cast<std::size_t>(parse_count(o.count_text)));
  out << p.alphabet.render(p.data) << "\n";
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  Report r;
  std::optional<MachineFile> file;
  SequenceSource source = [&] {
    if (has_machine(o.src)) {
      file = load_machine_file(o.src);
      warn(*file, err);
      return source_for(*file);
    }
    return load_source(o.src);
  }();
  r.field("source", source.id());
  if (file) {
    r.field("kind", file->kind);
    r.field("size", std::to_string(machine_size(*file)));
  }

  const bool want_factors = !o.complexity.empty() || !o.right_special.empty();
  if (want_factors) {
    auto len = static_cast<std::size_t>(parse_count(o.prefix_text));
    if (source.available()) len = std::min(len, *source.available());
    const auto prefix = source.prefix(len);
    r.field("prefix length", std::to_string(len));
    if (!o.complexity.empty()) {
      const auto ns = parse_lengths(o.complexity);
      const std::vector<std::size_t> lengths(ns.begin(), ns.end());
      const auto p = parallel::complexity_table(prefix.view(), lengths);
      auto& t = r.table("factor complexity", {"n", "p(n)", "p(n)/n (approximate)"});
      for (std::size_t i = 0; i < lengths.size(); ++i)
        t.rows.push_back({std::to_string(lengths[i]), std::to_string(p[i]),
                          approx(static_cast<double>(p[i]) / static_cast<double>(lengths[i]))});
    }
    if (!o.right_special.empty()) {
      const auto ns = parse_lengths(o.right_special);
      const std::vector<std::size_t> lengths(ns.begin(), ns.end());
      const auto s = parallel::right_special_table(prefix.view(), lengths);
      auto& t = r.table("right-special factors", {"n", "count"});
      for (std::size_t i = 0; i < lengths.size(); ++i)
        t.rows.push_back({std::to_string(lengths[i]), std::to_string(s[i])});
    }
  }
  if (!o.dio.empty()) {
    const auto lengths = parse_lengths(o.dio);
    RepetitionCaps caps;
    if (o.max_period) caps.max_period = o.max_period;
    const auto profile = dio_profile(source, lengths, caps);
    auto& t = r.table("best repetition U V^a with |U V^a| = l", {"l", "ratio", "approximate", "u", "v", "ext", "record"});
    for (const auto& s : profile) {
      const auto& w = s.witness;
      t.rows.push_back({std::to_string(s.length), to_string(s.best), approx(to_double(s.best)),
                        w ? std::to_string(w->u) : "-", w ? std::to_string(w->v) : "-",
                        w ? std::to_string(w->ext) : "-", to_string(s.record)});
    }
  }
  if (!o.dilation.empty()) {
    if (!file) throw Error(ErrorKind::UnsupportedForm, "dilation needs a morphic machine");
    dilation_section(r, need_morphic(*file, "dilation"), parse_count(o.dilation));
  }
  if (o.growth) {
    if (!file) throw Error(ErrorKind::UnsupportedForm, "growth needs a morphic machine");
    growth_section(r, need_morphic(*file, "growth"));
  }
  r.print(out, o.format == "json");
  return kExitOk;
}

void certificate_summary(const Certificate& c, std::ostream& s) {
  s << "kind: " << to_string(c.kind) << "\n";
  if (c.pair) s << "pair: (" << c.pair->n << ", " << c.pair->n_prime << "), k = " << c.pair->k << "\n";
  if (c.method) s << "method: " << *c.method << "\n";
  if (c.seed)
    s << "seed: U = \"" << c.seed->u << "\", b = " << c.seed->b << ", V = \"" << c.seed->v << "\" (positions "
      << c.seed->p1 << ", " << c.seed->p2 << ")\n";
  s << "dio lower bound: " << exact_and_approx(c.dio_lower_bound) << "\n";
  s << "ratio growth bound: " << to_string(c.ratio_growth_bound) << "\n";
  if (c.witness_ratio_limit) s << "witness ratio limit: " << to_string(*c.witness_ratio_limit) << "\n";
  s << "verified depth: " << c.verified_depth << " (" << c.witnesses.size() << " witnesses)\n";
  s << "consequence: dio > 1, so a number with these base-b digits is rational or transcendental\n";
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<Certificate> cert;
  if (!o.pair_text.empty()) {
    const auto [n, n_prime] = parse_pair(o.pair_text);
    const auto source = load_source(o.src);
    auto outcome = certificate_from_pair(source, n, n_prime, o.k, o.depth);
    if (const auto* r = std::get_if<PairRefutation>(&outcome)) {
      out << "pair (" << n << ", " << n_prime << ") refuted: " << r->message << "\n";
      return kExitBudget;
    }
    cert = std::get<Certificate>(std::move(outcome));
  } else {
    const auto file = load_machine_file(o.src);
    warn(file, err);
    if (const auto* m = std::get_if<Dfao>(&file.machine)) {
      cert = certify_dfao(*m, o.depth);
    } else if (const auto* spec = std::get_if<MorphicSpec>(&file.machine)) {
      cert = certify_morphic(*spec, o.depth);
    } else {
      cert = certify_pda(std::get<Dpao>(file.machine), {o.budget, o.height_cap}, o.depth);
      if (!cert) {
        out << "no equivalent pair among n <= " << o.budget << " (height cap " << o.height_cap
            << "); this is not a disproof\n";
        return kExitBudget;
      }
    }
    cert->machine = file.hash;
  }
  const auto json = certificate_to_json(*cert);
  if (o.out_path.empty()) {
    out << json;
    certificate_summary(*cert, err);
  } else {
    write_output(o.out_path, json, out);
    certificate_summary(*cert, out);
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.cert_path.empty()) throw Error(ErrorKind::InvalidArgument, "--cert is required");
  const auto cert = certificate_from_json(read_file(o.cert_path));
  VerifyOptions vo;
  vo.extra_depth = o.extra_depth;
  std::optional<MachineFile> file;
  std::optional<SequenceSource> source;
  if (has_machine(o.src)) {
    file = load_machine_file(o.src);
    source = source_for(*file);
    if (const auto* spec = std::get_if<MorphicSpec>(&file->machine)) vo.morphic = spec;
  } else {
    source = load_source(o.src);
    vo.base = o.src.base;
  }
  const auto report = verify_certificate(*source, cert, vo);
  for (const auto& line : report.lines) out << line << "\n";
  if (!report.valid) throw Error(ErrorKind::InvalidCertificate, report.failure);
  out << "certificate valid (" << cert.witnesses.size() << " witnesses";
  if (o.extra_depth) out << ", pair identities extended by " << o.extra_depth << " levels";
  out << ")\n";
  return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  const auto file = load_machine_file(o.src);
  std::string converted;
  if (const auto* m = std::get_if<Dfao>(&file.machine))
    converted = machine_to_json(from_dfao(*m));
  else if (const auto* spec = std::get_if<MorphicSpec>(&file.machine))
    converted = machine_to_json(to_dfao(*spec));
  else
    throw Error(ErrorKind::UnsupportedForm, "only dfao and k-uniform morphic machines convert");
  write_output(o.out_path, converted, out);
  return kExitOk;
}

int cmd_dilation(const Options& o, std::ostream& out) {
  const auto file = load_machine_file(o.src);
  Report r;
  dilation_section(r, need_morphic(file, "dilation"), parse_count(o.count_text));
  r.print(out, o.format == "json");
  return kExitOk;
}

int cmd_growth(const Options& o, std::ostream& out) {
  const auto file = load_machine_file(o.src);
  Report r;
  growth_section(r, need_morphic(file, "growth"));
  r.print(out, o.format == "json");
  return kExitOk;
}

int cmd_equiv(const Options& o, std::ostream& out, std::ostream& err) {
  const auto file = load_machine_file(o.src);
  warn(file, err);
  const auto m = need_dpao(file);
  Report r;
  r.field("size", std::to_string(pda_size(m)));
  if (o.pop) {
    const auto pops = pop_analysis(m);
    auto& t = r.table("pop sets", {"state", "top", "pop"});
    for (std::size_t q = 0; q < m.states.size(); ++q)
      for (Symbol z = 0; z < m.stack_alphabet.size(); ++z) {
        std::string set;
        for (auto p : pops.pop[q][z]) set += (set.empty() ? "" : " ") + m.states[p];
        t.rows.push_back({m.states[q], m.stack_alphabet.name(z), set.empty() ? "(permanent)" : set});
      }
  }
  if (!o.distinguish.empty()) {
    const auto [n, n_prime] = parse_pair(o.distinguish);
    const auto v = bounded_distinguish(m, n, n_prime, o.depth);
    r.field("compare", "C(" + std::to_string(n) + ") vs C(" + std::to_string(n_prime) + ") up to depth " +
                           std::to_string(o.depth));
    if (v.distinguished) {
      std::string w;
      for (Symbol d : v.witness) w += std::to_string(d);
      r.field("verdict", "distinguished by w = \"" + w + "\"");
    } else {
      r.field("verdict", "indistinguishable to depth " + std::to_string(o.depth) + " (not a proof of equivalence)");
    }
  } else {
    const auto pair = find_equivalent_pair(m, {o.budget, o.height_cap});
    if (!pair) {
      r.field("pair", "none with n <= " + std::to_string(o.budget));
      r.print(out, o.format == "json");
      return kExitBudget;
    }
    r.field("pair", "(" + std::to_string(pair->n) + ", " + std::to_string(pair->n_prime) + ")");
    r.field("method", to_string(pair->method));
    r.field("dio lower bound", to_string(Rational(1) + Rational(1, static_cast<std::int64_t>(pair->n_prime - 1))));
  }
  r.print(out, o.format == "json");
  return kExitOk;
}

int cmd_imitate(const Options& o, std::ostream& out) {
  const unsigned k = o.imitate_k > 0 ? static_cast<unsigned>(o.imitate_k) : o.src.base;
  const std::size_t outputs = o.src.stream == "xi3" ? 3 : o.src.base;
  const auto need = imitation_candidates(k, o.states, outputs);
  if (!need || *need > o.cap)
    throw Error(ErrorKind::CapExceeded, "enumeration needs " + (need ? std::to_string(*need) : std::string("> 2^64")) +
                                            " candidate machines, cap is " + std::to_string(o.cap));
  if (o.src.stream.empty()) throw Error(ErrorKind::InvalidArgument, "--stream is required");
  const auto spec = parse_stream_spec(o.src.stream, o.src.base);
  const auto target = imitation_target(spec, o.len);
  const auto result = imitation_index(target, k, o.states, o.cap);
  Report r;
  r.field("target", spec.description + " base " + std::to_string(spec.base) + " (integer part first)");
  r.field("k", std::to_string(k));
  r.field("max states", std::to_string(o.states));
  r.field("candidate bound", std::to_string(*need));
  r.field("canonical tables examined", std::to_string(result.structures));
  r.field("I", std::to_string(result.index) + (result.censored ? " (censored at the length limit)" : ""));
  r.field("best machine states", std::to_string(result.best.states.size()));
  r.print(out, o.format == "json");
  if (!o.out_path.empty()) write_output(o.out_path, machine_to_json(result.best), out);
  return kExitOk;
}

int cmd_cf(const Options& o, std::ostream& out) {
  const auto cf = cf_quadratic(o.d);
  auto join = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  Report r;
  r.field("sqrt", std::to_string(o.d));
  r.field("a0", std::to_string(cf.a0));
  r.field("preperiod", "[" + join(cf.preperiod) + "]");
  r.field("period", "[" + join(cf.period) + "]");
  const auto seq = cf_as_sequence(cf, static_cast<std::size_t>(parse_count(o.count_text)));
  r.field("a1 a2 ...", seq.alphabet.render(seq.data));
  r.print(out, o.format == "json");
  return kExitOk;
}

int cmd_catalog_list(std::ostream& out) {
  for (const auto& e : catalog_entries()) out << e.name << "  " << e.kind << "  " << e.description << "\n";
  return kExitOk;
}

int cmd_catalog_export(const Options& o, std::ostream& out) {
  if (o.all) {
    std::filesystem::create_directories(o.dir);
    for (const auto& e : catalog_entries()) {
      const auto path = (std::filesystem::path(o.dir) / (e.name + ".json")).string();
      write_output(path, machine_to_json(catalog_machine(e.name).machine), out);
      out << path << "\n";
    }
    return kExitOk;
  }
  if (o.name.empty()) throw Error(ErrorKind::InvalidArgument, "name a catalog machine or pass --all");
  write_output(o.out_path, machine_to_json(catalog_machine(o.name).machine), out);
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InsufficientData: return kExitInsufficient;
    case ErrorKind::CapExceeded: return kExitCap;
    case ErrorKind::BudgetExceeded: return kExitBudget;
    default: return kExitInvalid;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automatic, morphic and pushdown digit sequences: generation, analysis and repetition certificates",
               "autoseq"};
  app.require_subcommand(1);
  Options o;

  auto format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  };

  auto* digits = app.add_subcommand("digits", "print the first symbols of a machine or stream");
  add_source_options(digits, o.src);
  digits->add_option("--count", o.count_text, "number of symbols")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "repetition, complexity, dilation and growth tables");
  add_source_options(analyze, o.src);
  analyze->add_option("--complexity", o.complexity, "block lengths, e.g. 1..64");
  analyze->add_option("--right-special", o.right_special, "block lengths for right-special counts");
  analyze->add_option("--dio", o.dio, "prefix lengths, e.g. 2^4..2^14");
  analyze->add_option("--max-period", o.max_period, "largest period considered by --dio");
  analyze->add_option("--dilation", o.dilation, "N for the dilation profile (morphic machines)");
  analyze->add_flag("--growth", o.growth, "growth report (morphic machines)");
  analyze->add_option("--prefix", o.prefix_text, "prefix length for factor statistics")->capture_default_str();
  format(analyze);

  auto* certify = app.add_subcommand("certify", "build a repetition certificate");
  add_source_options(certify, o.src);
  certify->add_option("--pair", o.pair_text, "n,n' for a sequence-level pair certificate");
  certify->add_option("--k", o.k, "base of the pair identities")->capture_default_str();
  certify->add_option("--depth", o.depth, "levels to verify")->capture_default_str();
  certify->add_option("--budget", o.budget, "largest n scanned for pushdown pairs")->capture_default_str();
  certify->add_option("--height-cap", o.height_cap, "largest stack height indexed exactly")->capture_default_str();
  certify->add_option("--out", o.out_path, "certificate file");

  auto* verify = app.add_subcommand("verify", "re-check a certificate against its machine or stream");
  add_source_options(verify, o.src);
  verify->add_option("--cert", o.cert_path, "certificate file")->required();
  verify->add_option("--extra-depth", o.extra_depth, "extra levels for pair identities")->capture_default_str();

  auto* convert = app.add_subcommand("convert", "k-uniform morphism <-> k-automaton");
  add_machine_options(convert, o.src);
  convert->add_option("--out", o.out_path, "output machine file");

  auto* dilation = app.add_subcommand("dilation", "sampled W(n)/n profile of a tag machine");
  add_machine_options(dilation, o.src);
  dilation->add_option("--n", o.count_text, "largest n")->capture_default_str();
  format(dilation);

  auto* growth = app.add_subcommand("growth", "growth orders of the letters of a morphism");
  add_machine_options(growth, o.src);
  format(growth);

  auto* equiv = app.add_subcommand("equiv", "configuration-equivalence search on a pushdown machine");
  add_machine_options(equiv, o.src);
  equiv->add_option("--budget", o.budget, "largest n scanned")->capture_default_str();
  equiv->add_option("--height-cap", o.height_cap, "largest stack height indexed exactly")->capture_default_str();
  equiv->add_option("--distinguish", o.distinguish, "n,n': compare C(n) and C(n') on short inputs");
  equiv->add_option("--depth", o.depth, "input length for --distinguish")->capture_default_str();
  equiv->add_flag("--pop", o.pop, "print the pop sets");
  format(equiv);

  auto* imitate = app.add_subcommand("imitate", "imitation index over small automata");
  imitate->add_option("--stream", o.src.stream, "rational:p/q, surd:d, xi3 or file:<path>");
  imitate->add_option("--base", o.src.base, "digit base")->capture_default_str();
  imitate->add_option("--k", o.imitate_k, "automaton input base (default: the digit base)");
  imitate->add_option("--states", o.states, "largest number of states")->capture_default_str();
  imitate->add_option("--len", o.len, "digits compared")->capture_default_str();
  imitate->add_option("--cap", o.cap, "largest candidate count enumerated")->capture_default_str();
  imitate->add_option("--out", o.out_path, "file for the best machine");
  format(imitate);

  auto* cf = app.add_subcommand("cf", "continued fraction of sqrt(d)");
  cf->add_option("--d", o.d, "radicand")->capture_default_str();
  cf->add_option("--count", o.count_text, "partial quotients printed")->capture_default_str();
  format(cf);

  auto* catalog = app.add_subcommand("catalog", "built-in machines");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list the built-in machines");
  auto* exp = catalog->add_subcommand("export", "write a built-in machine as JSON");
  exp->add_option("name", o.name, "machine name");
  exp->add_option("--out", o.out_path, "output file");
  exp->add_flag("--all", o.all, "export every machine into --dir");
  exp->add_option("--dir", o.dir, "directory for --all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*digits) return cmd_digits(o, out);
    if (*analyze) return cmd_analyze(o, out, err);
    if (*certify) return cmd_certify(o, out, err);
    if (*verify) return cmd_verify(o, out);
    if (*convert) return cmd_convert(o, out);
    if (*dilation) return cmd_dilation(o, out);
    if (*growth) return cmd_growth(o, out);
    if (*equiv) return cmd_equiv(o, out, err);
    if (*imitate) return cmd_imitate(o, out);
    if (*cf) return cmd_cf(o, out);
    if (*list) return cmd_catalog_list(out);
    if (*exp) return cmd_catalog_export(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace autoseq
