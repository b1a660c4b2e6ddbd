#include "autoseq/machine_io.hpp"

namespace autoseq {

namespace {

MorphicSpec make_morphic(std::vector<std::string> internal, std::vector<FiniteWord> images,
                         std::vector<std::string> external, std::vector<Symbol> coding) {
  MorphicSpec spec;
  spec.sigma.alphabet = Alphabet(std::move(internal));
  spec.sigma.images = std::move(images);
  spec.start = 0;
  spec.external = Alphabet(std::move(external));
  spec.coding = std::move(coding);
  return spec;
}

}  // namespace

MorphicSpec catalog_morphic(const std::string& name) {
  enum : Symbol { a, b, c };
  if (name == "xi1") return make_morphic({"a", "b", "c"}, {{a, c, b}, {a, b, c}, {c}}, {"0", "1", "2"}, {0, 1, 2});
  // φ(σ^ω(a)) is 1 exactly at the nonzero squares
  if (name == "squares" || name == "sigma2")
    return make_morphic({"a", "b", "c"}, {{a, b}, {c, c, b}, {c}}, {"0", "1"}, {0, 1, 0});
  if (name == "tm-morphic") return make_morphic({"q0", "q1"}, {{0, 1}, {1, 0}}, {"0", "1"}, {0, 1});
  throw Error(ErrorKind::UnknownName, "no catalog morphism named '" + name + "'");
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"xi0", "dfao", "three-squares automaton: 0 exactly on n = 4^i(8j+7)"},
      {"tm", "dfao", "Thue-Morse automaton"},
      {"tm-morphic", "morphic", "Thue-Morse as the fixed point of q0 -> q0q1, q1 -> q1q0"},
      {"xi1", "morphic", "a -> acb, b -> abc, c -> c coded a0 b1 c2"},
      {"squares", "morphic", "a -> ab, b -> ccb, c -> c coded a0 b1 c0 (non-exponential growth)"},
      {"xi2", "dpao", "1 iff the digit counts of <n>_2 differ by at most one"},
      {"tm-dpao", "dpao", "Thue-Morse automaton recast as a stack-free pushdown machine"},
      {"push-only", "dpao", "pushes one symbol per digit and never pops"},
  };
  return entries;
}

MachineFile catalog_machine(const std::string& name) {
  Machine m;
  if (name == "xi0" || name == "three-squares")
    m = catalog_dfao("three-squares");
  else if (name == "tm" || name == "thue-morse")
    m = catalog_dfao("tm");
  else if (name == "tm-dpao")
    m = dpao_from_dfao(catalog_dfao("tm"));
  else if (name == "xi2" || name == "push-only")
    m = catalog_dpao(name);
  else
    m = catalog_morphic(name);
  return parse_machine(machine_to_json(m));
}

}  // namespace autoseq
