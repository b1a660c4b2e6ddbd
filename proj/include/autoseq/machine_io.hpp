#pragma once
// JSON machine files and the built-in catalog.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/morphic.hpp"
#include "autoseq/numbers.hpp"
#include "autoseq/pda.hpp"
#include "autoseq/source.hpp"

namespace autoseq {

using Machine = std::variant<Dfao, MorphicSpec, Dpao>;

struct MachineFile {
  std::string kind;  // "dfao", "morphic", "tag" or "dpao" as written
  Machine machine;
  std::string hash;  // SHA-256 of the canonical JSON form
  ValidationReport report;
};

std::string sha256_hex(std::string_view data);

/// Parses and validates. Unknown fields are rejected (Error(Parse)).
MachineFile parse_machine(const std::string& text);
MachineFile load_machine(const std::string& path);

/// Pretty-printed JSON; `kind` may be "tag" for morphic specs.
std::string machine_to_json(const Machine& m, const std::string& kind = "");

/// Output sequence of the machine, bound to the file hash.
SequenceSource source_for(const MachineFile& file);

/// Stream source bound to the SHA-256 of its spec (or of the file bytes).
SequenceSource bound_stream_source(const DigitStreamSpec& spec, std::uint64_t file_first_index = 0);

/// σ1 ("xi1"), σ2 ("squares", alias "sigma2"), Thue–Morse ("tm-morphic").
MorphicSpec catalog_morphic(const std::string& name);

struct CatalogEntry {
  std::string name;
  std::string kind;
  std::string description;
};

const std::vector<CatalogEntry>& catalog_entries();
MachineFile catalog_machine(const std::string& name);

}  // namespace autoseq
