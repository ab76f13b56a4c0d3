#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ofs/model.hpp"
#include "ofs/prototype.hpp"

namespace ofs {

// Text format, one statement per line (statements may continue while a
// brace or parenthesis is open, after a trailing `|` or `,`, or when the
// next line starts with `|`):
//
//   ofs-model <name> levels=<n+1>
//   terminals: tok1 tok2 ...
//   level <i>:
//     <Name> => <regex>              (i > 0)
//     <Name> = { "t1 t2", "" }       (i = 0, .ofs)
//     <Name> = / pattern / | ...     (i = 0, .ofsp)
//
// `#` starts a comment on blank-prefixed lines and after rule text.
// Parsing checks syntax only; use validate_model for semantics.
Model parse_model(std::string_view text);
PrototypeModel parse_prototype(std::string_view text);

// Canonical rendering: levels top-down, rules in model order, level-0
// strings sorted, regexes printed as stored.
std::string serialize_model(const Model& model);
std::string serialize_prototype(const PrototypeModel& proto);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Model load_model(const std::filesystem::path& path);
PrototypeModel load_prototype(const std::filesystem::path& path);

}  // namespace ofs
