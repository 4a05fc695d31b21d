#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "twext/errors.hpp"
#include "twext/grp.hpp"
#include "twext/hirsch.hpp"

namespace twext::cli {

/// Malformed JSON input; `pointer` is the JSON pointer of the offending field.
class InputError : public DomainError {
 public:
  InputError(std::string pointer, const std::string& msg)
      : DomainError(pointer + ": " + msg), pointer(std::move(pointer)) {}
  std::string pointer;
};

/// Runs one subcommand.  args excludes the program name.  Returns 0 on
/// success, 1 on domain or input errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A builtin expression, a path to a group JSON file, or inline group JSON.
FiniteGroup load_group(const std::string& arg);
FiniteGroup group_from_json(const nlohmann::json& j, const std::string& ptr = "");

/**
 * Descriptor JSON, by "kind":
 *   finite        {"order": n}
 *   free_abelian  {"rank": d}
 *   atom          {"zinv": p} or {"label", "hirsch": int|"inf",
 *                  "cardinality": int|"inf"|"unknown", "flags": {...}}
 *   ext           {"normal": D, "quotient": D}
 *   quotient      {"group": D, "normal": D}
 *   wreath        {"K": D, "H": D}
 *   direct_sum    {"summands": [D, ...]}
 * Atom flags use the keys fg, vn, vp, ea with true, false or null.
 */
Descriptor descriptor_from_json(const nlohmann::json& j, const std::string& ptr = "");
/// A path to a descriptor JSON file or inline JSON.
Descriptor load_descriptor(const std::string& arg);

}  // namespace twext::cli
