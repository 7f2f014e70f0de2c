#pragma once

#include <json.hpp>

#include "sepalg/gset.hpp"
#include "sepalg/structure_algebra.hpp"

namespace sepalg {

// Reports and files use insertion-ordered JSON so emitted bytes are stable.
using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);

// {"kind":"prime","p":5} | {"kind":"extension","p":2,"deg":2,"modulus":[1,1,1]}
// | {"kind":"rationals"}
FieldRef field_from_json(const Json& j);
Json field_to_json(const FieldRef& f);

// {"degree": n, "generators": [[one-line perm] | "cycles", ...], "name"?}
GroupRef group_from_json(const Json& j, size_t capacity = 200000);
Json group_to_json(const GroupRef& g);

// Group references are inline objects or path strings relative to base_dir.
GroupRef group_from_ref(const Json& j, const std::string& base_dir, size_t capacity = 200000);

// {"field":…, "dim":n, "basis":[labels], "unit":[coeffs], "structure":
//  [[i,j,k,"coeff"],…], "grading":[0/1]?, "action":{"group":ref,
//  "generators":[matrix,…]}?}; coefficients are decimal strings, 0-based.
StructureAlgebra algebra_from_json(const Json& j, const std::string& base_dir = "");
Json algebra_to_json(const StructureAlgebra& a);

// {"group": ref, "points": [labels], "action": {"0": perm, ...} | [perm, ...]}
GSet gset_from_json(const Json& j, const std::string& base_dir = "");
Json gset_to_json(const GSet& x);

Scalar scalar_from_json(const FieldRef& f, const Json& j);
Json scalar_to_json(const Scalar& s);

Perm perm_from_json(const Json& j, uint32_t degree);

}  // namespace sepalg
