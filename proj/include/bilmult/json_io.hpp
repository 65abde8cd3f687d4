// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON form of decompositions:
//   {"q": {"p": P, "chain": [...]}, "n": N, "modulus": [c0..c_{n-1}], "rank": R,
//    "triples": [{"a": [...], "b": [...], "c": [...]}, ...]}
// Coefficients are integers over a prime base and nested arrays over a tower base.
// A decomposition whose extension has several steps over its base carries a
// "tower" array of moduli in place of "modulus".

#include <string>

#include <json.hpp>

#include "bilmult/decomposition.hpp"

namespace bilmult {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldDescriptor& F);
FieldDescriptor field_from_json(const Json& j);

Json element_to_json(const FieldDescriptor& F, const Element& x);
Element element_from_json(const FieldDescriptor& F, const Json& j);

Json decomposition_to_json_value(const BilinearDecomposition& d);
std::string decomposition_to_json(const BilinearDecomposition& d);

BilinearDecomposition decomposition_from_json_value(const Json& j, bool skip_verify = false);
// Throws ParseError on malformed JSON and ValidationError on any broken invariant,
// including a decomposition that fails verification (unless skip_verify).
BilinearDecomposition decomposition_from_json(const std::string& text, bool skip_verify = false);

}  // namespace bilmult
