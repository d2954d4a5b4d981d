#pragma once

#include <string_view>

#include <json.hpp>

#include "varinterp/couples.hpp"
#include "varinterp/grid.hpp"
#include "varinterp/rearrange.hpp"
#include "varinterp/varleb.hpp"

namespace varinterp {

using Json = nlohmann::json;

// Readers throw ConfigError on malformed input.

/// {"atoms": [[value, mass], ...]}
AtomFunction atoms_from_json(const Json& j);
/// {"grid": {"V": int, "spo": int}, "values": [...]}
SampledFunction sampled_from_json(const Json& j);
/// {"kind": "l1_linf"} | {"kind": "weighted_seq", "w0": [...], "w1": [...]}
/// | {"kind": "finite_generic", "norm0": {"p": x|"inf", "weights": [...]}, "norm1": {...}}
Couple couple_from_json(const Json& j);
/// Atoms for l1_linf, else {"vector": [...]} or a bare array.
Element element_from_json(const Couple& couple, const Json& j);
/// {"matrix": [[...]], "M0": x, "M1": y}
LinearOperatorSpec operator_from_json(const Json& j);
/// {"V": int, "spo": int}
HaarGrid grid_from_json(const Json& j);
/// "V=16,spo=32"; either key may be omitted.
HaarGrid parse_grid_spec(std::string_view spec, HaarGrid defaults = {16, 32});

/// Parses `text` as JSON, or reads it as a file path when it is not JSON.
Json load_json_argument(const std::string& text);

Json to_json(const RearrangementProfile& profile);
Json to_json(const HaarGrid& grid);

}  // namespace varinterp
