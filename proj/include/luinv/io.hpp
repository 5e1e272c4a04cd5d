// io.hpp: JSON forms of states and matrices.
//
// State schema: {"d": <int>, "amplitudes": [[[re, im], ...], ...]}, row index =
// subsystem-A basis index, column = subsystem-B basis index.

#pragma once

#include "luinv/state.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace luinv {

using Json = nlohmann::ordered_json;

// Throws BadShape / NotNormalized from make_state and BadParams for schema errors.
BipartiteState state_from_json(const Json& j);
Json state_to_json(const BipartiteState& state);

// [[[re, im], ...], ...]
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// Serializes with every floating-point number printed to 17 significant
/// digits (%.17g). `indent` < 0 gives the compact single-line form.
std::string dump_json(const Json& j, int indent = -1);

}  // namespace luinv
