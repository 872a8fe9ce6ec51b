#pragma once

// JSON potential files:
//   {"family": "...", "params": {...}, "support": [x_min, x_max] | "infinite",
//    "coupling": "constant" | {"k_squared": c}, "truncation_radius": r}
// Complex values are either a number or [re, im]. Errors name the
// offending field path, e.g. "params.terms[2].c".

#include <string>
#include <string_view>

#include "wavetm/potential.hpp"

namespace wavetm {

/// Parse a spec document. Throws ParseError (malformed JSON or wrong types)
/// or InvalidInput (bad values), with the field path in the message.
PotentialSpec parse_spec(std::string_view json);

/// Read and parse a spec file. Throws IoError when unreadable.
PotentialSpec load_spec(const std::string& path);

/// Canonical serialization; parse_spec(spec_to_json(s)) reproduces s.
std::string spec_to_json(const PotentialSpec& spec, int indent = 2);

}  // namespace wavetm
