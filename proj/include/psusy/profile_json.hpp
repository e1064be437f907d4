#pragma once

// JSON form of AlphaProfile:
//   {"p": 2, "kind": "explicit", "alphas": [0.5, 1.0, 1.0]}
//   {"p": 3, "kind": "optimal-constant", "alpha_p": 1.0}
//   {"p": 3, "kind": "z-dependent-exact", "alpha_p": 1.0, "m": 2}
// Every listed field is required for its kind and no other field is accepted.
// For "explicit", alphas must hold exactly p + 1 values.

#include <string>

#include "json.hpp"
#include "psusy/coherent_state.hpp"

namespace psusy {

/// Throws Error(profile_format) on schema violations; value errors surface as
/// the AlphaProfile constructors' own errors.
AlphaProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const AlphaProfile& profile);

AlphaProfile load_profile(const std::string& path);

} // namespace psusy
