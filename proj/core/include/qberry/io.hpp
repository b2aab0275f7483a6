#pragma once

// JSON forms of the library types. Parsers throw Error(InvalidInput) on
// malformed documents; numbers are written with full double precision so
// every writer output parses back to the same value.

#include <nlohmann/json.hpp>

#include "qberry/berry.hpp"
#include "qberry/majorana.hpp"
#include "qberry/operators.hpp"
#include "qberry/states.hpp"

namespace qberry::io {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"amps": [[re, im], [re, im], [re, im]]}
Json state_to_json(const QutritState& psi);
/// Accepts any nonzero amplitude vector and normalizes it.
QutritState state_from_json(const Json& j);

/// {"entries": 3x3 array of [re, im]}
Json operator_to_json(const Operator3& op);
Operator3 operator_from_json(const Json& j);

/// {"theta": real, "phi": real}
Json star_to_json(const Star& s);
Star star_from_json(const Json& j);
/// {"stars": [Star, Star]}
Json star_set_to_json(const StarSet& s);
StarSet star_set_from_json(const Json& j);

/// {"states": [State, ...]}
Json loop_to_json(const StateLoop& loop);
StateLoop loop_from_json(const Json& j);

/// {"gamma", "gamma0", "gammaC", "class", "quantized": 0 | pi | null}
Json phase_report_to_json(const PhaseReport& r);
PhaseReport phase_report_from_json(const Json& j);

/// Parses text; JSON syntax errors become Error(InvalidInput).
Json parse(const std::string& text);

}  // namespace qberry::io
