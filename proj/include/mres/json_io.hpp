#pragma once

// JSON forms of polynomials, states, density operators, constellations,
// verdicts and classification reports.

#include <json.hpp>

#include "mres/builders.hpp"
#include "mres/linkpoly.hpp"
#include "mres/resistance.hpp"
#include "mres/septest.hpp"

namespace mres {

using Json = nlohmann::ordered_json;

/// {"rings": N, "terms": [["a","b"], ...]}; ring letter x is index x - 'a'.
Json polynomial_to_json(const LinkPolynomial& p);
LinkPolynomial polynomial_from_json(const Json& j);

/// {"dims": [...], "amps": [{"label": "01", "re": ., "im": .}, ...],
///  "environment": [...]}. Sites wider than 36 use "digits": [..] instead
/// of "label". "environment" is omitted when empty.
Json state_to_json(const State& s);
State state_from_json(const Json& j);

/// {"sites": [...], "dims": [...], "support": [...], "matrix": [[{re,im}]]}.
Json density_to_json(const DensityOperator& rho);

Json constellation_to_json(const Constellation& c);
Constellation constellation_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Json profile_to_json(const ResistanceProfile& p);
Json classify_to_json(const ClassifyResult& r, const std::string& name);
Json census_to_json(const LinkClassCensus& c);

}  // namespace mres
