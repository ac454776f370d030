#pragma once

// JSON forms of the library's artifacts. Rationals are always "num/den"
// strings; object keys are emitted in sorted order, so equal inputs give
// byte-identical documents.

#include <string>
#include <vector>

#include "json.hpp"
#include "rankineq/access_structure.hpp"
#include "rankineq/ineq_gen.hpp"
#include "rankineq/lp_bounds.hpp"
#include "rankineq/seed_matrix.hpp"
#include "rankineq/verifier.hpp"

namespace rankineq {

using Json = nlohmann::json;

// {"t", "char_condition", "terms": [{"coeff", "vars"}], "provenance"} plus
// "original": {"scale", "lhs", "rhs"} holding the uncleared two-sided form.
Json inequality_to_json(const EntropyInequality& ineq);
// Throws ParseError. "original" is optional.
EntropyInequality inequality_from_json(const Json& j);

// Indices are 1-based.
Json seed_to_json(const SeedMatrix& seed);
Json pair_to_json(const SeedMatrix& seed, const EntropyInequality& nondividing, const EntropyInequality& dividing);
// Accepts a single inequality, an array of them, or an object with an
// "inequalities" array.
std::vector<EntropyInequality> inequalities_from_json(const Json& j);

Json access_structure_to_json(const AccessStructure& s);
AccessStructure access_structure_from_json(const Json& j);

// {"A1": "a1", ..., "C": "c"}
RoleMap role_map_from_json(const Json& j);
Json role_map_to_json(const RoleMap& m);

Json assignment_to_json(const Assignment& a);
Json check_report_to_json(const CheckReport& r);
Json campaign_to_json(const EntropyInequality& ineq, const CampaignSummary& s);

Json lp_report_to_json(const LpReport& r, const std::vector<std::string>& ground, bool include_primal);

Json scheme_report_to_json(const LinearScheme& s, const SchemeSimulationReport& r);

std::string dump_json(const Json& j);
// Throws ParseError with the parser's message.
Json parse_json(const std::string& text);

}  // namespace rankineq
