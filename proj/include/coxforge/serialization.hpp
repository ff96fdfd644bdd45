#pragma once

// JSON forms of the library's values. Rationals travel as decimal strings.

#include <json.hpp>

#include "coxforge/cox_candidate.hpp"
#include "coxforge/invariant_ring.hpp"
#include "coxforge/multigraded_ring.hpp"
#include "coxforge/reduction_engine.hpp"
#include "coxforge/resolution_graph.hpp"

namespace coxforge::json {

using Json = nlohmann::ordered_json;

Json graph_to_json(const ResolutionGraph& g);
/// Accepts the document graph_to_json writes; the label is optional.
ResolutionGraph graph_from_json(const Json& j);

Json matrix_to_json(const IntegerMatrix& m);
Json degree_to_json(const MultiDegree& d);
Json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j, std::size_t nvars);
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, std::size_t nvars);

Json presentation_to_json(const RingPresentation& pres);
Json report_to_json(const VerificationReport& r);
Json factorization_to_json(const FactorizationResult& f, const std::vector<std::string>& names);
Json trace_to_json(const EquivalenceAudit& a);
Json base_case_to_json(const BaseCaseAudit& b, const std::vector<std::string>& names);

}  // namespace coxforge::json
