#include "coxforge/serialization.hpp"

#include "coxforge/errors.hpp"

namespace coxforge::json {

namespace {

Json rational_pair(const Rational& q) {
  return {{"numerator", numerator(q).str()}, {"denominator", denominator(q).str()}};
}

Rational rational_from(const Json& j) {
  try {
    return Rational(Integer(j.at("numerator").get<std::string>()), Integer(j.at("denominator").get<std::string>()));
  } catch (const std::runtime_error& e) {
    throw ParameterError(std::string("bad coefficient: ") + e.what());
  }
}

}  // namespace

Json graph_to_json(const ResolutionGraph& g) {
  Json j;
  j["label"] = g.label();
  j["nodes"] = g.nodes();
  j["edges"] = Json::array();
  for (const auto& [a, b] : g.edges()) j["edges"].push_back({a, b});
  j["self_intersection"] = Json::object();
  for (const auto& [id, e] : g.self_intersection()) j["self_intersection"][std::to_string(id)] = e;
  j["leaf_variables"] = Json::array();
  for (const auto& lv : g.leaf_variables()) j["leaf_variables"].push_back({{"name", lv.name}, {"node", lv.node}});
  return j;
}

ResolutionGraph graph_from_json(const Json& j) {
  try {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::map<int, int> self;
    for (const auto& [k, v] : j.at("self_intersection").items()) self[std::stoi(k)] = v.get<int>();
    std::vector<LeafVariable> leaves;
    for (const auto& lv : j.at("leaf_variables")) leaves.push_back({lv.at("name").get<std::string>(), lv.at("node").get<int>()});
    return ResolutionGraph(j.at("nodes").get<std::vector<int>>(), std::move(edges), std::move(self), std::move(leaves),
                           j.value("label", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed graph document: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParameterError(std::string("malformed graph document: ") + e.what());
  }
}

Json matrix_to_json(const IntegerMatrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(m.row(r));
  return j;
}

Json degree_to_json(const MultiDegree& d) { return d.coords; }

Json monomial_to_json(const Monomial& m) { return {{"exponents", m.exponents}}; }

Monomial monomial_from_json(const Json& j, std::size_t nvars) {
  std::vector<std::int64_t> e;
  try {
    e = j.at("exponents").get<std::vector<std::int64_t>>();
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed monomial: ") + ex.what());
  }
  if (e.size() != nvars) throw ParameterError("monomial has the wrong number of exponents");
  return Monomial(std::move(e));
}

Json polynomial_to_json(const Polynomial& p) {
  Json j = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json t = rational_pair(it->second);
    t["monomial"] = monomial_to_json(it->first);
    j.push_back(std::move(t));
  }
  return j;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw ParameterError("polynomial must be an array of terms");
  Polynomial p(nvars);
  for (const auto& t : j) {
    try {
      p.add_term(monomial_from_json(t.at("monomial"), nvars), rational_from(t));
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(std::string("malformed term: ") + e.what());
    }
  }
  return p;
}

Json presentation_to_json(const RingPresentation& pres) {
  Json j;
  j["variables"] = pres.grading.variables;
  j["degree_matrix"] = matrix_to_json(pres.grading.degree_matrix);
  j["relations"] = Json::array();
  for (std::size_t k = 0; k < pres.relations.size(); ++k) {
    j["relations"].push_back({{"text", format_polynomial(pres.relations[k], pres.grading.variables)},
                              {"polynomial", polynomial_to_json(pres.relations[k])},
                              {"leading", monomial_to_json(pres.leading_monomials[k])}});
  }
  return j;
}

Json report_to_json(const VerificationReport& r) {
  auto mono = [&](const std::optional<Monomial>& m) -> Json {
    return m ? Json(format_monomial(*m, r.variables)) : Json(nullptr);
  };
  Json j;
  j["case"] = r.case_name;
  j["variables"] = r.variables;
  j["generators"] = Json::array();
  for (const auto& g : r.generators)
    j["generators"].push_back({{"name", g.name}, {"computed", mono(g.computed)}, {"expected", mono(g.expected)}, {"match", g.match}});
  j["relations"] = Json::array();
  for (const auto& rel : r.relations)
    j["relations"].push_back({{"computed", rel.computed}, {"expected", rel.expected}, {"match", rel.match}});
  j["notes"] = r.notes;
  j["ok"] = r.ok;
  return j;
}

Json factorization_to_json(const FactorizationResult& f, const std::vector<std::string>& names) {
  return {{"substituted", format_polynomial(f.substituted, names)},
          {"common_factor", format_monomial(f.common_factor, names)},
          {"residual", format_polynomial(f.residual, names)},
          {"principal", f.principal},
          {"matches_candidate", f.matches_candidate}};
}

Json trace_to_json(const EquivalenceAudit& a) {
  Json j;
  j["case"] = a.case_name;
  j["initial"] = degree_to_json(a.initial);
  j["steps"] = Json::array();
  for (const auto& s : a.steps) {
    Json st;
    st["kind"] = to_string(s.step.kind);
    st["curves"] = s.step.curves;
    st["degree_after"] = degree_to_json(s.step.degree_after);
    st["expected_dim"] = s.step.expected_cokernel_dim ? Json(*s.step.expected_cokernel_dim) : Json(nullptr);
    st["actual_dim"] = s.actual ? Json(s.actual->dimension) : Json(nullptr);
    st["stabilized"] = s.actual && s.actual->stabilized;
    if (s.actual) st["cap"] = s.actual->cap;
    if (!s.unaudited_reason.empty()) st["unaudited"] = s.unaudited_reason;
    j["steps"].push_back(std::move(st));
  }
  j["terminal"] = degree_to_json(a.terminal);
  j["terminated"] = a.terminated;
  j["base_cases"] = Json::array();
  for (const auto& b : a.base_cases)
    j["base_cases"].push_back({{"leaf", b.family.leaf}, {"k", b.family.k}, {"match", b.match}});
  j["ok"] = a.ok;
  return j;
}

Json base_case_to_json(const BaseCaseAudit& b, const std::vector<std::string>& names) {
  auto list = [&](const std::vector<Monomial>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(format_monomial(m, names));
    return out;
  };
  Json j;
  j["leaf"] = b.family.leaf;
  j["k"] = b.family.k;
  j["seeds"] = list(b.family.seeds);
  j["period"] = format_monomial(b.family.period, names);
  if (b.family.closed_form_seed) j["closed_form_seed"] = format_monomial(*b.family.closed_form_seed, names);
  j["weight_bound"] = to_string(b.weight_bound);
  j["enumerated"] = list(b.enumerated);
  j["predicted"] = list(b.predicted);
  j["match"] = b.match;
  j["closed_form_match"] = b.closed_form_match;
  return j;
}

}  // namespace coxforge::json
