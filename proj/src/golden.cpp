#include "coxforge/golden.hpp"

#include <algorithm>

#include <json.hpp>

#include "coxforge/errors.hpp"

namespace coxforge::detail {
extern const std::string_view kGoldenTablesJson;
}

namespace coxforge::golden {

namespace {

using nlohmann::json;

NamedExponents read_exponents(const json& j) {
  NamedExponents out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<std::int64_t>();
  return out;
}

TermList read_terms(const json& j) {
  TermList out;
  for (const auto& t : j) out.push_back({Rational(t.at("coefficient").get<std::int64_t>()), read_exponents(t.at("monomial"))});
  return out;
}

std::vector<Relation> read_relations(const json& j) {
  std::vector<Relation> out;
  for (const auto& r : j) out.push_back({read_exponents(r.at("left")), read_exponents(r.at("right"))});
  return out;
}

struct Tables {
  std::map<std::string, Case> cases;
  Counterexample counter;
};

const Tables& tables() {
  static const Tables t = [] {
    Tables out;
    const json doc = json::parse(detail::kGoldenTablesJson);
    for (const auto& [key, c] : doc.at("cases").items()) {
      Case gc;
      gc.key = key;
      gc.family = c.at("family").get<std::string>();
      gc.n = c.at("n").get<int>();
      gc.variables = c.at("variables").get<std::vector<std::string>>();
      for (const auto& g : c.at("generators")) gc.generators.push_back({g.at("name").get<std::string>(), read_exponents(g.at("monomial"))});
      gc.relations = read_relations(c.at("relations"));
      gc.alternative_relations = read_relations(c.at("alternative_relations"));
      for (const auto& cut : c.at("cuts")) gc.cuts.push_back(read_terms(cut));
      gc.principal_cuts = c.at("principal_cuts").get<std::vector<std::size_t>>();
      if (c.contains("common_factor")) gc.common_factor = read_exponents(c.at("common_factor"));
      gc.candidate_relation = read_terms(c.at("candidate_relation"));
      out.cases.emplace(key, std::move(gc));
    }
    const auto& ce = doc.at("counterexample");
    out.counter.branches = ce.at("branches").get<std::vector<int>>();
    out.counter.figure_relation = read_terms(ce.at("figure_relation"));
    out.counter.displayed_ring_variables = ce.at("displayed_ring_variables").get<std::vector<std::string>>();
    out.counter.displayed_relation = ce.at("displayed_relation").get<std::string>();
    out.counter.start_node = ce.at("start_degree").at("node").get<int>();
    out.counter.start_multiple = ce.at("start_degree").at("multiple").get<std::int64_t>();
    out.counter.step_node = ce.at("step").at("node").get<int>();
    out.counter.expected_dim = ce.at("expected_dim").get<std::int64_t>();
    out.counter.actual_dim = ce.at("actual_dim").get<std::int64_t>();
    return out;
  }();
  return t;
}

}  // namespace

std::string_view raw_json() { return detail::kGoldenTablesJson; }

bool has_case(const std::string& key) { return tables().cases.count(key) > 0; }

const Case& find_case(const std::string& key) {
  auto it = tables().cases.find(key);
  if (it == tables().cases.end()) throw ParameterError("no reference table for case " + key);
  return it->second;
}

const Counterexample& counterexample() { return tables().counter; }

Monomial to_monomial(const NamedExponents& e, const std::vector<std::string>& names) {
  Monomial m = Monomial::one(names.size());
  for (const auto& [name, exp] : e) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParameterError("reference monomial uses unknown variable " + name);
    m.exponents[static_cast<std::size_t>(it - names.begin())] += exp;
  }
  return m;
}

Polynomial to_polynomial(const TermList& terms, const std::vector<std::string>& names) {
  Polynomial p(names.size());
  for (const auto& t : terms) p.add_term(to_monomial(t.monomial, names), t.coefficient);
  return p;
}

}  // namespace coxforge::golden
