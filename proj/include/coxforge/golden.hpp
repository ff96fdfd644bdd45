#pragma once

// Embedded reference tables (data/golden_tables.json, compiled in at build time).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coxforge/multigraded_ring.hpp"
#include "coxforge/numeric.hpp"

namespace coxforge::golden {

using NamedExponents = std::map<std::string, std::int64_t>;

struct Generator {
  std::string name;
  NamedExponents monomial;
};

struct Relation {
  NamedExponents left;
  NamedExponents right;
};

struct Term {
  Rational coefficient;
  NamedExponents monomial;
};

using TermList = std::vector<Term>;

struct Case {
  std::string key;
  std::string family;
  int n = 0;
  std::vector<std::string> variables;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  std::vector<Relation> alternative_relations;
  std::vector<TermList> cuts;
  std::vector<std::size_t> principal_cuts;
  std::optional<NamedExponents> common_factor;
  TermList candidate_relation;
};

struct Counterexample {
  std::vector<int> branches;
  TermList figure_relation;
  std::vector<std::string> displayed_ring_variables;
  std::string displayed_relation;
  int start_node = 0;
  std::int64_t start_multiple = 0;
  int step_node = 0;
  std::int64_t expected_dim = 0;
  std::int64_t actual_dim = 0;
};

std::string_view raw_json();
bool has_case(const std::string& key);
const Case& find_case(const std::string& key);
const Counterexample& counterexample();

/// Exponents over `names`; throws if a name is not in the table.
Monomial to_monomial(const NamedExponents& e, const std::vector<std::string>& names);
Polynomial to_polynomial(const TermList& terms, const std::vector<std::string>& names);

}  // namespace coxforge::golden
