#include "coxforge/multigraded_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "coxforge/errors.hpp"

namespace coxforge {

MultiDegree MultiDegree::unit(std::size_t n, std::size_t i, std::int64_t k) {
  if (i >= n) throw ParameterError("basis index out of range");
  MultiDegree d = zero(n);
  d[i] = k;
  return d;
}

bool MultiDegree::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t v) { return v == 0; });
}

bool MultiDegree::is_nef() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t v) { return v >= 0; });
}

MultiDegree& MultiDegree::operator+=(const MultiDegree& o) {
  if (o.size() != size()) throw ParameterError("degree length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o[i];
  return *this;
}

MultiDegree& MultiDegree::operator-=(const MultiDegree& o) {
  if (o.size() != size()) throw ParameterError("degree length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o[i];
  return *this;
}

MultiDegree operator*(std::int64_t k, MultiDegree a) {
  for (auto& v : a.coords) v *= k;
  return a;
}

std::string to_string(const MultiDegree& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ')';
  return os.str();
}

Monomial::Monomial(std::vector<std::int64_t> e) : exponents(std::move(e)) {
  for (auto v : exponents)
    if (v < 0) throw ParameterError("negative exponent in monomial");
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::int64_t power) {
  Monomial m = one(nvars);
  m.exponents.at(i) = power;
  return m;
}

std::int64_t Monomial::total_degree() const { return std::accumulate(exponents.begin(), exponents.end(), std::int64_t{0}); }

bool Monomial::is_one() const {
  return std::all_of(exponents.begin(), exponents.end(), [](std::int64_t v) { return v == 0; });
}

bool Monomial::divides(const Monomial& other) const { return lattice::dominates(other.exponents, exponents); }

Monomial Monomial::quotient(const Monomial& other) const {
  if (!other.divides(*this)) throw ParameterError("monomial quotient is not exact");
  Monomial q = *this;
  for (std::size_t i = 0; i < size(); ++i) q.exponents[i] -= other.exponents[i];
  return q;
}

Monomial Monomial::pow(std::int64_t k) const {
  Monomial r = *this;
  for (auto& v : r.exponents) v *= k;
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw ParameterError("monomial length mismatch");
  Monomial r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.exponents[i] += b.exponents[i];
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.exponents[i] = std::min(a.exponents[i], b.exponents[i]);
  return r;
}

std::size_t Grading::index_of(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw ParameterError("unknown variable " + name);
  return static_cast<std::size_t>(it - variables.begin());
}

MultiDegree Grading::degree_of_variable(std::size_t v) const { return MultiDegree(degree_matrix.column(v)); }

MultiDegree degree_of(const Monomial& m, const Grading& g) {
  if (m.size() != g.num_variables())
    throw ParameterError("monomial has " + std::to_string(m.size()) + " exponents, grading has " +
                         std::to_string(g.num_variables()) + " variables");
  MultiDegree d = MultiDegree::zero(g.rank());
  for (std::size_t r = 0; r < g.rank(); ++r)
    for (std::size_t v = 0; v < m.size(); ++v) d[r] += g.degree_matrix(r, v) * m.exponents[v];
  return d;
}

std::string format_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names.at(i);
    if (m.exponents[i] > 1) out += '^' + std::to_string(m.exponents[i]);
  }
  return out.empty() ? "1" : out;
}

Monomial parse_monomial(const std::string& text, const std::vector<std::string>& names) {
  Monomial m = Monomial::one(names.size());
  if (text == "1") return m;
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::int64_t power = 1;
    const auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    if (caret != std::string::npos) power = std::stoll(factor.substr(caret + 1));
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParameterError("unknown variable '" + name + "' in " + text);
    m.exponents[static_cast<std::size_t>(it - names.begin())] += power;
  }
  return m;
}

Polynomial Polynomial::from_monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw ParameterError("term has the wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial operator*(const Polynomial& a, const Monomial& m) {
  Polynomial r(a.nvars_);
  for (const auto& [t, c] : a.terms_) r.terms_.emplace(t * m, c);
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& a) {
  Polynomial r(a.nvars_);
  if (c == 0) return r;
  for (const auto& [t, v] : a.terms_) r.terms_.emplace(t, c * v);
  return r;
}

Monomial Polynomial::content() const {
  if (terms_.empty()) return Monomial::one(nvars_);
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = gcd(g, m);
  return g;
}

Polynomial Polynomial::divided_by(const Monomial& m) const {
  Polynomial r(nvars_);
  for (const auto& [t, c] : terms_) r.terms_.emplace(t.quotient(m), c);
  return r;
}

std::optional<MultiDegree> homogeneous_degree(const Polynomial& p, const Grading& g) {
  std::optional<MultiDegree> d;
  for (const auto& [m, c] : p.terms()) {
    MultiDegree dm = degree_of(m, g);
    if (d && *d != dm) return std::nullopt;
    d = std::move(dm);
  }
  return d;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Highest terms first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (mag != 1 || m.is_one()) {
      out += to_string(mag);
      if (!m.is_one()) out += '*';
    }
    if (!m.is_one()) out += format_monomial(m, names);
  }
  return out;
}

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
  std::int64_t wa = 0, wb = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    wa += weights[i] * a.exponents[i];
    wb += weights[i] * b.exponents[i];
  }
  if (wa != wb) return wa > wb;
  // canonical_less already ranks by total degree first.
  return b < a;
}

RingPresentation RingPresentation::make(Grading g, std::vector<Polynomial> relations, std::vector<Monomial> leading) {
  if (relations.size() != leading.size()) throw ParameterError("one leading monomial per relation is required");
  RingPresentation pres;
  pres.order.weights.assign(g.num_variables(), 0);
  for (const auto& lm : leading)
    for (std::size_t i = 0; i < lm.size(); ++i)
      if (lm.exponents[i] > 0) pres.order.weights[i] = 1;
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto& rel = relations[k];
    if (rel.num_variables() != g.num_variables()) throw ParameterError("relation over the wrong variable table");
    if (!homogeneous_degree(rel, g)) throw ParameterError("relation is not homogeneous");
    if (rel.coefficient(leading[k]) != 1) throw ParameterError("leading monomial must occur with coefficient 1");
    for (const auto& [m, c] : rel.terms())
      if (m != leading[k] && !pres.order.greater(leading[k], m))
        throw ParameterError("leading monomial is not maximal in its relation");
  }
  pres.grading = std::move(g);
  pres.relations = std::move(relations);
  pres.leading_monomials = std::move(leading);
  return pres;
}

RingPresentation RingPresentation::free(Grading g) {
  RingPresentation pres;
  pres.order.weights.assign(g.num_variables(), 0);
  pres.grading = std::move(g);
  return pres;
}

namespace {

struct ReducedSystem {
  IntegerMatrix matrix;
  std::vector<std::size_t> kept;
};

ReducedSystem drop_variables(const Grading& g, const std::vector<std::size_t>& zero_variables) {
  ReducedSystem rs;
  for (std::size_t v = 0; v < g.num_variables(); ++v)
    if (std::find(zero_variables.begin(), zero_variables.end(), v) == zero_variables.end()) rs.kept.push_back(v);
  rs.matrix = g.degree_matrix.select_columns(rs.kept);
  return rs;
}

Monomial lift(const lattice::Vector& x, const ReducedSystem& rs, std::size_t nvars) {
  Monomial m = Monomial::one(nvars);
  for (std::size_t j = 0; j < rs.kept.size(); ++j) m.exponents[rs.kept[j]] = x[j];
  return m;
}

}  // namespace

SolutionSet solve_degree_system(const Grading& g, const MultiDegree& d, const std::vector<std::size_t>& zero_variables,
                                const lattice::SearchLimits& limits) {
  if (d.size() != g.rank()) throw ParameterError("degree length does not match the grading");
  const ReducedSystem rs = drop_variables(g, zero_variables);
  SolutionSet out;
  auto lift_all = [&](const std::vector<lattice::Vector>& xs, std::vector<Monomial>& into) {
    for (const auto& x : xs) into.push_back(lift(x, rs, g.num_variables()));
    std::sort(into.begin(), into.end());
  };
  try {
    lift_all(lattice::minimal_solutions(rs.matrix, d.coords, limits), out.particular);
    lift_all(lattice::hilbert_basis(rs.matrix, limits), out.recession);
  } catch (const lattice::SearchCapError& e) {
    std::vector<lattice::Vector> lifted;
    for (const auto& x : e.partial()) lifted.push_back(lift(x, rs, g.num_variables()).exponents);
    throw lattice::SearchCapError(e.what(), std::move(lifted));
  }
  return out;
}

std::vector<Monomial> monomials_of_degree(const Grading& g, const MultiDegree& d, std::int64_t total_degree_cap,
                                          const std::vector<std::size_t>& zero_variables) {
  if (d.size() != g.rank()) throw ParameterError("degree length does not match the grading");
  const ReducedSystem rs = drop_variables(g, zero_variables);
  const std::vector<Rational> ones(rs.kept.size(), Rational(1));
  std::vector<Monomial> out;
  for (const auto& x : lattice::bounded_solutions(rs.matrix, d.coords, ones, Rational(total_degree_cap)))
    out.push_back(lift(x, rs, g.num_variables()));
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial normal_form(const Polynomial& p, const RingPresentation& pres) {
  if (pres.relations.empty()) return p;
  Polynomial cur = p;
  while (true) {
    // Rewrite the order-largest reducible term; this keeps the process well founded.
    const Monomial* target = nullptr;
    std::size_t rule = 0;
    for (const auto& [m, c] : cur.terms()) {
      for (std::size_t k = 0; k < pres.leading_monomials.size(); ++k) {
        if (!pres.leading_monomials[k].divides(m)) continue;
        if (!target || pres.order.greater(m, *target)) {
          target = &m;
          rule = k;
        }
        break;
      }
    }
    if (!target) return cur;
    const Monomial m = *target;
    const Rational c = cur.coefficient(m);
    const Monomial q = m.quotient(pres.leading_monomials[rule]);
    cur -= (c * pres.relations[rule]) * q;
  }
}

std::vector<Monomial> graded_piece_basis(const RingPresentation& pres, const MultiDegree& d, std::int64_t total_degree_cap,
                                         const std::vector<std::size_t>& zero_variables) {
  if (total_degree_cap < 0) throw ParameterError("total degree cap must be nonnegative");
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(pres.grading, d, total_degree_cap, zero_variables)) {
    bool standard = true;
    for (const auto& lm : pres.leading_monomials)
      if (lm.divides(m)) standard = false;
    if (standard) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace coxforge
