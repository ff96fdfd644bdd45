#include "coxforge/reduction_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "coxforge/cox_candidate.hpp"

namespace coxforge {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::SubtractCurve: return "SubtractCurve";
    case StepKind::AddCurve: return "AddCurve";
    case StepKind::AddChain: return "AddChain";
    case StepKind::ShiftToLeaf: return "ShiftToLeaf";
  }
  return "?";
}

std::int64_t default_cokernel_cap() {
  if (const char* env = std::getenv("COXFORGE_CAP")) {
    try {
      const long long v = std::stoll(env);
      if (v >= 1 && v <= kHardCokernelCap) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError(std::string("COXFORGE_CAP must be an integer in [1, ") + std::to_string(kHardCokernelCap) +
                         "], got '" + env + "'");
  }
  return kDefaultCokernelCap;
}

std::vector<int> reduction_order(const ResolutionGraph& g) {
  const StarShape shape = g.star_shape();
  if (!shape.center) return shape.branches.front();
  std::size_t last = 0;
  for (std::size_t b = 1; b < shape.branches.size(); ++b) {
    const auto& cur = shape.branches[b];
    const auto& best = shape.branches[last];
    if (cur.size() > best.size() || (cur.size() == best.size() && cur.front() > best.front())) last = b;
  }
  std::vector<int> order;
  for (std::size_t b = 0; b < shape.branches.size(); ++b)
    if (b != last) order.insert(order.end(), shape.branches[b].rbegin(), shape.branches[b].rend());
  order.push_back(*shape.center);
  order.insert(order.end(), shape.branches[last].begin(), shape.branches[last].end());
  return order;
}

MultiDegree curve_delta(const ResolutionGraph& g, const std::vector<int>& curves) {
  const IntegerMatrix im = intersection_matrix(g);
  MultiDegree d = MultiDegree::zero(g.size());
  for (int c : curves) d += MultiDegree(im.column(g.index_of(c)));
  return d;
}

namespace {

std::map<int, std::size_t> ranks_of(const std::vector<int>& order) {
  std::map<int, std::size_t> r;
  for (std::size_t i = 0; i < order.size(); ++i) r[order[i]] = i;
  return r;
}

bool is_d_type(const ResolutionGraph& g) { return g.label().size() > 1 && g.label()[0] == 'D'; }

bool carries_leaf(const ResolutionGraph& g, int node) {
  return std::any_of(g.leaf_variables().begin(), g.leaf_variables().end(), [&](const auto& lv) { return lv.node == node; });
}

ReductionStep make_step(const ResolutionGraph& g, StepKind kind, std::vector<int> curves, const MultiDegree& before,
                        int leaf = -1) {
  ReductionStep s;
  s.kind = kind;
  s.curves = std::move(curves);
  s.leaf = leaf;
  s.degree_before = before;
  const MultiDegree delta = curve_delta(g, s.curves);
  const bool subtract = kind == StepKind::SubtractCurve || kind == StepKind::ShiftToLeaf;
  s.degree_after = subtract ? before - delta : before + delta;
  s.expected_cokernel_dim = expected_cokernel_dim(s, g);
  return s;
}

void check_length(const MultiDegree& d, const ResolutionGraph& g) {
  if (d.size() != g.size())
    throw ParameterError("degree has " + std::to_string(d.size()) + " coordinates, graph has " + std::to_string(g.size()) +
                         " curves");
}

}  // namespace

ReductionTrace reduce_to_nef(const MultiDegree& d, const ResolutionGraph& g, int step_cap) {
  check_length(d, g);
  const auto order = reduction_order(g);
  ReductionTrace trace;
  trace.initial = d;
  MultiDegree cur = d;
  while (true) {
    auto neg = std::find_if(order.begin(), order.end(), [&](int v) { return cur[g.index_of(v)] < 0; });
    if (neg == order.end()) break;
    if (static_cast<int>(trace.steps.size()) >= step_cap) {
      trace.terminal = cur;
      throw StepCapError("reduce_to_nef did not finish within " + std::to_string(step_cap) + " steps", trace);
    }
    trace.steps.push_back(make_step(g, StepKind::SubtractCurve, {*neg}, cur));
    cur = trace.steps.back().degree_after;
  }
  trace.terminal = cur;
  return trace;
}

Rational s_measure(const MultiDegree& d) {
  Rational s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i == 1 || i == 2) ? Rational(d[i], 2) : Rational(d[i]);
  return s;
}

bool is_basic(const MultiDegree& d, const ResolutionGraph& g) {
  std::size_t nonzero = 0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) {
      ++nonzero;
      where = i;
    }
  if (nonzero == 0) return true;
  return nonzero == 1 && d[where] > 0 && carries_leaf(g, g.nodes()[where]);
}

ReductionTrace reduce_nef_to_basic(const MultiDegree& d, const ResolutionGraph& g, int step_cap) {
  check_length(d, g);
  if (!d.is_nef()) throw ParameterError("reduce_nef_to_basic needs a nef degree, got " + to_string(d));
  const auto order = reduction_order(g);
  const auto rank = ranks_of(order);
  const bool track_s = is_d_type(g);
  ReductionTrace trace;
  trace.initial = d;
  MultiDegree cur = d;
  if (track_s) trace.measures.push_back(s_measure(cur));

  auto push = [&](ReductionStep s) {
    if (static_cast<int>(trace.steps.size()) >= step_cap) {
      trace.terminal = cur;
      throw StepCapError("reduce_nef_to_basic did not finish within " + std::to_string(step_cap) + " steps", trace);
    }
    cur = s.degree_after;
    trace.steps.push_back(std::move(s));
  };

  while (true) {
    auto big = std::find_if(order.begin(), order.end(), [&](int v) { return cur[g.index_of(v)] >= 2; });
    if (big != order.end()) {
      push(make_step(g, StepKind::AddCurve, {*big}, cur));
      if (track_s) trace.measures.push_back(s_measure(cur));
      continue;
    }
    std::vector<int> ones;
    for (int v : order)
      if (cur[g.index_of(v)] == 1) ones.push_back(v);
    bool applied = false;
    for (std::size_t a = 0; a < ones.size() && !applied; ++a) {
      for (std::size_t b = a + 1; b < ones.size() && !applied; ++b) {
        const auto p = g.path(ones[a], ones[b]);
        const bool clear = std::all_of(p.begin() + 1, p.end() - 1, [&](int v) { return cur[g.index_of(v)] == 0; });
        if (!clear) continue;
        push(make_step(g, StepKind::AddChain, p, cur));
        if (track_s) trace.measures.push_back(s_measure(cur));
        applied = true;
      }
    }
    if (!applied) break;
  }

  // At most a single 1 is left; walk it out to a leaf.
  if (!cur.is_zero()) {
    std::size_t where = 0;
    while (cur[where] == 0) ++where;
    int p = g.nodes()[where];
    if (!carries_leaf(g, p)) {
      const StarShape shape = g.star_shape();
      int target = -1;
      if (!shape.center) {
        const auto& chain = shape.branches.front();
        const auto pos = [&](int v) { return static_cast<long>(std::find(chain.begin(), chain.end(), v) - chain.begin()); };
        for (int v : chain) {
          if (!carries_leaf(g, v)) continue;
          if (target == -1 || std::labs(pos(v) - pos(p)) < std::labs(pos(target) - pos(p))) target = v;
        }
      } else if (p == *shape.center) {
        target = order.back();
      } else {
        for (const auto& br : shape.branches)
          if (std::find(br.begin(), br.end(), p) != br.end()) target = br.back();
      }
      if (target == -1 || !carries_leaf(g, target))
        throw UnsupportedGraphError("no leaf variable to shift towards from E" + std::to_string(p));
      while (p != target) {
        const auto route = g.path(p, target);
        const int q = route[1];
        push(make_step(g, StepKind::ShiftToLeaf, g.path(q, target), cur, target));
        p = q;
      }
    }
  }
  trace.terminal = cur;
  if (!is_basic(cur, g)) throw ConsistencyError("basic reduction ended at non-basic degree " + to_string(cur));
  return trace;
}

std::optional<std::int64_t> h0_tree(const std::vector<std::int64_t>& chain_degrees) {
  if (chain_degrees.empty()) throw ParameterError("h0_tree needs a nonempty chain");
  std::int64_t total = 1;
  for (auto d : chain_degrees) {
    if (d < 0) return std::nullopt;
    total += d;
  }
  return total;
}

namespace {

// Restricted degrees of `deg` along `path`, oriented so the end with value 1 in `base` comes first.
std::optional<std::int64_t> chain_value(const ResolutionGraph& g, std::vector<int> path, const MultiDegree& base,
                                        const MultiDegree& upper, const char* what) {
  auto at = [&](const MultiDegree& d, int v) { return d[g.index_of(v)]; };
  if (!base.is_nef()) throw HypothesisError(std::string(what) + ": lower degree is not nef");
  if (at(base, path.front()) != 1) std::reverse(path.begin(), path.end());
  if (at(base, path.front()) != 1) throw HypothesisError(std::string(what) + ": no chain end with coefficient 1");
  if (at(base, path.back()) < 1) throw HypothesisError(std::string(what) + ": far chain end has coefficient 0");
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (at(base, path[i]) != 0) throw HypothesisError(std::string(what) + ": chain interior is not zero");
  std::vector<std::int64_t> restricted;
  for (int v : path) restricted.push_back(at(upper, v));
  const std::int64_t dj = at(base, path.back());
  for (std::size_t i = 0; i + 1 < restricted.size(); ++i)
    if (restricted[i] != 0) return std::nullopt;
  if (restricted.back() != dj - 1) return std::nullopt;
  return h0_tree(restricted);
}

}  // namespace

std::optional<std::int64_t> expected_cokernel_dim(const ReductionStep& step, const ResolutionGraph& g) {
  if (step.curves.empty()) throw HypothesisError("step has no curves");
  auto at = [&](const MultiDegree& d, int v) { return d[g.index_of(v)]; };
  switch (step.kind) {
    case StepKind::SubtractCurve: {
      const auto di = at(step.degree_before, step.curves.front());
      if (step.curves.size() != 1 || di >= 0)
        throw HypothesisError("SubtractCurve needs a single curve with negative coefficient (got " + std::to_string(di) + ")");
      return 0;
    }
    case StepKind::AddCurve: {
      const auto di = at(step.degree_before, step.curves.front());
      if (step.curves.size() != 1 || di < 2)
        throw HypothesisError("AddCurve needs a single curve with coefficient >= 2 (got " + std::to_string(di) + ")");
      if (!step.degree_before.is_nef()) throw HypothesisError("AddCurve needs a nef degree");
      return di - 1;
    }
    case StepKind::AddChain:
      if (step.curves.size() < 2) throw HypothesisError("AddChain needs two distinct chain ends");
      return chain_value(g, step.curves, step.degree_before, step.degree_after, "AddChain");
    case StepKind::ShiftToLeaf:
      if (step.curves.size() == 1) {
        const auto dj = at(step.degree_after, step.curves.front());
        if (dj < 2 || !step.degree_after.is_nef())
          throw HypothesisError("single-curve shift needs coefficient >= 2 after the step (got " + std::to_string(dj) + ")");
        return dj - 1;
      }
      return chain_value(g, step.curves, step.degree_after, step.degree_before, "ShiftToLeaf");
  }
  return std::nullopt;
}

CokernelProblem cokernel_problem(const RingPresentation& pres, const ResolutionGraph& g, const ReductionStep& step) {
  const Grading& gr = pres.grading;
  Monomial mu = Monomial::one(gr.num_variables());
  for (int c : step.curves) mu.exponents[gr.index_of(ResolutionGraph::curve_variable(c))] += 1;
  CokernelProblem p;
  const bool upward = step.kind == StepKind::AddCurve || step.kind == StepKind::AddChain;
  p.upper = upward ? step.degree_after : step.degree_before;
  p.lower = upward ? step.degree_before : step.degree_after;
  p.multiplier = mu;
  if (degree_of(mu, gr) != p.upper - p.lower) throw ConsistencyError("multiplier degree does not bridge the step");
  (void)g;
  return p;
}

std::vector<Rational> truncation_weights(const RingPresentation& pres) {
  const Grading& gr = pres.grading;
  std::vector<Rational> w(gr.num_variables(), Rational(1));
  std::vector<bool> curve(gr.num_variables(), false);
  for (std::size_t v = 0; v < gr.num_variables(); ++v) curve[v] = !gr.variables[v].empty() && gr.variables[v][0] == 'y';
  std::vector<bool> fixed(gr.num_variables(), false);
  for (const auto& rel : pres.relations) {
    struct TermShape {
      std::int64_t curve_weight = 0;
      std::size_t leaf = 0;
      std::int64_t leaf_exp = 0;
    };
    std::vector<TermShape> shapes;
    bool balanced = true;
    for (const auto& [m, c] : rel.terms()) {
      TermShape t;
      std::size_t leaves = 0;
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m.exponents[v] == 0) continue;
        if (curve[v]) {
          t.curve_weight += m.exponents[v];
        } else {
          ++leaves;
          t.leaf = v;
          t.leaf_exp = m.exponents[v];
        }
      }
      if (leaves != 1) balanced = false;
      shapes.push_back(t);
    }
    if (!balanced) throw ParameterError("relation terms must each contain exactly one leaf variable");
    std::int64_t top = 0;
    for (const auto& t : shapes) top = std::max(top, t.curve_weight + t.leaf_exp);
    for (const auto& t : shapes) {
      const Rational wt(top - t.curve_weight, t.leaf_exp);
      if (fixed[t.leaf] && w[t.leaf] != wt) throw ParameterError("relations impose conflicting truncation weights");
      w[t.leaf] = wt;
      fixed[t.leaf] = true;
    }
  }
  return w;
}

namespace {

Rational weight_of(const Monomial& m, const std::vector<Rational>& w) {
  Rational s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += w[i] * m.exponents[i];
  return s;
}

// Incremental sparse elimination over the rationals.
class RowReducer {
 public:
  bool add(std::map<std::size_t, Rational> row) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto pivot = pivots_.find(lead->first);
      if (pivot == pivots_.end()) {
        pivots_.emplace(lead->first, std::move(row));
        return true;
      }
      const Rational f = lead->second / pivot->second.at(lead->first);
      for (const auto& [col, val] : pivot->second) {
        auto it = row.find(col);
        const Rational nv = (it == row.end() ? Rational(0) : it->second) - f * val;
        if (nv == 0) {
          if (it != row.end()) row.erase(it);
        } else if (it == row.end()) {
          row.emplace(col, nv);
        } else {
          it->second = nv;
        }
      }
    }
    return false;
  }
  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, std::map<std::size_t, Rational>> pivots_;
};

}  // namespace

CokernelResult cokernel_dimension(const RingPresentation& pres, const CokernelProblem& problem, std::int64_t cap) {
  if (cap < 0) throw ParameterError("cap must be nonnegative");
  const Grading& gr = pres.grading;
  const auto w = truncation_weights(pres);
  CokernelResult res;
  res.cap = cap;
  if (lattice::minimal_solutions(gr.degree_matrix, problem.upper.coords).empty()) {
    res.stabilized = true;  // the whole graded piece is empty
    return res;
  }
  // Q is a module over the degree-zero monomials, generated by the minimal solutions. Once every
  // generator lies within the cap and Q vanishes on a window as wide as the heaviest degree-zero
  // generator, every heavier monomial passes through that window on its way up and so vanishes too.
  Rational window = 0;
  for (const auto& h : lattice::hilbert_basis(gr.degree_matrix)) window = std::max(window, weight_of(Monomial(h), w));
  Rational generators_top = 0;
  for (const auto& x : lattice::minimal_solutions(gr.degree_matrix, problem.upper.coords))
    generators_top = std::max(generators_top, weight_of(Monomial(x), w));

  std::map<Rational, std::map<Monomial, std::size_t>> free_by_layer;
  for (const auto& x : lattice::bounded_solutions(gr.degree_matrix, problem.upper.coords, w, Rational(cap))) {
    Monomial m(x);
    if (problem.multiplier.divides(m)) continue;
    auto& layer = free_by_layer[weight_of(m, w)];
    layer.emplace(m, layer.size());
  }
  std::map<Rational, RowReducer> reducers;
  for (const auto& rel : pres.relations) {
    const auto rdeg = homogeneous_degree(rel, gr);
    if (!rdeg) throw ConsistencyError("relation is not homogeneous");
    const Rational rw = weight_of(rel.terms().begin()->first, w);
    const MultiDegree shifted = problem.upper - *rdeg;
    for (const auto& x : lattice::bounded_solutions(gr.degree_matrix, shifted.coords, w, Rational(cap) - rw)) {
      const Monomial m(x);
      const Rational layer_w = weight_of(m, w) + rw;
      auto layer = free_by_layer.find(layer_w);
      if (layer == free_by_layer.end()) continue;
      std::map<std::size_t, Rational> row;
      for (const auto& [t, c] : rel.terms()) {
        auto col = layer->second.find(t * m);
        if (col != layer->second.end()) row[col->second] += c;
      }
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
      if (!row.empty()) reducers[layer_w].add(std::move(row));
    }
  }
  std::int64_t total = 0, in_window = 0;
  for (const auto& [wt, cols] : free_by_layer) {
    const auto r = reducers.count(wt) ? reducers.at(wt).rank() : 0;
    const auto dim = static_cast<std::int64_t>(cols.size() - r);
    total += dim;
    if (wt > cap - window) in_window += dim;
  }
  res.dimension = total;
  res.stabilized = generators_top <= cap && in_window == 0;
  return res;
}

CokernelResult stabilized_cokernel_dimension(const RingPresentation& pres, const CokernelProblem& problem,
                                             std::int64_t start_cap) {
  std::int64_t cap = std::min(start_cap, kHardCokernelCap);
  while (true) {
    const CokernelResult r = cokernel_dimension(pres, problem, cap);
    if (r.stabilized) return r;
    if (cap >= kHardCokernelCap)
      throw CokernelCapError("cokernel did not stabilise by cap " + std::to_string(cap) + " (last value " +
                                 std::to_string(r.dimension) + ")",
                             r);
    cap = std::min(kHardCokernelCap, cap + 16);
  }
}

CokernelResult cokernel_dimension(const RingPresentation& pres, const ResolutionGraph& g, const ReductionStep& step,
                                  std::int64_t cap) {
  return stabilized_cokernel_dimension(pres, cokernel_problem(pres, g, step), cap);
}

namespace {

struct QuotientShape {
  RingPresentation pres;
  std::size_t leaf_var = 0;
  int leaf_node = 0;
  std::optional<Monomial> lm;  // leading term of the relation once the leaf variable is killed
  RingPresentation restricted;
};

QuotientShape quotient_shape(const ResolutionGraph& g, int leaf) {
  QuotientShape qs{candidate_presentation(g), 0, leaf, std::nullopt, {}};
  const Grading& gr = qs.pres.grading;
  auto lv = std::find_if(g.leaf_variables().begin(), g.leaf_variables().end(), [&](const auto& l) { return l.node == leaf; });
  if (lv == g.leaf_variables().end())
    throw ParameterError("E" + std::to_string(leaf) + " carries no leaf variable in " + g.label());
  qs.leaf_var = gr.index_of(lv->name);
  qs.restricted = RingPresentation::free(gr);
  if (qs.pres.relations.empty()) return qs;
  const StarShape shape = g.star_shape();
  std::optional<std::size_t> best;
  for (std::size_t b = 0; b < shape.branches.size(); ++b) {
    if (shape.branches[b].back() == leaf) continue;
    if (!best || shape.branches[b].size() < shape.branches[*best].size()) best = b;
  }
  for (const auto& [m, c] : qs.pres.relations.front().terms()) {
    const int end = shape.branches[*best].back();
    auto owner = std::find_if(g.leaf_variables().begin(), g.leaf_variables().end(), [&](const auto& l) { return l.node == end; });
    if (m.exponents[gr.index_of(owner->name)] > 0) qs.lm = m;
  }
  Polynomial cut(gr.num_variables());
  for (const auto& [m, c] : qs.pres.relations.front().terms())
    if (m.exponents[qs.leaf_var] == 0) cut.add_term(m, c);
  qs.restricted = RingPresentation::make(gr, {cut}, {*qs.lm});
  return qs;
}

bool standard_in_quotient(const QuotientShape& qs, const Monomial& m) {
  return m.exponents[qs.leaf_var] == 0 && !(qs.lm && qs.lm->divides(m));
}

}  // namespace

BaseCaseFamily base_case_family(const ResolutionGraph& g, int leaf, std::int64_t k) {
  if (k < 1) throw ParameterError("k must be positive");
  const QuotientShape qs = quotient_shape(g, leaf);
  const Grading& gr = qs.pres.grading;
  const MultiDegree target = MultiDegree::unit(g.size(), g.index_of(leaf), k);

  // Standard monomials are those with some exponent below the leading term's; solve each slice.
  std::vector<lattice::Vector> candidates;
  if (!qs.lm) {
    for (const auto& m : solve_degree_system(gr, target, {qs.leaf_var}).particular) candidates.push_back(m.exponents);
  } else {
    for (std::size_t v = 0; v < gr.num_variables(); ++v) {
      for (std::int64_t c = 0; c < qs.lm->exponents[v]; ++c) {
        const MultiDegree rest = target - c * gr.degree_of_variable(v);
        for (const auto& m : solve_degree_system(gr, rest, {qs.leaf_var, v}).particular) {
          Monomial full = m;
          full.exponents[v] = c;
          candidates.push_back(full.exponents);
        }
      }
    }
  }
  const auto minimal = lattice::minimal_elements(candidates);
  if (minimal.empty()) throw ConsistencyError("no standard monomial of degree " + to_string(target));

  BaseCaseFamily fam;
  fam.leaf = leaf;
  fam.k = k;

  // The curve through the leaf is a line; its coordinate is the cheapest invariant avoiding the leaf variable.
  const auto periods = solve_degree_system(gr, MultiDegree::zero(g.size()), {qs.leaf_var}).recession;
  if (periods.empty()) throw ConsistencyError("no invariant avoids the leaf variable");
  fam.period = *std::min_element(periods.begin(), periods.end());

  // A minimal element can still be the rewritten form of an earlier seed times a period power.
  const auto w = truncation_weights(qs.pres);
  const Rational wp = weight_of(fam.period, w);
  std::vector<Monomial> sorted;
  for (const auto& x : minimal) sorted.emplace_back(x);
  std::sort(sorted.begin(), sorted.end(),
            [&](const Monomial& a, const Monomial& b) { return std::pair(weight_of(a, w), a) < std::pair(weight_of(b, w), b); });
  for (const auto& cand : sorted) {
    bool reached = false;
    for (const auto& s : fam.seeds) {
      const Rational steps = (weight_of(cand, w) - weight_of(s, w)) / wp;
      if (steps < 1 || denominator(steps) != 1) continue;
      const Polynomial nf =
          normal_form(Polynomial::from_monomial(s * fam.period.pow(to_int64(numerator(steps)))), qs.restricted);
      if (nf.size() == 1 && nf.terms().begin()->first == cand) reached = true;
    }
    if (!reached) fam.seeds.push_back(cand);
  }
  std::sort(fam.seeds.begin(), fam.seeds.end());

  // Odd k at the two short leaves of D_n has a printed closed form.
  const int n = static_cast<int>(g.size());
  if (is_d_type(g) && (leaf == 1 || leaf == 2) && k % 2 == 1) {
    const int other = leaf == 1 ? 2 : 1;
    Monomial m = Monomial::one(gr.num_variables());
    auto set = [&](const std::string& name, std::int64_t e) { m.exponents[gr.index_of(name)] = e; };
    set("x" + std::to_string(other), 1);
    set("x" + std::to_string(n - 1), 1 + n * (k - 1) / 2);
    set("y0", k);
    set("y" + std::to_string(other), (k + 1) / 2);
    for (int j = 3; j < n; ++j) set("y" + std::to_string(j), j * (k - 1) / 2 + 1);
    fam.closed_form_seed = m;
  }
  return fam;
}

BaseCaseFamily base_case_family(Family family, int n, int leaf, std::int64_t k) {
  const ResolutionGraph g = build_singularity(family, n);
  if (family == Family::D && leaf != 1 && leaf != 2 && leaf != n - 1)
    throw ParameterError("D_n leaves are E1, E2 and E" + std::to_string(n - 1));
  return base_case_family(g, leaf, k);
}

Monomial base_case_member(const ResolutionGraph& g, const BaseCaseFamily& fam, std::size_t seed, std::int64_t a) {
  if (a < 0) throw ParameterError("period exponent must be nonnegative");
  if (seed >= fam.seeds.size()) throw ParameterError("seed index out of range");
  const QuotientShape qs = quotient_shape(g, fam.leaf);
  const Polynomial nf = normal_form(Polynomial::from_monomial(fam.seeds[seed] * fam.period.pow(a)), qs.restricted);
  // Modulo a binomial a monomial reduces to a multiple of one monomial.
  if (nf.size() != 1) throw ConsistencyError("seed times period does not reduce to a single monomial");
  return nf.terms().begin()->first;
}

BaseCaseAudit base_case_audit(const ResolutionGraph& g, int leaf, std::int64_t k, int a_max) {
  if (a_max < 0) throw ParameterError("a_max must be nonnegative");
  BaseCaseAudit audit;
  audit.family = base_case_family(g, leaf, k);
  const BaseCaseFamily& fam = audit.family;
  const QuotientShape qs = quotient_shape(g, leaf);
  const auto w = truncation_weights(qs.pres);
  // The weights make the relation homogeneous, so rewriting keeps the weight of seed * period^a.
  const Rational wp = weight_of(fam.period, w);
  audit.weight_bound = weight_of(fam.seeds.front(), w);
  for (const auto& s : fam.seeds) audit.weight_bound = std::min(audit.weight_bound, weight_of(s, w));
  audit.weight_bound += wp * a_max;
  for (std::size_t i = 0; i < fam.seeds.size(); ++i)
    for (std::int64_t a = 0; weight_of(fam.seeds[i], w) + wp * a <= audit.weight_bound; ++a)
      audit.predicted.push_back(base_case_member(g, fam, i, a));

  const Grading& gr = qs.pres.grading;
  std::vector<std::size_t> kept;
  std::vector<Rational> kept_w;
  for (std::size_t v = 0; v < gr.num_variables(); ++v)
    if (v != qs.leaf_var) {
      kept.push_back(v);
      kept_w.push_back(w[v]);
    }
  const MultiDegree target = MultiDegree::unit(g.size(), g.index_of(leaf), k);
  for (const auto& x : lattice::bounded_solutions(gr.degree_matrix.select_columns(kept), target.coords, kept_w,
                                                  audit.weight_bound)) {
    Monomial m = Monomial::one(gr.num_variables());
    for (std::size_t j = 0; j < kept.size(); ++j) m.exponents[kept[j]] = x[j];
    if (standard_in_quotient(qs, m)) audit.enumerated.push_back(std::move(m));
  }
  std::sort(audit.enumerated.begin(), audit.enumerated.end());
  std::sort(audit.predicted.begin(), audit.predicted.end());
  audit.match = audit.enumerated == audit.predicted;
  audit.closed_form_match =
      !fam.closed_form_seed || (fam.seeds.size() == 1 && *fam.closed_form_seed == fam.seeds.front());
  return audit;
}

BaseCaseAudit base_case_audit(Family family, int n, int leaf, std::int64_t k, int a_max) {
  const ResolutionGraph g = build_singularity(family, n);
  if (family == Family::D && leaf != 1 && leaf != 2 && leaf != n - 1)
    throw ParameterError("D_n leaves are E1, E2 and E" + std::to_string(n - 1));
  return base_case_audit(g, leaf, k, a_max);
}

EquivalenceAudit full_equivalence_audit(const ResolutionGraph& g, const MultiDegree& d, const AuditCaps& caps) {
  check_length(d, g);
  EquivalenceAudit audit;
  audit.case_name = g.label();
  audit.initial = d;
  audit.terminal = d;
  std::vector<ReductionStep> steps;
  try {
    const ReductionTrace nef = reduce_to_nef(d, g, caps.step_cap);
    steps = nef.steps;
    const ReductionTrace basic = reduce_nef_to_basic(nef.terminal, g, caps.step_cap);
    steps.insert(steps.end(), basic.steps.begin(), basic.steps.end());
    audit.terminal = basic.terminal;
    audit.terminated = true;
  } catch (const StepCapError& e) {
    steps.insert(steps.end(), e.trace().steps.begin(), e.trace().steps.end());
    audit.terminal = e.trace().terminal;
  }
  const RingPresentation pres = candidate_presentation(g);
  bool all_agree = true;
  for (auto& s : steps) {
    AuditedStep as;
    as.step = s;
    if (!s.expected_cokernel_dim) {
      as.unaudited_reason = "restricted degrees outside the covered shape";
    } else if (!caps.audit_cokernels) {
      as.unaudited_reason = "cokernel audit disabled";
    } else {
      try {
        as.actual = stabilized_cokernel_dimension(pres, cokernel_problem(pres, g, s), caps.cokernel_cap);
        as.agrees = as.actual->dimension == *s.expected_cokernel_dim;
        all_agree = all_agree && as.agrees;
      } catch (const CokernelCapError& e) {
        as.actual = e.partial();
        as.unaudited_reason = "not stabilised by cap " + std::to_string(e.partial().cap);
      }
    }
    audit.steps.push_back(std::move(as));
  }
  bool bases_ok = true;
  if (audit.terminated && !audit.terminal.is_zero()) {
    std::size_t where = 0;
    while (audit.terminal[where] == 0) ++where;
    const int leaf = g.nodes()[where];
    for (std::int64_t k = 1; k <= audit.terminal[where]; ++k) {
      audit.base_cases.push_back(base_case_audit(g, leaf, k, caps.base_case_periods));
      bases_ok = bases_ok && audit.base_cases.back().match;
    }
  }
  audit.ok = audit.terminated && all_agree && bases_ok;
  return audit;
}

EquivalenceAudit full_equivalence_audit(Family family, int n, const MultiDegree& d, const AuditCaps& caps) {
  return full_equivalence_audit(build_singularity(family, n), d, caps);
}

}  // namespace coxforge
