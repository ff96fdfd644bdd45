#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxforge/errors.hpp"
#include "coxforge/multigraded_ring.hpp"
#include "coxforge/resolution_graph.hpp"

namespace coxforge {

enum class StepKind { SubtractCurve, AddCurve, AddChain, ShiftToLeaf };

std::string to_string(StepKind k);

struct ReductionStep {
  StepKind kind = StepKind::SubtractCurve;
  /// Curves whose intersection columns make up the step, as node ids. For AddChain and ShiftToLeaf
  /// this is the path in order; ShiftToLeaf's path ends at `leaf`.
  std::vector<int> curves;
  int leaf = -1;
  MultiDegree degree_before;
  MultiDegree degree_after;
  /// Nothing means the step lies outside the cases the dimension formulas cover.
  std::optional<std::int64_t> expected_cokernel_dim;
};

struct ReductionTrace {
  MultiDegree initial;
  std::vector<ReductionStep> steps;
  MultiDegree terminal;
  /// S-values over the main basic-reduction phase (D-type only).
  std::vector<Rational> measures;
};

class StepCapError : public ResourceError {
 public:
  StepCapError(const std::string& what, ReductionTrace partial) : ResourceError(what), trace_(std::move(partial)) {}
  [[nodiscard]] const ReductionTrace& trace() const { return trace_; }

 private:
  ReductionTrace trace_;
};

struct CokernelResult {
  std::int64_t dimension = 0;
  bool stabilized = false;
  std::int64_t cap = 0;
};

class CokernelCapError : public ResourceError {
 public:
  CokernelCapError(const std::string& what, CokernelResult partial) : ResourceError(what), partial_(partial) {}
  [[nodiscard]] const CokernelResult& partial() const { return partial_; }

 private:
  CokernelResult partial_;
};

inline constexpr int kDefaultStepCap = 10000;
inline constexpr std::int64_t kDefaultCokernelCap = 24;
inline constexpr std::int64_t kHardCokernelCap = 128;

/// Default truncation cap, honouring COXFORGE_CAP.
std::int64_t default_cokernel_cap();

/// Total order on the curves used to pick among eligible indices.
std::vector<int> reduction_order(const ResolutionGraph& g);

MultiDegree curve_delta(const ResolutionGraph& g, const std::vector<int>& curves);

ReductionTrace reduce_to_nef(const MultiDegree& d, const ResolutionGraph& g, int step_cap = kDefaultStepCap);
ReductionTrace reduce_nef_to_basic(const MultiDegree& d, const ResolutionGraph& g, int step_cap = kDefaultStepCap);

/// 0, or k e_v for a node v carrying a leaf variable and k > 0.
bool is_basic(const MultiDegree& d, const ResolutionGraph& g);

/// (d1 + d2)/2 + sum of the other coordinates, in D-type indexing.
Rational s_measure(const MultiDegree& d);

/// 1 + sum of degrees for a chain of rational curves; nothing if a degree is negative.
std::optional<std::int64_t> h0_tree(const std::vector<std::int64_t>& chain_degrees);

/// Cokernel dimension the step formulas predict. Throws HypothesisError when the step
/// violates the hypotheses of its formula.
std::optional<std::int64_t> expected_cokernel_dim(const ReductionStep& step, const ResolutionGraph& g);

/// The multiplication whose cokernel a step audits: R_lower --(mu)--> R_upper.
struct CokernelProblem {
  MultiDegree upper;
  MultiDegree lower;
  Monomial multiplier;
};

CokernelProblem cokernel_problem(const RingPresentation& pres, const ResolutionGraph& g, const ReductionStep& step);

/// Positive weights making every relation homogeneous: curve variables 1, leaf variables balanced.
std::vector<Rational> truncation_weights(const RingPresentation& pres);

/// dim (R_upper / mu R_lower) over monomials of weight <= cap, exact.
CokernelResult cokernel_dimension(const RingPresentation& pres, const CokernelProblem& problem, std::int64_t cap);
CokernelResult cokernel_dimension(const RingPresentation& pres, const ResolutionGraph& g, const ReductionStep& step,
                                  std::int64_t cap);
/// Raises the cap up to kHardCokernelCap until the value stabilises; throws CokernelCapError otherwise.
CokernelResult stabilized_cokernel_dimension(const RingPresentation& pres, const CokernelProblem& problem,
                                             std::int64_t start_cap);

/// Standard monomials of degree k e_leaf in the quotient by the leaf variable: one progression
/// seed * period^a (in standard form) per seed.
struct BaseCaseFamily {
  std::vector<Monomial> seeds;
  Monomial period;
  int leaf = 0;
  std::int64_t k = 0;
  /// Closed form printed for odd k at the first two leaves of D_n, when it applies.
  std::optional<Monomial> closed_form_seed;
};

BaseCaseFamily base_case_family(const ResolutionGraph& g, int leaf, std::int64_t k);
BaseCaseFamily base_case_family(Family family, int n, int leaf, std::int64_t k);

/// Standard form of seeds[seed] * period^a.
Monomial base_case_member(const ResolutionGraph& g, const BaseCaseFamily& fam, std::size_t seed, std::int64_t a);

struct BaseCaseAudit {
  BaseCaseFamily family;
  std::vector<Monomial> enumerated;
  std::vector<Monomial> predicted;
  /// Both lists cover every monomial up to this truncation weight.
  Rational weight_bound;
  bool match = false;
  bool closed_form_match = true;
};

BaseCaseAudit base_case_audit(const ResolutionGraph& g, int leaf, std::int64_t k, int a_max);
BaseCaseAudit base_case_audit(Family family, int n, int leaf, std::int64_t k, int a_max);

struct AuditedStep {
  ReductionStep step;
  std::optional<CokernelResult> actual;
  /// Why the step was not compared, if it was not.
  std::string unaudited_reason;
  bool agrees = false;
};

struct EquivalenceAudit {
  std::string case_name;
  MultiDegree initial;
  std::vector<AuditedStep> steps;
  MultiDegree terminal;
  std::vector<BaseCaseAudit> base_cases;
  bool terminated = false;
  bool ok = false;
};

struct AuditCaps {
  int step_cap = kDefaultStepCap;
  std::int64_t cokernel_cap = kDefaultCokernelCap;
  int base_case_periods = 2;
  bool audit_cokernels = true;
};

EquivalenceAudit full_equivalence_audit(const ResolutionGraph& g, const MultiDegree& d, const AuditCaps& caps = {});
EquivalenceAudit full_equivalence_audit(Family family, int n, const MultiDegree& d, const AuditCaps& caps = {});

}  // namespace coxforge
