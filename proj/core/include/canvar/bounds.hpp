#pragma once

// Certified proof that <d - d', d'> <= 0 for every split of a regular d
// over a type at or above the threshold sum 1/(m_i - 1) >= 2n - 5.  A
// chain of equality-preserving or value-increasing reductions shrinks the
// pair to a base form (d_alpha = d'_alpha, d'_omega = 0, all interior
// presentation coefficients of d zero) where a closed-form majorant is
// evaluated exactly.  The supporting scalar inequalities are re-verified
// by exhaustive grid search.

#include <string>

#include "canvar/classify.hpp"
#include "canvar/core.hpp"
#include "canvar/geometry.hpp"

namespace canvar {

enum class StepKind {
  SubtractHFromDPrime,  // d'_omega > 0: replace d' by d' - h, value equal
  SubtractEijFromD,     // interior deficit on both d and d - d'
  SubtractEijFromBoth,  // interior deficit on d only
  SubtractEimiFromD     // outer coefficient step once interiors vanish
};

struct ReductionStep {
  StepKind kind{};
  int i = 0;  // arm, 0 when unused
  int j = 0;  // position, 0 when unused
  DimVector d_after;
  DimVector dprime_after;
  i64 value_before = 0;  // <d - d', d'> before and after; before <= after
  i64 value_after = 0;
};

enum class BaseFamily { N3, Type222m, Type2233, Type22222 };
enum class Conclusion { NonPositive, StrictlyNegative };

// Exact majorant of <d - d', d'> for a pair in base form.
struct BaseBound {
  BaseFamily family{};
  Rat bound;  // may be fractional, always <= 0
  Conclusion conclusion = Conclusion::NonPositive;
};

// Tags for the equality classes: frakO collects base pairs with strictly
// decreasing d' along every arm, frakOprime its refinement for type
// (2,2,2,2,2) concentrated on a single arm.
struct BaseClassTag {
  bool in_frakO = false;
  bool in_frakOprime = false;
};
BaseClassTag classify_base_pair(const CanonicalType& t, const DimVector& d,
                                const DimVector& dprime);

bool in_base_form(const CanonicalType& t, const DimVector& d,
                  const DimVector& dprime);

// Requires base form and threshold(t).first >= 0.
BaseBound base_bound(const CanonicalType& t, const DimVector& d,
                     const DimVector& dprime);

enum class ReducePolicy { Greedy, BreadthFirst };

struct Certificate {
  std::vector<ReductionStep> steps;
  DimVector base_d;
  DimVector base_dprime;
  BaseBound base;
  Conclusion conclusion = Conclusion::NonPositive;
  i64 initial_value = 0;  // <d - d', d'> at the input pair
  ReducePolicy policy = ReducePolicy::Greedy;
};

// Preconditions: d in R, d' in P nonzero, d - d' in R + Q, and
// threshold(t).first >= 0.  Every step is re-checked numerically; the
// conclusion certifies initial_value <= 0 (< 0 when StrictlyNegative).
Certificate reduce_pair(const CanonicalType& t, const DimVector& d,
                        const DimVector& dprime);

// Sides of the shifted pairwise inequality (grid id I4):
//   -delta_m q + sum_{i<j} delta_i delta_j <= rhs
// with rhs depending on the branch (m-1)q <= d.  Requires the deltas
// nonnegative, delta_1 >= q, m >= 2.
std::pair<Rat, Rat> shifted_bound_sides(i64 q, const std::vector<i64>& deltas);

// Exhaustive integer-grid verification of the scalar inequalities.
// Ids: I1 pairwise products, I2 middle-split variant, I3 edge-clamped,
// I4 shifted, I5 half-square corollary, I6 the three-arm function f
// (integer grid plus quarter-rational grid, arm lengths up to 6).
struct LemmaReport {
  std::string lemma_id;
  i64 cases_checked = 0;
  i64 equality_cases = 0;
  i64 counterexamples = 0;
  std::string first_counterexample;
  bool pass = false;
};
LemmaReport verify_lemma_grid(const std::string& lemma_id, i64 max_total);

}  // namespace canvar
