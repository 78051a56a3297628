#include <doctest.h>

#include "canvar/bounds.hpp"
#include "canvar/geometry.hpp"
#include "canvar/witnesses.hpp"
#include "helpers.hpp"

using namespace canvar;
using canvar_test::dv;

TEST_CASE("shifted inequality sides") {
  {
    auto [lhs, rhs] = shifted_bound_sides(1, {2, 1, 1});
    CHECK(lhs == Rat(4));
    CHECK(rhs == Rat(25, 3) - Rat(4));
    CHECK(lhs <= rhs);
  }
  {
    // q = 0 collapses to the plain pairwise bound (m-1)/2m d^2
    auto [lhs, rhs] = shifted_bound_sides(0, {3, 2, 2, 1});
    CHECK(lhs == Rat(3 * 2 + 3 * 2 + 3 * 1 + 2 * 2 + 2 * 1 + 2 * 1));
    CHECK(rhs == Rat(3, 8) * Rat(64));
    CHECK(lhs <= rhs);
  }
  {
    // equality on the first branch: deltas (d+q)/m, ..., (d-(m-1)q)/m
    auto [lhs, rhs] = shifted_bound_sides(1, {2, 2, 1});
    CHECK(lhs == rhs);
    CHECK(lhs == Rat(7));
  }
  {
    // second branch (m-1)q > d
    auto [lhs, rhs] = shifted_bound_sides(3, {3, 1, 0});
    CHECK(lhs <= rhs);
    CHECK(rhs == Rat(-4 * 3) + Rat(16) - Rat(2, 2) * Rat(1));
  }
}

TEST_CASE("inequality grids at reduced size") {
  for (const char* id : {"I1", "I2", "I3", "I4", "I5"}) {
    LemmaReport r = verify_lemma_grid(id, 8);
    INFO(id);
    CHECK(r.pass);
    CHECK(r.counterexamples == 0);
    CHECK(r.cases_checked > 0);
  }
  LemmaReport r6 = verify_lemma_grid("I6", 6);
  CHECK(r6.pass);
  CHECK(r6.cases_checked > 0);
}

TEST_CASE("equality cases are found where the statements admit them") {
  LemmaReport r1 = verify_lemma_grid("I1", 8);
  CHECK(r1.equality_cases > 0);  // e.g. all deltas equal to d/m
  LemmaReport r5 = verify_lemma_grid("I5", 8);
  CHECK(r5.equality_cases > 0);  // q = d
}

TEST_CASE("base form and base classes on (2,2,2,2,2)") {
  CanonicalType t({2, 2, 2, 2, 2});
  DimVector d = special_vector_e(t, 5, 2) * 2;
  DimVector dp = dv(t, 2, {{1}, {1}, {1}, {1}, {0}}, 0);
  CHECK(in_base_form(t, d, dp));
  BaseClassTag tag = classify_base_pair(t, d, dp);
  CHECK(tag.in_frakO);
  CHECK(tag.in_frakOprime);

  BaseBound b = base_bound(t, d, dp);
  CHECK(b.family == BaseFamily::Type22222);
  CHECK(b.bound == Rat(0));
  CHECK(b.conclusion == Conclusion::NonPositive);
}

TEST_CASE("base bound rejects below-threshold types") {
  CanonicalType t({5, 5, 5});
  DimVector d = special_vector_h(t);
  DimVector dp = unit_vector(t, Vertex::alpha());
  CHECK_THROWS(base_bound(t, d, dp));
}

TEST_CASE("certificate for (h, e_alpha) on (2,2,2)") {
  CanonicalType t({2, 2, 2});
  DimVector h = special_vector_h(t);
  DimVector ea = unit_vector(t, Vertex::alpha());
  Certificate c = reduce_pair(t, h, ea);
  CHECK(c.initial_value == ringel_form(t, h - ea, ea));
  CHECK(c.initial_value == -2);
  CHECK(c.conclusion == Conclusion::StrictlyNegative);
  CHECK(c.base.family == BaseFamily::N3);
  CHECK(c.base.bound <= Rat(0));
}

TEST_CASE("certificate for the value-0 split of 2 e_{5,2}") {
  CanonicalType t({2, 2, 2, 2, 2});
  DimVector d = special_vector_e(t, 5, 2) * 2;
  DimVector dp = dv(t, 2, {{1}, {1}, {1}, {1}, {0}}, 0);
  Certificate c = reduce_pair(t, d, dp);
  CHECK(c.initial_value == 0);
  CHECK(c.conclusion == Conclusion::NonPositive);
  CHECK(c.base.bound == Rat(0));
}

namespace {

// Replays a certificate step by step with independent form evaluations.
void audit(const CanonicalType& t, DimVector d, DimVector dp,
           const Certificate& c) {
  i64 value = ringel_form(t, d - dp, dp);
  CHECK(value == c.initial_value);
  for (const auto& step : c.steps) {
    CHECK(step.value_before == value);
    d = step.d_after;
    dp = step.dprime_after;
    i64 next = ringel_form(t, d - dp, dp);
    CHECK(step.value_after == next);
    CHECK(step.value_before <= step.value_after);
    if (step.kind == StepKind::SubtractHFromDPrime) {
      CHECK(step.value_before == step.value_after);
    }
    value = next;
  }
  CHECK(d == c.base_d);
  CHECK(dp == c.base_dprime);
  CHECK(in_base_form(t, d, dp));
  CHECK(Rat(value) <= c.base.bound);
  CHECK(c.base.bound <= Rat(0));
  if (c.conclusion == Conclusion::StrictlyNegative) {
    CHECK(c.initial_value < 0);
  }
}

}  // namespace

TEST_CASE("certificates are sound on every split at small entries") {
  for (const auto& arms :
       {std::vector<int>{2, 2, 2}, {2, 2, 2, 3}, {2, 2, 3, 3}}) {
    CanonicalType t(arms);
    for_each_family_vector(t, 3, Family::Regular, [&](const DimVector& d) {
      enumerate_splits(t, d, EnumMode::Pruned, [&](const SplitRecord& s) {
        if (s.dprime.is_zero()) return;
        Certificate c = reduce_pair(t, d, s.dprime);
        CHECK(c.initial_value == s.value);
        audit(t, d, s.dprime, c);
      });
    });
  }
}

TEST_CASE("certificate preconditions") {
  CanonicalType t({2, 2, 2});
  DimVector h = special_vector_h(t);
  CHECK_THROWS(reduce_pair(t, h, DimVector(t)));                   // d' = 0
  CHECK_THROWS(reduce_pair(t, unit_vector(t, Vertex::omega()),     // d not in R
                           unit_vector(t, Vertex::alpha())));
  CHECK_THROWS(reduce_pair(CanonicalType({5, 5, 5}),
                           special_vector_h(CanonicalType({5, 5, 5})),
                           unit_vector(CanonicalType({5, 5, 5}),
                                       Vertex::alpha())));
}
