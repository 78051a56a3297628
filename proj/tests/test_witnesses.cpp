#include <doctest.h>

#include <numeric>

#include "canvar/geometry.hpp"
#include "canvar/witnesses.hpp"
#include "helpers.hpp"

using namespace canvar;

namespace {

void check_memberships(const CanonicalType& t, const WitnessPair& w) {
  CHECK(in_P(t, w.dprime));
  CHECK(in_Q(t, w.dsecond));
  CHECK(in_R(t, w.dprime + w.dsecond));
  CHECK(Rat(w.value) == w.predicted_value);
  CHECK(w.value == ringel_form(t, w.dsecond, w.dprime));
}

}  // namespace

TEST_CASE("three-arm witness values") {
  {
    CanonicalType t({4, 4, 4});
    WitnessPair w = witness_n3(t);
    CHECK(w.scale == 216);
    CHECK(w.value == 0);
    check_memberships(t, w);
  }
  {
    CanonicalType t({5, 5, 5});
    WitnessPair w = witness_n3(t);
    CHECK(w.value > 0);
    check_memberships(t, w);
    // the sum collapses onto the arm-end vectors
    DimVector sum(t);
    for (int i = 1; i <= 3; ++i) {
      sum = sum + special_vector_e(t, i, 5) * (w.scale / 4);
    }
    CHECK(sum == w.dprime + w.dsecond);
  }
  CHECK_THROWS_AS(witness_n3(CanonicalType({2, 2, 2})), NotApplicableError);
  CHECK_THROWS_AS(witness_n3(CanonicalType({2, 3, 6})), NotApplicableError);
}

TEST_CASE("four-arm witness values") {
  {
    CanonicalType t({2, 2, 3, 3});
    WitnessPair w = witness_n4(t);
    CHECK(w.scale == 8);
    CHECK(w.value == 0);
    check_memberships(t, w);
  }
  {
    CanonicalType t({2, 2, 3, 4});
    WitnessPair w = witness_n4(t);
    CHECK(w.scale == 16);
    CHECK(w.value == 16);
    check_memberships(t, w);
  }
  {
    // arm reordering: the long arms sit in the last two slots
    CanonicalType t({3, 2, 4, 2});
    WitnessPair w = witness_n4(t);
    CHECK(w.value == 16);
    CHECK(w.slot_arm == std::vector<int>{2, 4, 1, 3});
    check_memberships(t, w);
  }
  CHECK_THROWS_AS(witness_n4(CanonicalType({2, 2, 2, 3})), NotApplicableError);
}

TEST_CASE("five-arm witness values") {
  {
    CanonicalType t({2, 2, 2, 2, 2});
    WitnessPair w = witness_n5plus(t);
    CHECK(w.scale == 16);
    CHECK(w.value == 0);
    check_memberships(t, w);
  }
  {
    CanonicalType t({2, 2, 2, 2, 3});
    WitnessPair w = witness_n5plus(t);
    CHECK(w.scale == 24);
    CHECK(w.value == 48);
    check_memberships(t, w);
    // sum identity: d' + d'' = m e_{i, m_i} for the slotted short arm
    int i = w.slot_arm.back();
    CHECK(w.dprime + w.dsecond ==
          special_vector_e(t, i, t.arm_length(i)) * w.scale);
  }
}

TEST_CASE("dispatch picks the right construction") {
  CHECK(make_witness(CanonicalType({4, 4, 4})).value == 0);
  CHECK(make_witness(CanonicalType({2, 2, 3, 4})).value == 16);
  CHECK(make_witness(CanonicalType({2, 2, 2, 2, 2, 2})).value > 0);
  CHECK_THROWS_AS(make_witness(CanonicalType({2, 3, 6})), NotApplicableError);
}

TEST_CASE("minimal scale keeps the witness property") {
  {
    CanonicalType t({2, 2, 2, 2, 2});
    WitnessPair w = minimal_scale(t, witness_n5plus(t));
    CHECK(w.scale == 2);
    CHECK(w.value == 0);
    check_memberships(t, w);
    GeometryVerdict v = decide(t, w.dprime + w.dsecond);
    REQUIRE(v.is_normal.has_value());
    CHECK_FALSE(*v.is_normal);
  }
  {
    CanonicalType t({2, 2, 3, 4});
    WitnessPair w = minimal_scale(t, witness_n4(t));
    CHECK(w.scale == 4);
    CHECK(w.value == 1);
    CHECK((w.dprime + w.dsecond).max_entry() <= 4);
    GeometryVerdict v = decide(t, w.dprime + w.dsecond);
    CHECK(v.max_value >= 1);
    CHECK_FALSE(v.is_complete_intersection);
  }
}

TEST_CASE("witness splits are seen by decide") {
  for (const auto& arms : {std::vector<int>{4, 4, 4}, {2, 2, 3, 3}}) {
    CanonicalType t(arms);
    WitnessPair w = minimal_scale(t, make_witness(t));
    GeometryVerdict v = decide(t, w.dprime + w.dsecond);
    CHECK(v.max_value >= w.value);
    REQUIRE(v.is_normal.has_value());
    CHECK_FALSE(*v.is_normal);
  }
}

TEST_CASE("sincere lift") {
  CanonicalType t({2, 2, 3, 4});
  WitnessPair w = minimal_scale(t, witness_n4(t));
  auto [lp, ls] = sincere_lift(t, w.dprime, w.dsecond);
  DimVector d = lp + ls;
  CHECK(is_sincere(d));
  CHECK(in_Rprime(t, d));
  i64 lifted = ringel_form(t, ls, lp);
  CHECK(lifted > 0);

  // value identity and minimality of q
  i64 vh = ringel_form(t, w.dsecond, special_vector_h(t));
  i64 q = ls.omega / w.dsecond.omega;
  CHECK(lifted == q * q * w.value + q * vh);
  CHECK(q * w.value + vh > 0);
  if (q > 1) CHECK((q - 1) * w.value + vh <= 0);

  CHECK_THROWS(sincere_lift(t, DimVector(t), DimVector(t)));
}
