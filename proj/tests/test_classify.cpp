#include <doctest.h>

#include <random>

#include "canvar/classify.hpp"
#include "helpers.hpp"

using namespace canvar;
using canvar_test::dv;
using canvar_test::random_dv;

TEST_CASE("presentation of h") {
  CanonicalType t({2, 3, 4});
  auto pr = canonical_presentation(t, special_vector_h(t));
  REQUIRE(pr.has_value());
  CHECK(pr->p == 1);
  CHECK(pr->p_omega == 0);
  for (const auto& arm : pr->coeff) {
    for (i64 c : arm) CHECK(c == 0);
  }
}

TEST_CASE("presentation of 2 e_{5,2} on (2,2,2,2,2)") {
  CanonicalType t({2, 2, 2, 2, 2});
  DimVector d = special_vector_e(t, 5, 2) * 2;
  CHECK(d == dv(t, 2, {{2}, {2}, {2}, {2}, {0}}, 2));
  auto pr = canonical_presentation(t, d);
  REQUIRE(pr.has_value());
  CHECK(pr->p == 0);
  CHECK(pr->p_omega == 0);
  for (int i = 1; i <= 5; ++i) {
    CHECK(pr->coeff[i - 1][0] == 0);
    CHECK(pr->coeff[i - 1][1] == (i == 5 ? 2 : 0));
  }
}

TEST_CASE("unit at alpha has no presentation") {
  CanonicalType t({2, 2, 2});
  CHECK_FALSE(canonical_presentation(t, unit_vector(t, Vertex::alpha())));
}

TEST_CASE("round trip and per-arm zero on random vectors") {
  std::mt19937 rng(424242);
  for (const auto& arms :
       {std::vector<int>{2, 2, 2}, {2, 3, 5}, {3, 3, 3}, {2, 2, 2, 2, 2}}) {
    CanonicalType t(arms);
    int present = 0;
    for (int rep = 0; rep < 400; ++rep) {
      DimVector d = random_dv(t, rng, 10);
      auto pr = canonical_presentation(t, d);
      if (!pr) continue;
      ++present;
      CHECK(reconstruct(t, *pr) == d);
      CHECK(pr->p >= 0);
      CHECK(pr->p_omega >= 0);
      for (int i = 1; i <= t.arm_count(); ++i) {
        bool has_zero = false;
        for (int j = 1; j <= t.arm_length(i); ++j) {
          CHECK(pr->coeff[i - 1][j - 1] >= 0);
          has_zero = has_zero || pr->coeff[i - 1][j - 1] == 0;
        }
        CHECK(has_zero);
      }
    }
    CHECK(present > 0);  // the sample must actually exercise the algorithm
  }
}

namespace {

// Brute force: count presentations d = p h + sum c_{i,j} e_{i,j} +
// p_omega e_omega with all coefficients in [0, cap] and a zero on every
// arm.  The unique one (when d is in R + Q) must match the closed form.
int count_presentations(const CanonicalType& t, const DimVector& d, i64 cap,
                        const std::optional<CanonicalPresentation>& expect) {
  int vars = 2;  // p, p_omega
  for (int i = 1; i <= t.arm_count(); ++i) vars += t.arm_length(i);
  std::vector<i64> v(vars, 0);
  int found = 0;
  while (true) {
    CanonicalPresentation pr;
    pr.p = v[0];
    pr.p_omega = v[1];
    int k = 2;
    pr.coeff.resize(t.arm_count());
    bool zeros = true;
    for (int i = 1; i <= t.arm_count(); ++i) {
      auto& arm = pr.coeff[i - 1];
      arm.assign(v.begin() + k, v.begin() + k + t.arm_length(i));
      k += t.arm_length(i);
      bool z = false;
      for (i64 c : arm) z = z || c == 0;
      zeros = zeros && z;
    }
    if (zeros && reconstruct(t, pr) == d) {
      ++found;
      REQUIRE(expect.has_value());
      CHECK(pr.p == expect->p);
      CHECK(pr.p_omega == expect->p_omega);
      CHECK(pr.coeff == expect->coeff);
    }
    int pos = vars - 1;
    while (pos >= 0 && v[pos] == cap) v[pos--] = 0;
    if (pos < 0) break;
    ++v[pos];
  }
  return found;
}

}  // namespace

TEST_CASE("uniqueness oracle on small instances") {
  for (const auto& arms : {std::vector<int>{2, 2, 2}, {2, 2, 3}}) {
    CanonicalType t(arms);
    std::mt19937 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
      DimVector d = random_dv(t, rng, 2);
      auto pr = canonical_presentation(t, d);
      CHECK(count_presentations(t, d, 2, pr) == (pr ? 1 : 0));
    }
  }
}

TEST_CASE("cone membership basics") {
  CanonicalType t({2, 2, 2});
  DimVector h = special_vector_h(t);
  DimVector ea = unit_vector(t, Vertex::alpha());
  DimVector eo = unit_vector(t, Vertex::omega());

  CHECK(in_P(t, ea));
  CHECK_FALSE(in_P(t, h));
  CHECK_FALSE(in_Q(t, h));
  CHECK(in_Q(t, eo));
  CHECK(in_R(t, h));
  CHECK(in_Rprime(t, h));
  CHECK(is_sincere(h));
  CHECK_FALSE(in_R(t, eo));
  CHECK(in_RQ(t, eo));

  // zero vector belongs to every cone
  DimVector zero(t);
  CHECK(in_P(t, zero));
  CHECK(in_Q(t, zero));
  CHECK(in_R(t, zero));
  CHECK(in_RQ(t, zero));
}

TEST_CASE("2 e_{5,2} is regular but neither R' nor sincere") {
  CanonicalType t({2, 2, 2, 2, 2});
  DimVector d = special_vector_e(t, 5, 2) * 2;
  CHECK(in_R(t, d));
  CHECK_FALSE(in_Rprime(t, d));
  CHECK_FALSE(is_sincere(d));
}

TEST_CASE("cone disjointness and scale invariance") {
  std::mt19937 rng(31337);
  for (const auto& arms : {std::vector<int>{2, 3, 4}, {2, 2, 2, 2, 2}}) {
    CanonicalType t(arms);
    for (int rep = 0; rep < 300; ++rep) {
      DimVector d = random_dv(t, rng, 5);
      if (d.is_zero()) continue;
      int hits = (in_P(t, d) ? 1 : 0) + (in_Q(t, d) ? 1 : 0) + (in_R(t, d) ? 1 : 0);
      CHECK(hits <= 1);
      if (in_R(t, d)) CHECK(in_RQ(t, d));
      for (i64 c : {2, 5}) {
        if (in_P(t, d)) CHECK(in_P(t, d * c));
        if (in_Q(t, d)) CHECK(in_Q(t, d * c));
        if (in_R(t, d)) CHECK(in_R(t, d * c));
        if (in_RQ(t, d)) CHECK(in_RQ(t, d * c));
      }
    }
  }
}
