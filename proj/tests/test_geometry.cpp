#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "canvar/geometry.hpp"
#include "helpers.hpp"

using namespace canvar;
using canvar_test::dv;

namespace {

std::string split_key(const SplitRecord& s) {
  std::ostringstream os;
  os << s.dprime.alpha;
  for (const auto& a : s.dprime.arm) {
    for (i64 x : a) os << ',' << x;
  }
  os << ',' << s.dprime.omega << '|' << s.value;
  return os.str();
}

std::vector<std::string> collect(const CanonicalType& t, const DimVector& d,
                                 EnumMode mode) {
  std::vector<std::string> keys;
  enumerate_splits(t, d, mode,
                   [&](const SplitRecord& s) { keys.push_back(split_key(s)); });
  std::sort(keys.begin(), keys.end());
  return keys;
}

// Every vector of the regular family with entries <= bound.
std::vector<DimVector> regular_vectors(const CanonicalType& t, i64 bound) {
  std::vector<DimVector> out;
  for_each_family_vector(t, bound, Family::Regular,
                         [&](const DimVector& d) { out.push_back(d); });
  return out;
}

}  // namespace

TEST_CASE("splits of h on (2,2,2)") {
  CanonicalType t({2, 2, 2});
  DimVector h = special_vector_h(t);
  bool saw_trivial = false, saw_ealpha = false;
  i64 max_value = -1;
  enumerate_splits(t, h, EnumMode::Naive, [&](const SplitRecord& s) {
    max_value = std::max(max_value, s.value);
    if (s.dprime.is_zero()) {
      saw_trivial = true;
      CHECK(s.value == 0);
      CHECK(s.dsecond == h);
    }
    if (s.dprime == dv(t, 1, {{0}, {0}, {0}}, 0)) {
      saw_ealpha = true;
      CHECK(s.value == -2);
    }
    // a regular vector never splits off all of itself into P
    CHECK_FALSE(s.dprime == h);
  });
  CHECK(saw_trivial);
  CHECK(saw_ealpha);
  CHECK(max_value == 0);
}

TEST_CASE("zero vector has exactly one split") {
  CanonicalType t({2, 3, 4});
  int count = 0;
  enumerate_splits(t, DimVector(t), EnumMode::Pruned,
                   [&](const SplitRecord& s) {
                     ++count;
                     CHECK(s.value == 0);
                   });
  CHECK(count == 1);
}

TEST_CASE("pruned equals naive on small boxes") {
  std::mt19937 rng(1234);
  for (const auto& arms : {std::vector<int>{2, 2, 2}, {2, 2, 2, 2, 2}}) {
    CanonicalType t(arms);
    std::vector<i64> entries;
    // full box with entries <= 2, plus random vectors with entries <= 4
    std::vector<DimVector> pool;
    {
      DimVector d(t);
      std::function<void(int, int)> rec = [&](int i, int j) {
        if (i > t.arm_count()) {
          pool.push_back(d);
          return;
        }
        int ni = i, nj = j + 1;
        if (j == t.arm_length(i) - 1) {
          ni = i + 1;
          nj = 1;
        }
        for (i64 v = 0; v <= 2; ++v) {
          d.set(i, j, v);
          rec(ni, nj);
        }
      };
      for (i64 a = 0; a <= 2; ++a) {
        for (i64 o = 0; o <= 2; ++o) {
          d.alpha = a;
          d.omega = o;
          rec(1, 1);
        }
      }
    }
    for (int rep = 0; rep < 10; ++rep) pool.push_back(canvar_test::random_dv(t, rng, 4));
    for (const auto& d : pool) {
      CHECK(collect(t, d, EnumMode::Naive) == collect(t, d, EnumMode::Pruned));
    }
  }
}

TEST_CASE("split_stats agrees with enumeration") {
  std::mt19937 rng(777);
  for (const auto& arms : {std::vector<int>{2, 3, 4}, {2, 2, 2, 2, 2}}) {
    CanonicalType t(arms);
    for (int rep = 0; rep < 15; ++rep) {
      DimVector d = canvar_test::random_dv(t, rng, 3);
      i64 maxv = 0, zeros = 0, count = 0;
      bool any = false;
      enumerate_splits(t, d, EnumMode::Pruned, [&](const SplitRecord& s) {
        maxv = any ? std::max(maxv, s.value) : s.value;
        any = true;
        if (s.value == 0) ++zeros;
        ++count;
      });
      SplitStats st = split_stats(t, d);
      CHECK(st.split_count == count);
      CHECK(st.zero_value_count == zeros);
      if (any) CHECK(st.max_value == maxv);
    }
  }
}

TEST_CASE("decide on h for (2,2,2)") {
  CanonicalType t({2, 2, 2});
  GeometryVerdict v = decide(t, special_vector_h(t));
  CHECK(v.a == 5);
  CHECK(v.dim == 5);
  CHECK(v.max_value == 0);
  CHECK(v.equality_pair_count == 1);
  CHECK(v.is_complete_intersection);
  CHECK(v.is_irreducible);
  REQUIRE(v.is_normal.has_value());
  CHECK(*v.is_normal);
  REQUIRE_FALSE(v.witnesses.empty());
  CHECK(v.witnesses.front().value == v.max_value);
}

TEST_CASE("decide on 2 e_{5,2} for (2,2,2,2,2)") {
  CanonicalType t({2, 2, 2, 2, 2});
  DimVector d = special_vector_e(t, 5, 2) * 2;
  GeometryVerdict v = decide(t, d);
  CHECK(v.max_value == 0);
  CHECK(v.is_complete_intersection);
  CHECK(v.equality_pair_count >= 2);
  CHECK_FALSE(v.is_irreducible);
  REQUIRE(v.is_normal.has_value());
  CHECK_FALSE(*v.is_normal);

  // the value-0 split with d' = (2; 1,1,1,1,0; 0) must be present
  DimVector dp = dv(t, 2, {{1}, {1}, {1}, {1}, {0}}, 0);
  DimVector ds = dv(t, 0, {{1}, {1}, {1}, {1}, {0}}, 2);
  bool found = false;
  enumerate_splits(t, d, EnumMode::Pruned, [&](const SplitRecord& s) {
    if (s.dprime == dp) {
      found = true;
      CHECK(s.dsecond == ds);
      CHECK(s.value == 0);
    }
  });
  CHECK(found);
}

TEST_CASE("normality keeps failing along the scaled family c e_{5,2}") {
  CanonicalType t({2, 2, 2, 2, 2});
  for (i64 c : {2, 4}) {
    GeometryVerdict v = decide(t, special_vector_e(t, 5, 2) * c);
    REQUIRE(v.is_normal.has_value());
    CHECK_FALSE(*v.is_normal);
  }
}

TEST_CASE("decide rejects non-regular vectors unless relaxed") {
  CanonicalType t({2, 2, 2});
  DimVector eo = unit_vector(t, Vertex::omega());
  CHECK_THROWS_AS(decide(t, eo), NotRegularError);
  GeometryVerdict v = decide(t, eo, DecideOptions{.relaxed = true});
  CHECK_FALSE(v.is_normal.has_value());
  CHECK(v.dim == v.a + v.max_value);
}

TEST_CASE("dim never drops below a(d)") {
  std::mt19937 rng(2024);
  CanonicalType t({2, 3, 4});
  for (int rep = 0; rep < 40; ++rep) {
    DimVector d = canvar_test::random_dv(t, rng, 4);
    GeometryVerdict v = decide(t, d, DecideOptions{.relaxed = true});
    CHECK(v.max_value >= 0);
    CHECK(v.dim >= a_dim(t, d));
  }
}

TEST_CASE("thresholds") {
  CHECK(threshold(CanonicalType({2, 2, 2, 2, 2})) ==
        std::make_pair(Rat(0), Rat(-1, 2)));
  CHECK(threshold(CanonicalType({4, 4, 4})) ==
        std::make_pair(Rat(0), Rat(-1, 4)));
  CHECK(threshold(CanonicalType({2, 3, 6})) ==
        std::make_pair(Rat(7, 10), Rat(0)));
}

TEST_CASE("family enumeration produces exactly the advertised sets") {
  CanonicalType t({2, 2, 2, 2, 2});
  for (i64 bound : {1, 2}) {
    auto vecs = regular_vectors(t, bound);
    for (const auto& d : vecs) {
      CHECK(in_R(t, d));
      CHECK(d.max_entry() <= bound);
      CHECK_FALSE(d.is_zero());
    }
    // no duplicates
    std::vector<std::string> keys;
    for (const auto& d : vecs) keys.push_back(split_key({d, d, 0}));
    std::sort(keys.begin(), keys.end());
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());

    // cross-check against the raw box
    i64 expected = 0;
    DimVector d(t);
    for (i64 a = 0; a <= bound; ++a) {
      d.alpha = a;
      d.omega = a;  // regular forces d_alpha = d_omega
      std::function<void(int)> rec = [&](int i) {
        if (i > 5) {
          if (!d.is_zero() && in_R(t, d) && d.max_entry() <= bound) ++expected;
          return;
        }
        for (i64 v = 0; v <= bound; ++v) {
          d.arm[i - 1][0] = v;
          rec(i + 1);
        }
      };
      rec(1);
    }
    CHECK(static_cast<i64>(vecs.size()) == expected);
  }

  // sincere and R' sub-families
  for (Family f : {Family::SincereRegular, Family::Rprime}) {
    for_each_family_vector(t, 2, f, [&](const DimVector& d) {
      CHECK(in_R(t, d));
      if (f == Family::SincereRegular) CHECK(is_sincere(d));
      if (f == Family::Rprime) CHECK(in_Rprime(t, d));
    });
  }
}

TEST_CASE("scan_family smoke tests") {
  {
    ScanReport r = scan_family(CanonicalType({2, 2, 2}), 3, Family::Regular);
    CHECK(r.total_vectors > 0);
    CHECK(r.ci_failures == 0);
    CHECK(r.normality_failures == 0);
    CHECK(r.consistent);
    CHECK(r.confirmed);
  }
  {
    CanonicalType t({2, 2, 2, 2, 2});
    ScanReport r = scan_family(t, 2, Family::SincereRegular);
    CHECK(r.normality_failures == 0);
    CHECK(r.consistent);
    ScanReport reg = scan_family(t, 2, Family::Regular, ScanOptions{.jobs = 2});
    CHECK(reg.ci_failures == 0);
    CHECK(reg.normality_failures >= 1);
    CHECK(reg.consistent);
    CHECK(reg.confirmed);
    REQUIRE(reg.first_normality_failure.has_value());
    GeometryVerdict v = decide(t, *reg.first_normality_failure);
    CHECK_FALSE(*v.is_normal);
  }
}

TEST_CASE("parallel scan matches serial scan") {
  CanonicalType t({2, 2, 3, 3});
  ScanReport a = scan_family(t, 2, Family::Regular, ScanOptions{.jobs = 1});
  ScanReport b = scan_family(t, 2, Family::Regular, ScanOptions{.jobs = 4});
  CHECK(a.total_vectors == b.total_vectors);
  CHECK(a.ci_failures == b.ci_failures);
  CHECK(a.normality_failures == b.normality_failures);
  CHECK(a.consistent == b.consistent);
}
