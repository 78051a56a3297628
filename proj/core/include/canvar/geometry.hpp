#pragma once

// Geometry of the module variety of a dimension vector d: every
// decomposition d = d' + d'' with d' in P and d'' in R + Q contributes an
// irreducible constructible piece of dimension a(d) + <d'', d'>, so
//   dim = a(d) + max <d'', d'>,
// the variety is a complete intersection iff the max is 0 (the trivial
// split (0, d) always attains 0), irreducible iff exactly one split
// attains it, and for regular d normal iff irreducible.

#include <functional>
#include <optional>

#include "canvar/classify.hpp"
#include "canvar/core.hpp"

namespace canvar {

struct NotRegularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SplitRecord {
  DimVector dprime;   // in P
  DimVector dsecond;  // in R + Q
  i64 value = 0;      // <d'', d'>
};

enum class EnumMode { Naive, Pruned };

// Calls fn for every split of d exactly once.  Naive mode walks the full
// box below d and filters; it refuses to start when the box holds more
// than `budget` candidates.  Pruned mode only walks weakly decreasing arm
// sequences for d' and cuts branches whose arm deficits already exceed
// the R + Q budget of d - d'.  Both modes yield the same multiset.
void enumerate_splits(const CanonicalType& t, const DimVector& d,
                      EnumMode mode,
                      const std::function<void(const SplitRecord&)>& fn,
                      i64 budget = 50'000'000);

// Aggregate split data computed by a per-arm dynamic program without
// materializing the splits: for fixed endpoint values of d' each arm
// contributes independently to <d'', d'> up to the shared deficit budget
// sum q_i <= d''_alpha, so arms are convolved over (budget used, value).
struct SplitStats {
  i64 max_value = 0;
  i64 zero_value_count = 0;  // splits with <d'', d'> = 0
  i64 split_count = 0;
};
SplitStats split_stats(const CanonicalType& t, const DimVector& d);

struct DecideOptions {
  bool relaxed = false;  // allow d outside R; normality is then not decided
  int max_witnesses = 16;
  i64 witness_scan_budget = 2'000'000;  // splits visited while collecting
};

struct GeometryVerdict {
  i64 a = 0;
  i64 dim = 0;
  i64 max_value = 0;
  i64 equality_pair_count = 0;  // splits with value 0, incl. (0, d)
  i64 split_count = 0;
  bool is_complete_intersection = false;
  bool is_irreducible = false;
  std::optional<bool> is_normal;  // set only when d is regular
  std::vector<SplitRecord> witnesses;  // splits attaining max_value
};

// Throws NotRegularError when d is not in R unless opts.relaxed is set.
GeometryVerdict decide(const CanonicalType& t, const DimVector& d,
                       const DecideOptions& opts = {});

enum class Family { Regular, SincereRegular, Rprime };

// Enumerates every family member with all entries <= bound.
void for_each_family_vector(const CanonicalType& t, i64 bound, Family family,
                            const std::function<void(const DimVector&)>& fn);

struct ScanReport {
  i64 total_vectors = 0;
  i64 ci_failures = 0;
  i64 normality_failures = 0;
  std::optional<DimVector> first_ci_failure;
  std::optional<DimVector> first_normality_failure;
  std::vector<DimVector> failure_witnesses;  // capped
  bool predicted_all_ci = false;
  bool predicted_all_normal = false;
  // consistent: the bounded scan contradicts no prediction (failures found
  // although none were predicted).  confirmed: additionally, when failures
  // are predicted to exist somewhere, at least one lies inside the bound.
  bool consistent = false;
  bool confirmed = false;
};

struct ScanOptions {
  int jobs = 1;
  int max_failure_witnesses = 16;
};

ScanReport scan_family(const CanonicalType& t, i64 bound, Family family,
                       const ScanOptions& opts = {});

// (sum 1/(m_i - 1) - (2n - 5), sum 1/m_i - (n - 2)), exact.
std::pair<Rat, Rat> threshold(const CanonicalType& t);

}  // namespace canvar
