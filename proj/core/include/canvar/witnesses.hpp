#pragma once

// Explicit split pairs (d', d'') with d' in P, d'' in Q, d' + d'' in R
// and <d'', d'> >= 0, strict below the threshold.  They witness failure
// of normality (and of the complete intersection property when strict)
// at the vector d' + d''.  One construction per arm count: n = 3, n = 4,
// and n >= 5; plus the lift making the witness vector sincere.

#include "canvar/classify.hpp"
#include "canvar/core.hpp"

namespace canvar {

struct NotApplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WitnessPair {
  DimVector dprime;   // in P
  DimVector dsecond;  // in Q
  Rat predicted_value;
  i64 value = 0;  // ringel_form(dsecond, dprime), equals predicted_value
  i64 scale = 0;  // the integral scale the construction is built at
  // arm played by each construction slot; identity when no reordering
  // was needed (slot k of the formulas acts on arm slot_arm[k-1])
  std::vector<int> slot_arm;
};

// n = 3; requires sum 1/(m_i - 1) <= 1.
WitnessPair witness_n3(const CanonicalType& t);
// n = 4; requires at least two arms of length > 2.
WitnessPair witness_n4(const CanonicalType& t);
// n >= 5; always applicable.
WitnessPair witness_n5plus(const CanonicalType& t);

// Dispatches on the arm count; throws NotApplicableError when the type
// is strictly above the threshold and no construction exists.
WitnessPair make_witness(const CanonicalType& t);

// Divides both vectors by the gcd of all their entries.  The cone
// memberships and the sign of the value survive; the value scales by
// the square of the factor.
WitnessPair minimal_scale(const CanonicalType& t, const WitnessPair& w);

// For a pair with positive value, returns (q d' + h, q d'') with the
// minimal q >= 1 making the lifted value positive; the lifted sum is a
// sincere regular vector with p > 0.
std::pair<DimVector, DimVector> sincere_lift(const CanonicalType& t,
                                             const DimVector& dprime,
                                             const DimVector& dsecond);

}  // namespace canvar
