#pragma once

// Cone membership for dimension vectors: the preprojective cone P, the
// preinjective cone Q, the regular cone R, R + Q, and R', all decided
// through the unique canonical presentation
//   d = p h + sum_{i,j} p_{i,j} e_{i,j} + p_omega e_omega
// with a vanishing coefficient on every arm.

#include <optional>

#include "canvar/core.hpp"

namespace canvar {

struct CanonicalPresentation {
  i64 p = 0;
  // coeff[i-1][j-1] is the coefficient of e_{i,j}, j in [1, m_i]
  std::vector<std::vector<i64>> coeff;
  i64 p_omega = 0;
};

// Empty result means d is not in R + Q.  Requires d nonnegative.
std::optional<CanonicalPresentation> canonical_presentation(
    const CanonicalType& t, const DimVector& d);

// Rebuilds p h + sum p_{i,j} e_{i,j} + p_omega e_omega.
DimVector reconstruct(const CanonicalType& t, const CanonicalPresentation& pr);

// The zero vector belongs to every cone (dimension vector of the zero
// module, which lies in each additive subcategory).
bool in_P(const CanonicalType& t, const DimVector& d);
bool in_Q(const CanonicalType& t, const DimVector& d);
bool in_R(const CanonicalType& t, const DimVector& d);
bool in_RQ(const CanonicalType& t, const DimVector& d);
bool in_Rprime(const CanonicalType& t, const DimVector& d);
bool is_sincere(const DimVector& d);

}  // namespace canvar
