#include "canvar/classify.hpp"

#include <algorithm>

namespace canvar {

std::optional<CanonicalPresentation> canonical_presentation(
    const CanonicalType& t, const DimVector& d) {
  require_shape(t, d, "canonical_presentation");
  if (!d.is_nonnegative()) {
    throw std::invalid_argument("canonical_presentation: negative entry");
  }
  const int n = t.arm_count();

  CanonicalPresentation pr;
  pr.p_omega = d.omega - d.alpha;
  if (pr.p_omega < 0) return std::nullopt;

  // q_i is the arm-i deficit below alpha; the coefficient of e_{i,m_i}.
  std::vector<i64> q(n, 0);
  i64 q_sum = 0;
  for (int i = 1; i <= n; ++i) {
    i64 qi = 0;
    for (int j = 1; j <= t.arm_length(i) - 1; ++j) {
      qi = std::max(qi, d.alpha - d.at(i, j));
    }
    q[i - 1] = qi;
    q_sum += qi;
  }
  pr.p = d.alpha - q_sum;
  if (pr.p < 0) return std::nullopt;

  pr.coeff.resize(n);
  for (int i = 1; i <= n; ++i) {
    const int m = t.arm_length(i);
    pr.coeff[i - 1].assign(m, 0);
    for (int j = 1; j <= m - 1; ++j) {
      pr.coeff[i - 1][j - 1] = d.at(i, j) - d.alpha + q[i - 1];
    }
    pr.coeff[i - 1][m - 1] = q[i - 1];
  }
  return pr;
}

DimVector reconstruct(const CanonicalType& t, const CanonicalPresentation& pr) {
  DimVector d = special_vector_h(t) * pr.p;
  for (int i = 1; i <= t.arm_count(); ++i) {
    for (int j = 1; j <= t.arm_length(i); ++j) {
      i64 c = pr.coeff[i - 1][j - 1];
      if (c != 0) d = d + special_vector_e(t, i, j) * c;
    }
  }
  d.omega += pr.p_omega;
  return d;
}

bool in_P(const CanonicalType& t, const DimVector& d) {
  require_shape(t, d, "in_P");
  if (d.is_zero()) return true;
  if (d.alpha <= d.omega) return false;
  for (int i = 1; i <= t.arm_count(); ++i) {
    for (int j = 0; j <= t.arm_length(i) - 1; ++j) {
      if (d.at(i, j) < d.at(i, j + 1)) return false;
    }
  }
  return true;
}

bool in_Q(const CanonicalType& t, const DimVector& d) {
  require_shape(t, d, "in_Q");
  if (d.is_zero()) return true;
  if (d.alpha >= d.omega) return false;
  for (int i = 1; i <= t.arm_count(); ++i) {
    for (int j = 1; j <= t.arm_length(i); ++j) {
      if (d.at(i, j - 1) > d.at(i, j)) return false;
    }
  }
  return true;
}

bool in_RQ(const CanonicalType& t, const DimVector& d) {
  return canonical_presentation(t, d).has_value();
}

bool in_R(const CanonicalType& t, const DimVector& d) {
  auto pr = canonical_presentation(t, d);
  return pr && pr->p_omega == 0;
}

bool in_Rprime(const CanonicalType& t, const DimVector& d) {
  auto pr = canonical_presentation(t, d);
  return pr && pr->p_omega == 0 && pr->p > 0;
}

bool is_sincere(const DimVector& d) {
  if (d.alpha <= 0 || d.omega <= 0) return false;
  for (const auto& a : d.arm) {
    for (i64 v : a) {
      if (v <= 0) return false;
    }
  }
  return true;
}

}  // namespace canvar
