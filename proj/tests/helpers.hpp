#pragma once

#include <random>
#include <vector>

#include "canvar/core.hpp"

namespace canvar_test {

inline canvar::DimVector dv(const canvar::CanonicalType& t, canvar::i64 alpha,
                            std::vector<std::vector<canvar::i64>> arms,
                            canvar::i64 omega) {
  canvar::DimVector d(t);
  d.alpha = alpha;
  d.omega = omega;
  for (size_t i = 0; i < arms.size(); ++i) d.arm[i] = std::move(arms[i]);
  return d;
}

inline canvar::DimVector random_dv(const canvar::CanonicalType& t,
                                   std::mt19937& rng, canvar::i64 max_entry) {
  std::uniform_int_distribution<canvar::i64> pick(0, max_entry);
  canvar::DimVector d(t);
  d.alpha = pick(rng);
  d.omega = pick(rng);
  for (auto& a : d.arm) {
    for (auto& x : a) x = pick(rng);
  }
  return d;
}

}  // namespace canvar_test
