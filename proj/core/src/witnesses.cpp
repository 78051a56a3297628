#include "canvar/witnesses.hpp"

#include <algorithm>
#include <numeric>

namespace canvar {

namespace {

i64 rat_to_int(const Rat& x, const char* what) {
  if (x.denominator() != 1) {
    throw std::logic_error(std::string(what) + ": non-integral entry");
  }
  return x.numerator();
}

void validate(const CanonicalType& t, WitnessPair& w) {
  if (!in_P(t, w.dprime) || !in_Q(t, w.dsecond) ||
      !in_R(t, w.dprime + w.dsecond)) {
    throw std::logic_error("witness: cone membership failed");
  }
  w.value = ringel_form(t, w.dsecond, w.dprime);
  if (Rat(w.value) != w.predicted_value) {
    throw std::logic_error("witness: closed form disagrees with the form");
  }
}

}  // namespace

WitnessPair witness_n3(const CanonicalType& t) {
  if (t.arm_count() != 3) {
    throw std::invalid_argument("witness_n3: need exactly 3 arms");
  }
  Rat delta(0);
  for (int i = 1; i <= 3; ++i) delta += Rat(1, t.arm_length(i) - 1);
  if (delta > Rat(1)) {
    throw NotApplicableError("witness_n3: sum 1/(m_i - 1) exceeds 1");
  }
  // delta <= 1 forces every m_i > 2, so the scale below is positive
  i64 m = 1;
  for (int i = 1; i <= 3; ++i) {
    m *= static_cast<i64>(t.arm_length(i) - 1) * (t.arm_length(i) - 2);
  }

  WitnessPair w;
  w.scale = m;
  w.slot_arm = {1, 2, 3};
  w.dprime = DimVector(t);
  w.dsecond = DimVector(t);
  w.dprime.alpha = rat_to_int(delta * m, "witness_n3");
  w.dsecond.omega = w.dprime.alpha;
  for (int i = 1; i <= 3; ++i) {
    const int mi = t.arm_length(i);
    Rat num = delta * Rat(mi - 1) - Rat(1);
    Rat den(static_cast<i64>(mi - 1) * (mi - 2));
    for (int j = 1; j <= mi - 1; ++j) {
      w.dprime.arm[i - 1][j - 1] =
          rat_to_int(num * Rat(mi - j - 1) / den * m, "witness_n3");
      w.dsecond.arm[i - 1][j - 1] =
          rat_to_int(num * Rat(j - 1) / den * m, "witness_n3");
    }
  }

  Rat cross(0);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i != j) {
        cross += Rat(1, static_cast<i64>(t.arm_length(i) - 1) *
                            (t.arm_length(j) - 2));
      }
    }
  }
  w.predicted_value = Rat(1, 2) * (Rat(1) - delta) * cross * Rat(m * m);

  // the sum must collapse onto the outer coefficients m/(m_i - 1)
  DimVector sum(t);
  for (int i = 1; i <= 3; ++i) {
    sum = sum + special_vector_e(t, i, t.arm_length(i)) *
                    (m / (t.arm_length(i) - 1));
  }
  if (!(sum == w.dprime + w.dsecond)) {
    throw std::logic_error("witness_n3: sum identity failed");
  }
  validate(t, w);
  return w;
}

WitnessPair witness_n4(const CanonicalType& t) {
  if (t.arm_count() != 4) {
    throw std::invalid_argument("witness_n4: need exactly 4 arms");
  }
  // construction slots 3 and 4 need arms of length > 2
  std::vector<int> longer, shorter;
  for (int i = 1; i <= 4; ++i) {
    (t.arm_length(i) > 2 ? longer : shorter).push_back(i);
  }
  if (longer.size() < 2) {
    throw NotApplicableError("witness_n4: need two arms of length > 2");
  }
  // slot[k-1] = original arm filling construction slot k; the last two
  // slots get arms of length > 2
  std::vector<int> slot;
  for (int i : shorter) slot.push_back(i);
  for (int i : longer) slot.push_back(i);

  const int a1 = slot[0], a2 = slot[1], a3 = slot[2], a4 = slot[3];
  const i64 m1 = t.arm_length(a1), m2 = t.arm_length(a2);
  const i64 m3 = t.arm_length(a3), m4 = t.arm_length(a4);
  const i64 m = 2 * m1 * m2 * (m3 - 2) * (m4 - 2);

  WitnessPair w;
  w.scale = m;
  w.slot_arm = slot;
  w.dprime = DimVector(t);
  w.dsecond = DimVector(t);
  w.dprime.alpha = m;
  w.dsecond.omega = m;
  for (int k = 1; k <= 2; ++k) {
    const int i = slot[k - 1];
    const i64 mi = t.arm_length(i);
    for (i64 j = 1; j <= mi - 1; ++j) {
      w.dprime.arm[i - 1][j - 1] = rat_to_int(Rat((mi - j) * m, mi), "witness_n4");
      w.dsecond.arm[i - 1][j - 1] = rat_to_int(Rat(j * m, mi), "witness_n4");
    }
  }
  for (int k = 3; k <= 4; ++k) {
    const int i = slot[k - 1];
    const i64 mi = t.arm_length(i);
    for (i64 j = 1; j <= mi - 1; ++j) {
      w.dprime.arm[i - 1][j - 1] =
          rat_to_int(Rat((mi - j - 1) * m, 2 * (mi - 2)), "witness_n4");
      w.dsecond.arm[i - 1][j - 1] =
          rat_to_int(Rat((j - 1) * m, 2 * (mi - 2)), "witness_n4");
    }
  }

  w.predicted_value = (Rat(3, 4) - Rat(1, 2 * m1) - Rat(1, 2 * m2) -
                       Rat(1, 8 * (m3 - 2)) - Rat(1, 8 * (m4 - 2))) *
                      Rat(m * m);

  DimVector sum = special_vector_e(t, a3, t.arm_length(a3)) * (m / 2) +
                  special_vector_e(t, a4, t.arm_length(a4)) * (m / 2);
  if (!(sum == w.dprime + w.dsecond)) {
    throw std::logic_error("witness_n4: sum identity failed");
  }
  validate(t, w);
  return w;
}

WitnessPair witness_n5plus(const CanonicalType& t) {
  const int n = t.arm_count();
  if (n < 5) {
    throw std::invalid_argument("witness_n5plus: need at least 5 arms");
  }
  // the empty construction slot n takes a shortest arm
  int min_arm = 1;
  for (int i = 2; i <= n; ++i) {
    if (t.arm_length(i) < t.arm_length(min_arm)) min_arm = i;
  }
  std::vector<int> slot;
  for (int i = 1; i <= n; ++i) {
    if (i != min_arm) slot.push_back(i);
  }
  slot.push_back(min_arm);

  i64 m = 1;
  for (int k = 1; k <= n - 1; ++k) m *= t.arm_length(slot[k - 1]);

  WitnessPair w;
  w.scale = m;
  w.slot_arm = slot;
  w.dprime = DimVector(t);
  w.dsecond = DimVector(t);
  w.dprime.alpha = m;
  w.dsecond.omega = m;
  for (int k = 1; k <= n - 1; ++k) {
    const int i = slot[k - 1];
    const i64 mi = t.arm_length(i);
    for (i64 j = 1; j <= mi - 1; ++j) {
      w.dprime.arm[i - 1][j - 1] = m / mi * (mi - j);
      w.dsecond.arm[i - 1][j - 1] = m / mi * j;
    }
  }

  Rat inv_sum(0);
  for (int k = 1; k <= n - 1; ++k) inv_sum += Rat(1, t.arm_length(slot[k - 1]));
  w.predicted_value = Rat(1, 2) * (Rat(n - 3) - inv_sum) * Rat(m * m);

  DimVector sum = special_vector_e(t, min_arm, t.arm_length(min_arm)) * m;
  if (!(sum == w.dprime + w.dsecond)) {
    throw std::logic_error("witness_n5plus: sum identity failed");
  }
  validate(t, w);
  return w;
}

WitnessPair make_witness(const CanonicalType& t) {
  switch (t.arm_count()) {
    case 3:
      return witness_n3(t);
    case 4:
      return witness_n4(t);
    default:
      return witness_n5plus(t);
  }
}

WitnessPair minimal_scale(const CanonicalType& t, const WitnessPair& w) {
  i64 g = 0;
  auto fold = [&](const DimVector& v) {
    g = std::gcd(g, v.alpha);
    g = std::gcd(g, v.omega);
    for (const auto& a : v.arm) {
      for (i64 x : a) g = std::gcd(g, x);
    }
  };
  fold(w.dprime);
  fold(w.dsecond);
  if (g <= 1) return w;

  WitnessPair out = w;
  auto divide = [&](DimVector& v) {
    v.alpha /= g;
    v.omega /= g;
    for (auto& a : v.arm) {
      for (i64& x : a) x /= g;
    }
  };
  divide(out.dprime);
  divide(out.dsecond);
  out.scale = w.scale / g;
  out.predicted_value = w.predicted_value / Rat(g * g);
  validate(t, out);
  return out;
}

std::pair<DimVector, DimVector> sincere_lift(const CanonicalType& t,
                                             const DimVector& dprime,
                                             const DimVector& dsecond) {
  i64 v = ringel_form(t, dsecond, dprime);
  if (v <= 0) {
    throw std::invalid_argument("sincere_lift: value must be positive");
  }
  DimVector h = special_vector_h(t);
  i64 vh = ringel_form(t, dsecond, h);
  i64 q = 1;
  while (checked_i64(static_cast<__int128>(q) * v + vh) <= 0) ++q;

  DimVector lp = dprime * q + h;
  DimVector ls = dsecond * q;
  DimVector d = lp + ls;
  auto pr = canonical_presentation(t, d);
  if (!in_P(t, lp) || !in_Q(t, ls) || !pr || pr->p_omega != 0 ||
      pr->p <= 0 || !is_sincere(d)) {
    throw std::logic_error("sincere_lift: lifted pair invalid");
  }
  i64 lifted = ringel_form(t, ls, lp);
  if (lifted != checked_i64(static_cast<__int128>(q) * q * v +
                            static_cast<__int128>(q) * vh) ||
      lifted <= 0) {
    throw std::logic_error("sincere_lift: value identity failed");
  }
  return {lp, ls};
}

}  // namespace canvar
