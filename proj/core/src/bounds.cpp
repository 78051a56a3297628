#include "canvar/bounds.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace canvar {

namespace {

i64 interior_p(const CanonicalPresentation& pr, int i, int j) {
  return pr.coeff[i - 1][j - 1];
}

i64 outer_p(const CanonicalType& t, const CanonicalPresentation& pr, int i) {
  return pr.coeff[i - 1][t.arm_length(i) - 1];
}

bool interiors_vanish(const CanonicalType& t,
                      const CanonicalPresentation& pr) {
  for (int i = 1; i <= t.arm_count(); ++i) {
    for (int j = 1; j <= t.arm_length(i) - 1; ++j) {
      if (interior_p(pr, i, j) != 0) return false;
    }
  }
  return true;
}

Rat rat_sq(const Rat& x) { return x * x; }

// g_m(q) with the branch split at (m - 1) q <= d; the building block of
// the three-arm majorant f.
Rat g_branch(int m, const Rat& q, i64 d) {
  if (Rat(m - 1) * q <= Rat(d)) {
    return Rat(m - 1, 2LL * m) * rat_sq(Rat(d) + q);
  }
  return Rat(static_cast<i64>(d) * d) -
         Rat(m - 1, 2LL * (m - 2)) * rat_sq(Rat(d) - q);
}

std::string vec_key(const DimVector& v) {
  std::ostringstream os;
  os << v.alpha;
  for (const auto& a : v.arm) {
    os << '|';
    for (i64 x : a) os << x << ',';
  }
  os << '|' << v.omega;
  return os.str();
}

}  // namespace

bool in_base_form(const CanonicalType& t, const DimVector& d,
                  const DimVector& dprime) {
  if (!in_R(t, d) || !in_P(t, dprime) || dprime.is_zero()) return false;
  if (dprime.omega != 0 || dprime.alpha != d.alpha) return false;
  if (!(d - dprime).is_nonnegative()) return false;
  auto pr = canonical_presentation(t, d);
  return pr && interiors_vanish(t, *pr);
}

BaseClassTag classify_base_pair(const CanonicalType& t, const DimVector& d,
                                const DimVector& dprime) {
  BaseClassTag tag;
  auto pr = canonical_presentation(t, d);
  if (!pr || pr->p_omega != 0 || pr->p != 0) return tag;
  if (!interiors_vanish(t, *pr)) return tag;
  if (!in_P(t, dprime) || dprime.omega != 0) return tag;
  if (!(d - dprime).is_nonnegative()) return tag;
  for (int i = 1; i <= t.arm_count(); ++i) {
    for (int j = 1; j <= t.arm_length(i) - 1; ++j) {
      if (dprime.at(i, j - 1) <= dprime.at(i, j)) return tag;
    }
  }
  tag.in_frakO = true;

  if (t.arms() != std::vector<int>{2, 2, 2, 2, 2}) return tag;
  // d concentrated on one arm: d = c e_{i,2}, d'_{i,1} = 0 and the other
  // interior entries equal to half of d'_alpha
  for (int i = 1; i <= 5; ++i) {
    i64 c = outer_p(t, *pr, i);
    if (c <= 0) continue;
    bool concentrated = true;
    for (int s = 1; s <= 5; ++s) {
      if (s != i && outer_p(t, *pr, s) != 0) concentrated = false;
    }
    if (!concentrated) continue;
    if (dprime.alpha < 1 || dprime.alpha > c) continue;
    if (dprime.at(i, 1) != 0) continue;
    bool halves = true;
    for (int s = 1; s <= 5; ++s) {
      if (s != i && 2 * dprime.at(s, 1) != dprime.alpha) halves = false;
    }
    if (halves) tag.in_frakOprime = true;
    break;
  }
  return tag;
}

BaseBound base_bound(const CanonicalType& t, const DimVector& d,
                     const DimVector& dprime) {
  if (!in_base_form(t, d, dprime)) {
    throw std::invalid_argument("base_bound: pair is not in base form");
  }
  if (threshold(t).first < Rat(0)) {
    throw std::invalid_argument("base_bound: type below threshold");
  }
  const int n = t.arm_count();
  auto pr = *canonical_presentation(t, d);
  const i64 dv = d.alpha;
  const Rat p(pr.p);
  std::vector<Rat> q(n + 1);
  for (int i = 1; i <= n; ++i) q[i] = Rat(outer_p(t, pr, i));

  BaseBound out;
  if (n == 3) {
    out.family = BaseFamily::N3;
    Rat f(0);
    for (int i = 1; i <= 3; ++i) f += g_branch(t.arm_length(i), q[i], dv);
    out.bound = Rat(-2 * dv * dv) + f;
    out.conclusion = out.bound < Rat(0) ? Conclusion::StrictlyNegative
                                        : Conclusion::NonPositive;
    return out;
  }

  std::vector<int> sorted = t.arms();
  std::sort(sorted.begin(), sorted.end());

  if (n == 5) {
    if (sorted != std::vector<int>{2, 2, 2, 2, 2}) {
      throw std::invalid_argument("base_bound: unsupported type");
    }
    out.family = BaseFamily::Type22222;
    Rat e = Rat(-3, 4) * rat_sq(p);
    for (int i = 1; i <= 5; ++i) e -= p * q[i];
    for (int i = 1; i <= 5; ++i) {
      for (int j = i + 1; j <= 5; ++j) e -= Rat(1, 2) * q[i] * q[j];
    }
    out.bound = e;
    out.conclusion = e < Rat(0) ? Conclusion::StrictlyNegative
                                : Conclusion::NonPositive;
    return out;
  }

  if (n != 4) throw std::invalid_argument("base_bound: unsupported type");

  if (sorted[0] == 2 && sorted[1] == 2 && sorted[2] == 2) {
    out.family = BaseFamily::Type222m;
    // p4 sits on the unique longest arm; for (2,2,2,2) any arm works
    int long_arm = 4;
    for (int i = 1; i <= 4; ++i) {
      if (t.arm_length(i) > 2) long_arm = i;
    }
    Rat p4 = q[long_arm];
    std::vector<Rat> ps;
    for (int i = 1; i <= 4; ++i) {
      if (i != long_arm) ps.push_back(q[i]);
    }
    if (p4 == Rat(dv)) {
      out.bound = Rat(-dv * dv, 4);
      out.conclusion = Conclusion::StrictlyNegative;
      return out;
    }
    Rat e = Rat(-3, 4) * rat_sq(p) - Rat(1, 4) * rat_sq(p4);
    for (const Rat& pi : ps) e -= p * pi;
    e -= Rat(1, 2) * p * p4;
    e -= Rat(1, 2) * (ps[0] * ps[1] + ps[0] * ps[2] + ps[1] * ps[2]);
    out.bound = e;
    // p4 < d keeps the half-square corollary strict on the long arm
    out.conclusion = Conclusion::StrictlyNegative;
    return out;
  }

  if (sorted != std::vector<int>{2, 2, 3, 3}) {
    throw std::invalid_argument("base_bound: unsupported type");
  }
  out.family = BaseFamily::Type2233;
  std::vector<Rat> two, three;
  for (int i = 1; i <= 4; ++i) {
    (t.arm_length(i) == 2 ? two : three).push_back(q[i]);
  }
  Rat p1 = two[0], p2 = two[1], p3 = three[0], p4 = three[1];
  if (Rat(2) * p3 > Rat(dv)) std::swap(p3, p4);
  const Rat D(dv);
  if (Rat(2) * p4 <= D) {
    Rat e = Rat(-5, 6) * rat_sq(p) - Rat(1, 12) * rat_sq(p1) -
            Rat(1, 12) * rat_sq(p2) - Rat(7, 6) * p * p1 -
            Rat(7, 6) * p * p2 - Rat(5, 6) * p * p3 - Rat(5, 6) * p * p4 -
            Rat(2, 3) * p1 * p2 -
            Rat(1, 3) * (p1 * p3 + p1 * p4 + p2 * p3 + p2 * p4) -
            Rat(1, 6) * p3 * (D - Rat(2) * p3) -
            Rat(1, 6) * p4 * (D - Rat(2) * p4);
    out.bound = e;
    out.conclusion = e < Rat(0) ? Conclusion::StrictlyNegative
                                : Conclusion::NonPositive;
    return out;
  }
  Rat e = Rat(-7, 6) * rat_sq(p) - Rat(5, 12) * rat_sq(p1) -
          Rat(5, 12) * rat_sq(p2) - Rat(1, 6) * rat_sq(p3) -
          Rat(1, 6) * rat_sq(p4) - Rat(11, 6) * p * p1 -
          Rat(11, 6) * p * p2 - Rat(5, 3) * p * p3 - Rat(1, 3) * p * p4 -
          Rat(4, 3) * p1 * p2 - Rat(7, 6) * p1 * p3 +
          Rat(1, 6) * p1 * p4 - Rat(7, 6) * p2 * p3 + Rat(1, 6) * p2 * p4 +
          Rat(1, 3) * p3 * p4;
  out.bound = e;
  out.conclusion = e < Rat(0) ? Conclusion::StrictlyNegative
                              : Conclusion::NonPositive;
  return out;
}

namespace {

struct PendingStep {
  StepKind kind{};
  int i = 0;
  int j = 0;
};

bool valid_pair(const CanonicalType& t, const DimVector& d,
                const DimVector& dp) {
  return in_R(t, d) && in_P(t, dp) && !dp.is_zero() &&
         (d - dp).is_nonnegative() && in_RQ(t, d - dp);
}

std::pair<DimVector, DimVector> apply_step(const CanonicalType& t,
                                           const DimVector& d,
                                           const DimVector& dp,
                                           const PendingStep& s) {
  switch (s.kind) {
    case StepKind::SubtractHFromDPrime:
      return {d, dp - special_vector_h(t)};
    case StepKind::SubtractEijFromD:
      return {d - special_vector_e(t, s.i, s.j), dp};
    case StepKind::SubtractEijFromBoth: {
      DimVector e = special_vector_e(t, s.i, s.j);
      return {d - e, dp - e};
    }
    case StepKind::SubtractEimiFromD:
      return {d - special_vector_e(t, s.i, t.arm_length(s.i)), dp};
  }
  throw std::logic_error("apply_step: bad kind");
}

// All steps applicable at (d, dp), in greedy priority order: the h step,
// then per arm (lowest first) the interior steps at the highest position,
// then the outer step.
std::vector<PendingStep> applicable_steps(const CanonicalType& t,
                                          const DimVector& d,
                                          const DimVector& dp) {
  std::vector<PendingStep> out;
  const int n = t.arm_count();
  if (dp.omega > 0) {
    out.push_back({StepKind::SubtractHFromDPrime, 0, 0});
    return out;
  }
  auto prd = canonical_presentation(t, d);
  auto prdd = canonical_presentation(t, d - dp);
  if (!prd || !prdd) return out;

  bool interiors_left = false;
  // deficits present on both d and d - d': lowest arm, then highest j
  for (int i = 1; i <= n; ++i) {
    for (int j = t.arm_length(i) - 1; j >= 1; --j) {
      if (interior_p(*prd, i, j) > 0) {
        interiors_left = true;
        if (interior_p(*prdd, i, j) > 0) {
          out.push_back({StepKind::SubtractEijFromD, i, j});
        }
      }
    }
  }
  // topmost positive interior coefficient per arm whose d - d' coefficient
  // vanishes; only there can both vectors drop together
  for (int i = 1; i <= n; ++i) {
    for (int j = t.arm_length(i) - 1; j >= 1; --j) {
      if (interior_p(*prd, i, j) > 0) {
        if (interior_p(*prdd, i, j) == 0) {
          out.push_back({StepKind::SubtractEijFromBoth, i, j});
        }
        break;
      }
    }
  }
  if (!interiors_left && dp.alpha < d.alpha) {
    for (int i = 1; i <= n; ++i) {
      DimVector nd = d - special_vector_e(t, i, t.arm_length(i));
      if (nd.is_nonnegative() && in_R(t, nd) &&
          (nd - dp).is_nonnegative() && in_RQ(t, nd - dp)) {
        out.push_back({StepKind::SubtractEimiFromD, i, 0});
      }
    }
  }
  return out;
}

ReductionStep record_step(const CanonicalType& t, const DimVector& d,
                          const DimVector& dp, const PendingStep& s,
                          const DimVector& nd, const DimVector& ndp) {
  ReductionStep rec;
  rec.kind = s.kind;
  rec.i = s.i;
  rec.j = s.j;
  rec.d_after = nd;
  rec.dprime_after = ndp;
  rec.value_before = ringel_form(t, d - dp, dp);
  rec.value_after = ringel_form(t, nd - ndp, ndp);
  if (rec.value_before > rec.value_after) {
    throw std::logic_error("reduce_pair: step decreased the form value");
  }
  if (s.kind == StepKind::SubtractHFromDPrime &&
      rec.value_before != rec.value_after) {
    throw std::logic_error("reduce_pair: h step changed the form value");
  }
  return rec;
}

}  // namespace

Certificate reduce_pair(const CanonicalType& t, const DimVector& d,
                        const DimVector& dprime) {
  require_shape(t, d, "reduce_pair");
  require_shape(t, dprime, "reduce_pair");
  if (threshold(t).first < Rat(0)) {
    throw std::invalid_argument("reduce_pair: type below threshold");
  }
  if (!valid_pair(t, d, dprime)) {
    throw std::invalid_argument(
        "reduce_pair: need d in R, d' in P nonzero, d - d' in R + Q");
  }

  Certificate cert;
  cert.initial_value = ringel_form(t, d - dprime, dprime);

  DimVector cd = d, cdp = dprime;
  bool greedy_ok = true;
  while (!in_base_form(t, cd, cdp)) {
    auto steps = applicable_steps(t, cd, cdp);
    PendingStep chosen{};
    bool found = false;
    for (const auto& s : steps) {
      auto [nd, ndp] = apply_step(t, cd, cdp, s);
      if (valid_pair(t, nd, ndp)) {
        chosen = s;
        found = true;
        break;
      }
    }
    if (!found) {
      greedy_ok = false;
      break;
    }
    auto [nd, ndp] = apply_step(t, cd, cdp, chosen);
    cert.steps.push_back(record_step(t, cd, cdp, chosen, nd, ndp));
    cd = nd;
    cdp = ndp;
  }

  if (!greedy_ok) {
    // breadth-first over all applicable steps; the induction behind the
    // reduction lemmas guarantees some chain exists
    cert.steps.clear();
    cert.policy = ReducePolicy::BreadthFirst;
    struct Node {
      DimVector d, dp;
      int parent;
      PendingStep via;
    };
    std::vector<Node> nodes;
    std::unordered_set<std::string> seen;
    nodes.push_back({d, dprime, -1, {}});
    seen.insert(vec_key(d) + "#" + vec_key(dprime));
    size_t head = 0;
    int goal = -1;
    const size_t node_cap = 200000;
    while (head < nodes.size() && goal < 0) {
      Node cur = nodes[head];
      if (in_base_form(t, cur.d, cur.dp)) {
        goal = static_cast<int>(head);
        break;
      }
      for (const auto& s : applicable_steps(t, cur.d, cur.dp)) {
        auto [nd, ndp] = apply_step(t, cur.d, cur.dp, s);
        if (!valid_pair(t, nd, ndp)) continue;
        std::string k = vec_key(nd) + "#" + vec_key(ndp);
        if (!seen.insert(k).second) continue;
        nodes.push_back({nd, ndp, static_cast<int>(head), s});
        if (nodes.size() > node_cap) {
          throw std::runtime_error("reduce_pair: search space exhausted");
        }
      }
      ++head;
    }
    if (goal < 0) {
      throw std::runtime_error("reduce_pair: no reduction chain found");
    }
    std::vector<int> path;
    for (int at = goal; nodes[at].parent >= 0; at = nodes[at].parent) {
      path.push_back(at);
    }
    std::reverse(path.begin(), path.end());
    DimVector wd = d, wdp = dprime;
    for (int at : path) {
      const Node& nd = nodes[at];
      cert.steps.push_back(record_step(t, wd, wdp, nd.via, nd.d, nd.dp));
      wd = nd.d;
      wdp = nd.dp;
    }
    cd = wd;
    cdp = wdp;
  }

  cert.base_d = cd;
  cert.base_dprime = cdp;
  cert.base = base_bound(t, cd, cdp);

  bool strict = cert.base.conclusion == Conclusion::StrictlyNegative;
  for (const auto& s : cert.steps) {
    if (s.value_before < s.value_after) strict = true;
  }
  cert.conclusion =
      strict ? Conclusion::StrictlyNegative : Conclusion::NonPositive;

  // soundness of the certified claim, rechecked against the raw form
  i64 base_value = ringel_form(t, cd - cdp, cdp);
  if (Rat(base_value) > cert.base.bound) {
    throw std::logic_error("reduce_pair: base bound below actual value");
  }
  if (cert.initial_value > base_value ||
      (cert.conclusion == Conclusion::StrictlyNegative &&
       cert.initial_value >= 0) ||
      cert.initial_value > 0) {
    throw std::logic_error("reduce_pair: certificate unsound");
  }
  return cert;
}

std::pair<Rat, Rat> shifted_bound_sides(i64 q,
                                        const std::vector<i64>& deltas) {
  const int m = static_cast<int>(deltas.size());
  if (m < 2 || q < 0 || deltas[0] < q) {
    throw std::invalid_argument("shifted_bound_sides: preconditions");
  }
  i64 d = 0;
  for (i64 x : deltas) {
    if (x < 0) throw std::invalid_argument("shifted_bound_sides: negative");
    d += x;
  }
  __int128 pair_sum = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      pair_sum += static_cast<__int128>(deltas[i]) * deltas[j];
    }
  }
  Rat lhs = Rat(checked_i64(pair_sum)) - Rat(deltas[m - 1]) * Rat(q);
  Rat rhs;
  if ((m - 1) * q <= d) {
    rhs = Rat(-d * q) + Rat(m - 1, 2LL * m) * rat_sq(Rat(d + q));
  } else {
    rhs = Rat(-d * q) + Rat(d * d) -
          Rat(m - 1, 2LL * (m - 2)) * rat_sq(Rat(d - q));
  }
  return {lhs, rhs};
}

namespace {

// every nonnegative integer tuple with the given length and total
template <typename Fn>
void compositions(i64 total, int parts, std::vector<i64>& cur, Fn&& fn) {
  if (parts == 1) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (i64 v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, fn);
    cur.pop_back();
  }
}

std::string tuple_str(const std::vector<i64>& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

struct GridState {
  LemmaReport rep;
  void count(bool ok, bool equality, const std::string& where) {
    ++rep.cases_checked;
    if (equality) ++rep.equality_cases;
    if (!ok) {
      if (rep.counterexamples == 0) rep.first_counterexample = where;
      ++rep.counterexamples;
    }
  }
};

Rat pairwise(const std::vector<i64>& d) {
  __int128 s = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    for (size_t j = i + 1; j < d.size(); ++j) {
      s += static_cast<__int128>(d[i]) * d[j];
    }
  }
  return Rat(checked_i64(s));
}

// I1: sum_{i<j} delta_i delta_j <= ((m-1)/2m) d^2, equality iff all
// delta_i = d/m.  O(#compositions) = O(C(d+m-1, m-1)) per (m, d).
void grid_I1(i64 N, GridState& g) {
  std::vector<i64> cur;
  for (int m = 1; m <= 6; ++m) {
    for (i64 d = 0; d <= N; ++d) {
      compositions(d, m, cur, [&](const std::vector<i64>& del) {
        Rat lhs = pairwise(del);
        Rat rhs = Rat(m - 1, 2LL * m) * Rat(d * d);
        bool eq = lhs == rhs;
        bool ok = lhs <= rhs;
        if (eq) {
          for (i64 x : del) {
            if (Rat(x) != Rat(d, m)) ok = false;
          }
        }
        g.count(ok, eq, "m=" + std::to_string(m) + " " + tuple_str(del));
      });
    }
  }
}

// I2: the middle-split variant for m > 2; equality iff the two edge
// entries are (d - d')/2 and the middle ones d'/(m-2).
void grid_I2(i64 N, GridState& g) {
  std::vector<i64> cur;
  for (int m = 3; m <= 6; ++m) {
    for (i64 d = 0; d <= N; ++d) {
      compositions(d, m, cur, [&](const std::vector<i64>& del) {
        i64 mid = 0;
        for (int i = 1; i < m - 1; ++i) mid += del[i];
        Rat rhs = Rat(1, 4) * rat_sq(Rat(d + mid)) -
                  Rat(m - 1, 2LL * (m - 2)) * Rat(mid * mid);
        Rat lhs = pairwise(del);
        bool eq = lhs == rhs;
        bool ok = lhs <= rhs;
        if (eq) {
          if (Rat(2 * del[0]) != Rat(d - mid) ||
              Rat(2 * del[m - 1]) != Rat(d - mid)) {
            ok = false;
          }
          for (int i = 1; i < m - 1; ++i) {
            if (Rat(del[i]) != Rat(mid, m - 2)) ok = false;
          }
        }
        g.count(ok, eq, "m=" + std::to_string(m) + " " + tuple_str(del));
      });
    }
  }
}

// I3: both edge entries at least q, branch split at mq <= d.
void grid_I3(i64 N, GridState& g) {
  std::vector<i64> cur;
  for (int m = 2; m <= 6; ++m) {
    for (i64 d = 0; d <= N; ++d) {
      compositions(d, m, cur, [&](const std::vector<i64>& del) {
        Rat lhs = pairwise(del);
        for (i64 q = 0; q <= std::min(del[0], del[m - 1]); ++q) {
          Rat rhs;
          bool eq_shape_ok = true;
          if (m * q <= d) {
            rhs = Rat(m - 1, 2LL * m) * Rat(d * d);
            for (i64 x : del) {
              if (Rat(x) != Rat(d, m)) eq_shape_ok = false;
            }
          } else {
            rhs = Rat((d - q) * (d - q)) -
                  Rat(m - 1, 2LL * (m - 2)) * rat_sq(Rat(d - 2 * q));
            if (del[0] != q || del[m - 1] != q) eq_shape_ok = false;
            for (int i = 1; i < m - 1; ++i) {
              if (Rat(del[i]) != Rat(d - 2 * q, m - 2)) eq_shape_ok = false;
            }
          }
          bool eq = lhs == rhs;
          bool ok = lhs <= rhs && (!eq || eq_shape_ok);
          g.count(ok, eq, "m=" + std::to_string(m) +
                              " q=" + std::to_string(q) + " " +
                              tuple_str(del));
        }
      });
    }
  }
}

// I4: the shifted inequality (shifted_bound_sides) with its equality
// characterization per branch.
void grid_I4(i64 N, GridState& g) {
  std::vector<i64> cur;
  for (int m = 2; m <= 6; ++m) {
    for (i64 d = 0; d <= N; ++d) {
      compositions(d, m, cur, [&](const std::vector<i64>& del) {
        for (i64 q = 0; q <= del[0]; ++q) {
          auto [lhs, rhs] = shifted_bound_sides(q, del);
          bool eq = lhs == rhs;
          bool eq_shape_ok = true;
          if ((m - 1) * q <= d) {
            for (int i = 0; i < m - 1; ++i) {
              if (Rat(del[i]) != Rat(d + q, m)) eq_shape_ok = false;
            }
            if (Rat(del[m - 1]) != Rat(d - (m - 1) * q, m)) {
              eq_shape_ok = false;
            }
          } else {
            if (del[0] != q || del[m - 1] != 0) eq_shape_ok = false;
            for (int i = 1; i < m - 1; ++i) {
              if (Rat(del[i]) != Rat(d - q, m - 2)) eq_shape_ok = false;
            }
          }
          bool ok = lhs <= rhs && (!eq || eq_shape_ok);
          g.count(ok, eq, "m=" + std::to_string(m) +
                              " q=" + std::to_string(q) + " " +
                              tuple_str(del));
        }
      });
    }
  }
}

// I5: the half-square corollary; equality forces q = d.
void grid_I5(i64 N, GridState& g) {
  std::vector<i64> cur;
  for (int m = 2; m <= 6; ++m) {
    for (i64 d = 0; d <= N; ++d) {
      compositions(d, m, cur, [&](const std::vector<i64>& del) {
        for (i64 q = 0; q <= del[0]; ++q) {
          Rat lhs = pairwise(del) - Rat(del[m - 1]) * Rat(q);
          Rat rhs = Rat(d * d - q * q, 2);
          bool eq = lhs == rhs;
          bool ok = lhs <= rhs && (!eq || q == d);
          g.count(ok, eq, "m=" + std::to_string(m) +
                              " q=" + std::to_string(q) + " " +
                              tuple_str(del));
        }
      });
    }
  }
}

bool f_equality_shape(const std::array<int, 3>& m, i64 d,
                      const std::array<Rat, 4>& pp) {
  Rat delta(0);
  for (int mi : m) delta += Rat(1, mi - 1);
  if (delta != Rat(1) || pp[0] != Rat(0)) return false;
  for (int i = 0; i < 3; ++i) {
    // invert p_i = (m_i/(m_i-1)) lambda - d
    Rat lam = Rat(m[i] - 1, m[i]) * (Rat(d) + pp[i + 1]);
    if (lam < Rat(m[i] - 1, m[i]) * Rat(d) || lam > Rat(d)) continue;
    bool all = true;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      if (pp[j + 1] != Rat(d) - Rat(m[j] - 2, m[j] - 1) * lam) all = false;
    }
    if (all) return true;
  }
  return false;
}

// I6: f(p, p_1, p_2, p_3) <= 2 d^2 over arm-length triples with
// sum 1/(m_i - 1) >= 1, on the integer grid and on the quarter grid
// (all coordinates scaled by 4).  O(C(4d+3, 3)) points per (triple, d).
void grid_I6(i64 N, GridState& g) {
  std::vector<std::array<int, 3>> triples;
  for (int m1 = 2; m1 <= 6; ++m1) {
    for (int m2 = m1; m2 <= 6; ++m2) {
      for (int m3 = m2; m3 <= 6; ++m3) {
        Rat delta = Rat(1, m1 - 1) + Rat(1, m2 - 1) + Rat(1, m3 - 1);
        if (delta >= Rat(1)) triples.push_back({m1, m2, m3});
      }
    }
  }
  std::vector<i64> cur;
  for (const auto& m : triples) {
    std::string mstr = "m=(" + std::to_string(m[0]) + "," +
                       std::to_string(m[1]) + "," + std::to_string(m[2]) +
                       ")";
    for (i64 d = 1; d <= N; ++d) {
      for (int denom : {1, 4}) {
        compositions(d * denom, 4, cur, [&](const std::vector<i64>& raw) {
          std::array<Rat, 4> pp{Rat(raw[0], denom), Rat(raw[1], denom),
                                Rat(raw[2], denom), Rat(raw[3], denom)};
          Rat f(0);
          for (int i = 0; i < 3; ++i) f += g_branch(m[i], pp[i + 1], d);
          Rat rhs(2 * d * d);
          bool eq = f == rhs;
          bool ok = f <= rhs && (!eq || f_equality_shape(m, d, pp));
          g.count(ok, eq, mstr + " d=" + std::to_string(d) + " /" +
                              std::to_string(denom) + " " + tuple_str(raw));
        });
      }
    }
  }
}

}  // namespace

LemmaReport verify_lemma_grid(const std::string& lemma_id, i64 max_total) {
  if (max_total < 0 || max_total > 40) {
    throw BudgetExceededError("verify_lemma_grid: max_total out of range");
  }
  GridState g;
  g.rep.lemma_id = lemma_id;
  if (lemma_id == "I1") {
    grid_I1(max_total, g);
  } else if (lemma_id == "I2") {
    grid_I2(max_total, g);
  } else if (lemma_id == "I3") {
    grid_I3(max_total, g);
  } else if (lemma_id == "I4") {
    grid_I4(max_total, g);
  } else if (lemma_id == "I5") {
    grid_I5(max_total, g);
  } else if (lemma_id == "I6") {
    grid_I6(max_total, g);
  } else {
    throw std::invalid_argument("verify_lemma_grid: unknown id " + lemma_id);
  }
  g.rep.pass = g.rep.counterexamples == 0;
  return g.rep;
}

}  // namespace canvar
