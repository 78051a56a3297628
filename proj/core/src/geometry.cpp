#include "canvar/geometry.hpp"

#include <algorithm>
#include <limits>
#include <thread>
#include <unordered_map>

namespace canvar {

namespace {

struct AbortEnumeration {};

// Walks every d' in P below d with d - d' in R + Q.  For fixed endpoint
// values (d'_alpha, d'_omega) the arm interiors are weakly decreasing
// sequences; the R + Q test on d - d' enters as a shared budget on the
// per-arm deficits q_i.
template <typename Fn>
void walk_pruned(const CanonicalType& t, const DimVector& d, Fn&& fn) {
  const int n = t.arm_count();

  if (in_RQ(t, d)) {
    SplitRecord rec{DimVector(t), d, 0};
    fn(rec);
  }

  DimVector dp(t);
  for (i64 dpa = 1; dpa <= d.alpha; ++dpa) {
    const i64 dsa = d.alpha - dpa;  // d''_alpha
    for (i64 dpo = 0; dpo <= std::min(d.omega, dpa - 1); ++dpo) {
      const i64 dso = d.omega - dpo;
      if (dso < dsa) continue;  // p_omega(d'') would be negative
      dp.alpha = dpa;
      dp.omega = dpo;

      // rec_arm(i, remaining_budget): fill arm i and descend.
      std::function<void(int, i64)> rec_arm = [&](int i, i64 rb) {
        if (i > n) {
          SplitRecord rec;
          rec.dprime = dp;
          rec.dsecond = d - dp;
          rec.value = ringel_form(t, rec.dsecond, rec.dprime);
          fn(rec);
          return;
        }
        const int k = t.arm_length(i) - 1;
        auto& vals = dp.arm[i - 1];
        // rec_pos(j, prev, q): entries v_1..v_{j-1} chosen, q = partial
        // deficit max(0, max(dsa - d''_{i,l})) so far.
        std::function<void(int, i64, i64)> rec_pos = [&](int j, i64 prev,
                                                         i64 q) {
          if (j > k) {
            rec_arm(i + 1, rb - q);
            return;
          }
          const i64 dij = d.at(i, j);
          const i64 hi = std::min(prev, dij);
          // deficit grows with v, so stop once it busts the budget
          for (i64 v = dpo; v <= hi; ++v) {
            i64 q2 = std::max(q, dsa - (dij - v));
            if (q2 > rb) break;
            vals[j - 1] = v;
            rec_pos(j + 1, v, q2);
          }
        };
        rec_pos(1, dpa, 0);
      };
      rec_arm(1, dsa);
    }
  }
}

void walk_naive(const CanonicalType& t, const DimVector& d,
                const std::function<void(const SplitRecord&)>& fn,
                i64 budget) {
  __int128 cells = 1;
  std::vector<i64> caps;
  caps.push_back(d.alpha);
  for (const auto& a : d.arm) caps.insert(caps.end(), a.begin(), a.end());
  caps.push_back(d.omega);
  for (i64 c : caps) {
    cells *= (c + 1);
    if (cells > budget) {
      throw BudgetExceededError("naive split enumeration over budget");
    }
  }

  std::vector<i64> cur(caps.size(), 0);
  auto to_dimvector = [&]() {
    DimVector v(t);
    size_t idx = 0;
    v.alpha = cur[idx++];
    for (auto& a : v.arm) {
      for (auto& e : a) e = cur[idx++];
    }
    v.omega = cur[idx++];
    return v;
  };
  for (;;) {
    DimVector dprime = to_dimvector();
    DimVector dsecond = d - dprime;
    if (in_P(t, dprime) && in_RQ(t, dsecond)) {
      fn(SplitRecord{dprime, dsecond,
                     ringel_form(t, dsecond, dprime)});
    }
    size_t j = 0;
    while (j < cur.size() && cur[j] == caps[j]) cur[j++] = 0;
    if (j == cur.size()) break;
    ++cur[j];
  }
}

}  // namespace

void enumerate_splits(const CanonicalType& t, const DimVector& d,
                      EnumMode mode,
                      const std::function<void(const SplitRecord&)>& fn,
                      i64 budget) {
  require_shape(t, d, "enumerate_splits");
  if (!d.is_nonnegative()) {
    throw std::invalid_argument("enumerate_splits: negative entry");
  }
  if (mode == EnumMode::Naive) {
    walk_naive(t, d, fn, budget);
  } else {
    walk_pruned(t, d, fn);
  }
}

SplitStats split_stats(const CanonicalType& t, const DimVector& d) {
  require_shape(t, d, "split_stats");
  const int n = t.arm_count();

  SplitStats st;
  st.max_value = std::numeric_limits<i64>::min();

  auto account = [&](i64 value, i64 count) {
    st.split_count += count;
    if (value == 0) st.zero_value_count += count;
    st.max_value = std::max(st.max_value, value);
  };

  if (in_RQ(t, d)) account(0, 1);  // trivial split (0, d)

  // value -> multiplicity, per deficit budget already used
  using ValueTable = std::unordered_map<i64, i64>;

  for (i64 dpa = 1; dpa <= d.alpha; ++dpa) {
    const i64 dsa = d.alpha - dpa;
    for (i64 dpo = 0; dpo <= std::min(d.omega, dpa - 1); ++dpo) {
      const i64 dso = d.omega - dpo;
      if (dso < dsa) continue;
      // fixed part of <d'', d'> for these endpoint choices
      const i64 global = checked_i64(static_cast<__int128>(dsa) * dpa +
                                     static_cast<__int128>(dso) * dpo +
                                     static_cast<__int128>(n - 2) * dso * dpa);

      std::vector<ValueTable> state(dsa + 1);
      state[0][0] = 1;
      bool dead = false;

      for (int i = 1; i <= n && !dead; ++i) {
        const int k = t.arm_length(i) - 1;
        // (deficit, contribution) for every monotone interior choice
        std::vector<std::pair<i64, i64>> options;
        std::vector<i64> vs(k);
        std::function<void(int, i64, i64, i64)> rec_pos =
            [&](int j, i64 prev, i64 q, i64 contrib) {
              if (j > k) {
                options.emplace_back(q, contrib - dso * vs[k - 1]);
                return;
              }
              const i64 dij = d.at(i, j);
              const i64 hi = std::min(prev, dij);
              for (i64 v = dpo; v <= hi; ++v) {
                i64 q2 = std::max(q, dsa - (dij - v));
                if (q2 > dsa) break;
                vs[j - 1] = v;
                rec_pos(j + 1, v, q2, contrib + (dij - v) * (v - prev));
              }
            };
        rec_pos(1, dpa, 0, 0);
        if (options.empty()) {
          dead = true;
          break;
        }
        std::vector<ValueTable> next(dsa + 1);
        for (i64 used = 0; used <= dsa; ++used) {
          if (state[used].empty()) continue;
          for (const auto& [q, c] : options) {
            if (used + q > dsa) continue;
            auto& tgt = next[used + q];
            for (const auto& [v, cnt] : state[used]) tgt[v + c] += cnt;
          }
        }
        state.swap(next);
      }
      if (dead) continue;
      for (i64 used = 0; used <= dsa; ++used) {
        for (const auto& [v, cnt] : state[used]) account(global + v, cnt);
      }
    }
  }

  if (st.split_count == 0) st.max_value = 0;
  return st;
}

GeometryVerdict decide(const CanonicalType& t, const DimVector& d,
                       const DecideOptions& opts) {
  require_shape(t, d, "decide");
  const bool regular = in_R(t, d);
  if (!regular && !opts.relaxed) {
    throw NotRegularError("decide: dimension vector is not regular");
  }

  SplitStats st = split_stats(t, d);
  GeometryVerdict v;
  v.a = a_dim(t, d);
  v.max_value = st.max_value;
  v.dim = checked_i64(static_cast<__int128>(v.a) + st.max_value);
  v.equality_pair_count = st.zero_value_count;
  v.split_count = st.split_count;
  v.is_complete_intersection = st.max_value <= 0;
  v.is_irreducible = st.max_value == 0 && st.zero_value_count == 1;
  if (regular) v.is_normal = v.is_irreducible;

  if (opts.max_witnesses > 0) {
    i64 visited = 0;
    try {
      walk_pruned(t, d, [&](const SplitRecord& rec) {
        if (rec.value == st.max_value) {
          v.witnesses.push_back(rec);
          if (static_cast<int>(v.witnesses.size()) >= opts.max_witnesses) {
            throw AbortEnumeration{};
          }
        }
        if (++visited >= opts.witness_scan_budget) throw AbortEnumeration{};
      });
    } catch (const AbortEnumeration&) {
    }
  }
  return v;
}

void for_each_family_vector(const CanonicalType& t, i64 bound, Family family,
                            const std::function<void(const DimVector&)>& fn) {
  if (bound < 0) throw std::invalid_argument("for_each_family_vector: bound");
  const int n = t.arm_count();
  const i64 lo = family == Family::SincereRegular ? 1 : 0;

  DimVector d(t);
  for (i64 c = lo; c <= bound; ++c) {
    d.alpha = c;
    d.omega = c;
    // rec(i, rb): choose arm i interior, rb = remaining deficit budget
    std::function<void(int, i64)> rec = [&](int i, i64 rb) {
      if (i > n) {
        if (family == Family::Rprime && rb == 0) return;  // p^d must be > 0
        if (!d.is_zero()) fn(d);
        return;
      }
      const int k = t.arm_length(i) - 1;
      auto& vals = d.arm[i - 1];
      std::function<void(int, i64)> rec_pos = [&](int j, i64 q) {
        if (j > k) {
          rec(i + 1, rb - q);
          return;
        }
        for (i64 v = lo; v <= bound; ++v) {
          i64 q2 = std::max(q, c - v);
          if (q2 > rb) continue;  // larger v shrinks the deficit
          vals[j - 1] = v;
          rec_pos(j + 1, q2);
        }
      };
      rec_pos(1, 0);
    };
    rec(1, c);
  }
}

std::pair<Rat, Rat> threshold(const CanonicalType& t) {
  const int n = t.arm_count();
  Rat a(0), b(0);
  for (int i = 1; i <= n; ++i) {
    a += Rat(1, t.arm_length(i) - 1);
    b += Rat(1, t.arm_length(i));
  }
  a -= Rat(2 * n - 5);
  b -= Rat(n - 2);
  return {a, b};
}

ScanReport scan_family(const CanonicalType& t, i64 bound, Family family,
                       const ScanOptions& opts) {
  ScanReport rep;
  const Rat thr = threshold(t).first;
  const bool is22222 = t.arms() == std::vector<int>{2, 2, 2, 2, 2};
  rep.predicted_all_ci = thr >= Rat(0);
  switch (family) {
    case Family::Regular:
      rep.predicted_all_normal = thr > Rat(0);
      break;
    case Family::SincereRegular:
      rep.predicted_all_normal = thr > Rat(0) || is22222;
      break;
    case Family::Rprime:
      rep.predicted_all_normal = thr >= Rat(0);
      break;
  }

  // Workers replay the (deterministic) family enumeration independently
  // and keep every jobs-th vector, so nothing is materialized; 20M+
  // vector scans then run in constant memory.
  struct Partial {
    i64 total = 0;
    i64 ci_failures = 0;
    i64 normality_failures = 0;
    std::optional<i64> first_ci;
    std::optional<i64> first_norm;
    DimVector first_ci_vec;
    DimVector first_norm_vec;
    std::vector<std::pair<i64, DimVector>> witnesses;
  };

  const int jobs = std::max(1, opts.jobs);
  std::vector<Partial> parts(jobs);
  auto work = [&](int w) {
    Partial& p = parts[w];
    i64 idx = -1;
    for_each_family_vector(t, bound, family, [&](const DimVector& d) {
      ++idx;
      if (idx % jobs != w) return;
      ++p.total;
      SplitStats st = split_stats(t, d);
      const bool ci = st.max_value <= 0;
      const bool normal = st.max_value == 0 && st.zero_value_count == 1;
      if (!ci) {
        ++p.ci_failures;
        if (!p.first_ci) {
          p.first_ci = idx;
          p.first_ci_vec = d;
        }
      }
      if (!normal) {
        ++p.normality_failures;
        if (!p.first_norm) {
          p.first_norm = idx;
          p.first_norm_vec = d;
        }
        if (static_cast<int>(p.witnesses.size()) < opts.max_failure_witnesses) {
          p.witnesses.emplace_back(idx, d);
        }
      }
    });
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }

  std::optional<i64> first_ci, first_norm;
  std::vector<std::pair<i64, DimVector>> witnesses;
  for (const auto& p : parts) {
    rep.total_vectors += p.total;
    rep.ci_failures += p.ci_failures;
    rep.normality_failures += p.normality_failures;
    if (p.first_ci && (!first_ci || *p.first_ci < *first_ci)) {
      first_ci = p.first_ci;
      rep.first_ci_failure = p.first_ci_vec;
    }
    if (p.first_norm && (!first_norm || *p.first_norm < *first_norm)) {
      first_norm = p.first_norm;
      rep.first_normality_failure = p.first_norm_vec;
    }
    witnesses.insert(witnesses.end(), p.witnesses.begin(), p.witnesses.end());
  }
  std::sort(witnesses.begin(), witnesses.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [idx, d] : witnesses) {
    if (static_cast<int>(rep.failure_witnesses.size()) >=
        opts.max_failure_witnesses) {
      break;
    }
    rep.failure_witnesses.push_back(std::move(d));
  }
  rep.consistent = (!rep.predicted_all_ci || rep.ci_failures == 0) &&
                   (!rep.predicted_all_normal || rep.normality_failures == 0);
  rep.confirmed = ((rep.ci_failures == 0) == rep.predicted_all_ci) &&
                  ((rep.normality_failures == 0) == rep.predicted_all_normal);
  return rep;
}

}  // namespace canvar
