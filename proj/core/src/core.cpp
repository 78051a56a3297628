#include "canvar/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace canvar {

i64 checked_i64(__int128 v) {
  if (v > std::numeric_limits<i64>::max() ||
      v < std::numeric_limits<i64>::min()) {
    throw std::overflow_error("integer overflow in dimension arithmetic");
  }
  return static_cast<i64>(v);
}

CanonicalType::CanonicalType(std::vector<int> arms) : arms_(std::move(arms)) {
  if (arms_.size() < 3) {
    throw std::invalid_argument("canonical type needs at least 3 arms");
  }
  for (int m : arms_) {
    if (m < 2) throw std::invalid_argument("every arm length must be >= 2");
  }
}

int CanonicalType::vertex_count() const {
  int v = 2;
  for (int m : arms_) v += m - 1;
  return v;
}

int CanonicalType::arrow_count() const {
  return std::accumulate(arms_.begin(), arms_.end(), 0);
}

int CanonicalType::relation_count() const { return arm_count() - 2; }

BoundQuiver build_quiver(const CanonicalType& t) {
  BoundQuiver q{t, {}, {}, {}};
  const int n = t.arm_count();

  q.vertices.push_back(Vertex::alpha());
  std::vector<std::vector<int>> arm_vertex_idx(n + 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= t.arm_length(i) - 1; ++j) {
      arm_vertex_idx[i].push_back(static_cast<int>(q.vertices.size()));
      q.vertices.push_back(Vertex::arm_vertex(i, j));
    }
  }
  const int omega_idx = static_cast<int>(q.vertices.size());
  q.vertices.push_back(Vertex::omega());

  auto vertex_index = [&](int i, int j) {
    if (j == 0) return 0;
    if (j == t.arm_length(i)) return omega_idx;
    return arm_vertex_idx[i][j - 1];
  };

  // gamma_{i,j} runs from (i, j) to (i, j-1); every arm points toward alpha.
  std::vector<std::vector<int>> arm_arrow_idx(n + 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= t.arm_length(i); ++j) {
      arm_arrow_idx[i].push_back(static_cast<int>(q.arrows.size()));
      q.arrows.push_back(Arrow{vertex_index(i, j), vertex_index(i, j - 1), i, j});
    }
  }

  // The arm composite gamma_{i,1} ... gamma_{i,m_i} read left to right is the
  // path from omega to alpha; store it outermost arrow last.
  auto composite = [&](int i) {
    std::vector<int> p = arm_arrow_idx[i];
    return p;  // index pos-1 holds gamma_{i,pos}
  };
  for (int r = 3; r <= n; ++r) {
    q.relations.push_back(Relation{r, composite(1), composite(2), composite(r)});
  }
  return q;
}

DimVector::DimVector(const CanonicalType& t) {
  arm.resize(t.arm_count());
  for (int i = 1; i <= t.arm_count(); ++i) {
    arm[i - 1].assign(t.arm_length(i) - 1, 0);
  }
}

bool DimVector::matches(const CanonicalType& t) const {
  if (static_cast<int>(arm.size()) != t.arm_count()) return false;
  for (int i = 1; i <= t.arm_count(); ++i) {
    if (static_cast<int>(arm[i - 1].size()) != t.arm_length(i) - 1) return false;
  }
  return true;
}

bool DimVector::is_zero() const {
  if (alpha != 0 || omega != 0) return false;
  for (const auto& a : arm) {
    for (i64 v : a) {
      if (v != 0) return false;
    }
  }
  return true;
}

bool DimVector::is_nonnegative() const {
  if (alpha < 0 || omega < 0) return false;
  for (const auto& a : arm) {
    for (i64 v : a) {
      if (v < 0) return false;
    }
  }
  return true;
}

i64 DimVector::entry_sum() const {
  __int128 s = alpha;
  s += omega;
  for (const auto& a : arm) {
    for (i64 v : a) s += v;
  }
  return checked_i64(s);
}

i64 DimVector::max_entry() const {
  i64 m = std::max(alpha, omega);
  for (const auto& a : arm) {
    for (i64 v : a) m = std::max(m, v);
  }
  return m;
}

DimVector DimVector::operator+(const DimVector& o) const {
  DimVector r = *this;
  r.alpha += o.alpha;
  r.omega += o.omega;
  for (size_t i = 0; i < arm.size(); ++i) {
    for (size_t j = 0; j < arm[i].size(); ++j) r.arm[i][j] += o.arm[i][j];
  }
  return r;
}

DimVector DimVector::operator-(const DimVector& o) const {
  DimVector r = *this;
  r.alpha -= o.alpha;
  r.omega -= o.omega;
  for (size_t i = 0; i < arm.size(); ++i) {
    for (size_t j = 0; j < arm[i].size(); ++j) r.arm[i][j] -= o.arm[i][j];
  }
  return r;
}

DimVector DimVector::operator*(i64 c) const {
  DimVector r = *this;
  r.alpha = checked_i64(static_cast<__int128>(alpha) * c);
  r.omega = checked_i64(static_cast<__int128>(omega) * c);
  for (size_t i = 0; i < arm.size(); ++i) {
    for (size_t j = 0; j < arm[i].size(); ++j) {
      r.arm[i][j] = checked_i64(static_cast<__int128>(arm[i][j]) * c);
    }
  }
  return r;
}

void require_shape(const CanonicalType& t, const DimVector& d,
                   const char* what) {
  if (!d.matches(t)) {
    throw std::invalid_argument(std::string(what) +
                                ": dimension vector shape does not match type");
  }
}

i64 ringel_form(const CanonicalType& t, const DimVector& a,
                const DimVector& b) {
  require_shape(t, a, "ringel_form");
  require_shape(t, b, "ringel_form");
  const int n = t.arm_count();
  __int128 s = static_cast<__int128>(a.alpha) * b.alpha +
               static_cast<__int128>(a.omega) * b.omega;
  for (int i = 1; i <= n; ++i) {
    const int m = t.arm_length(i);
    for (int j = 1; j <= m - 1; ++j) {
      s += static_cast<__int128>(a.at(i, j)) * b.at(i, j);
    }
    // arrows gamma_{i,j}: source (i, j), target (i, j-1)
    for (int j = 1; j <= m; ++j) {
      s -= static_cast<__int128>(a.at(i, j)) * b.at(i, j - 1);
    }
  }
  // relations run from omega to alpha
  s += static_cast<__int128>(n - 2) * a.omega * b.alpha;
  return checked_i64(s);
}

i64 a_dim(const CanonicalType& t, const DimVector& d) {
  require_shape(t, d, "a_dim");
  const int n = t.arm_count();
  __int128 s = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= t.arm_length(i); ++j) {
      s += static_cast<__int128>(d.at(i, j)) * d.at(i, j - 1);
    }
  }
  s -= static_cast<__int128>(n - 2) * d.omega * d.alpha;
  return checked_i64(s);
}

DimVector special_vector_h(const CanonicalType& t) {
  DimVector h(t);
  h.alpha = 1;
  h.omega = 1;
  for (auto& a : h.arm) std::fill(a.begin(), a.end(), 1);
  return h;
}

DimVector special_vector_e(const CanonicalType& t, int i, int j) {
  if (i < 1 || i > t.arm_count() || j < 1 || j > t.arm_length(i)) {
    throw std::out_of_range("special_vector_e: arm coordinate out of range");
  }
  if (j < t.arm_length(i)) {
    DimVector e(t);
    e.arm[i - 1][j - 1] = 1;
    return e;
  }
  DimVector e = special_vector_h(t);
  std::fill(e.arm[i - 1].begin(), e.arm[i - 1].end(), 0);
  return e;
}

DimVector unit_vector(const CanonicalType& t, const Vertex& v) {
  DimVector e(t);
  switch (v.kind) {
    case Vertex::Kind::Alpha:
      e.alpha = 1;
      break;
    case Vertex::Kind::Omega:
      e.omega = 1;
      break;
    case Vertex::Kind::Arm:
      e.arm.at(v.arm - 1).at(v.pos - 1) = 1;
      break;
  }
  return e;
}

}  // namespace canvar
