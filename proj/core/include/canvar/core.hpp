#pragma once

// Star-shaped bound quivers with n arms joining a source vertex alpha to a
// sink vertex omega, together with the integer combinatorics living on their
// dimension vectors: the Ringel bilinear form, the expected variety dimension
// a(d), and the distinguished vectors h and e_{i,j}.
//
// Vertex order is fixed everywhere: alpha, then arm 1 inner-to-outer,
// ..., then arm n, then omega.  All JSON encodings and matrix indexings
// rely on this order.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace canvar {

using i64 = long long;
using Rat = boost::rational<i64>;

// Accumulations run in 128 bits; results are checked back into i64 so
// overflow is impossible or detected.
i64 checked_i64(__int128 v);

// Arm-length tuple m = (m_1, ..., m_n); n >= 3 and every m_i >= 2.
class CanonicalType {
 public:
  explicit CanonicalType(std::vector<int> arms);

  int arm_count() const { return static_cast<int>(arms_.size()); }
  int arm_length(int i) const { return arms_.at(i - 1); }  // i in [1, n]
  const std::vector<int>& arms() const { return arms_; }

  int vertex_count() const;    // 2 + sum (m_i - 1)
  int arrow_count() const;     // sum m_i
  int relation_count() const;  // n - 2

  bool operator==(const CanonicalType&) const = default;

 private:
  std::vector<int> arms_;
};

struct Vertex {
  enum class Kind { Alpha, Arm, Omega };
  Kind kind = Kind::Alpha;
  int arm = 0;  // 1-based, valid for Kind::Arm
  int pos = 0;  // 1-based position on the arm, in [1, m_i - 1]

  static Vertex alpha() { return {Kind::Alpha, 0, 0}; }
  static Vertex omega() { return {Kind::Omega, 0, 0}; }
  static Vertex arm_vertex(int i, int j) { return {Kind::Arm, i, j}; }
  bool operator==(const Vertex&) const = default;
};

struct Arrow {
  int source = 0;  // indices into BoundQuiver::vertices
  int target = 0;
  int arm = 0;  // the arm this arrow lies on (1-based)
  int pos = 0;  // arrow gamma_{arm,pos}, pos in [1, m_arm]
};

// Relation r (r in [3, n]): arm-1 composite + lambda_r * arm-2 composite
// - arm-r composite.  Paths are stored as arrow-index lists; lambda stays
// symbolic here, concrete values are only substituted in repcalc.
struct Relation {
  int r = 0;
  std::vector<int> arm1_path;
  std::vector<int> arm2_path;
  std::vector<int> armr_path;
};

struct BoundQuiver {
  CanonicalType type;
  std::vector<Vertex> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
};

BoundQuiver build_quiver(const CanonicalType& t);

// Nonnegative integer vector over the vertices of Delta(m).  Interior arm
// entries are stored per arm; (i, 0) aliases alpha and (i, m_i) aliases
// omega through at().
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(const CanonicalType& t);

  i64 alpha = 0;
  std::vector<std::vector<i64>> arm;  // arm[i-1] has m_i - 1 entries
  i64 omega = 0;

  bool matches(const CanonicalType& t) const;

  i64 at(int i, int j) const {
    if (j == 0) return alpha;
    const auto& a = arm[i - 1];
    if (j == static_cast<int>(a.size()) + 1) return omega;
    return a[j - 1];
  }
  void set(int i, int j, i64 v) {
    if (j == 0) {
      alpha = v;
    } else if (j == static_cast<int>(arm[i - 1].size()) + 1) {
      omega = v;
    } else {
      arm[i - 1][j - 1] = v;
    }
  }

  bool is_zero() const;
  bool is_nonnegative() const;
  i64 entry_sum() const;
  i64 max_entry() const;

  DimVector operator+(const DimVector& o) const;
  DimVector operator-(const DimVector& o) const;
  DimVector operator*(i64 c) const;
  bool operator==(const DimVector&) const = default;
};

// Throws std::invalid_argument if the shapes of a and b do not match t.
void require_shape(const CanonicalType& t, const DimVector& d,
                   const char* what);

// <a, b> = sum_x a_x b_x - sum_gamma a_{s gamma} b_{t gamma}
//        + sum_rho a_{s rho} b_{t rho}
i64 ringel_form(const CanonicalType& t, const DimVector& a, const DimVector& b);

// a(d) = sum_gamma d_{s gamma} d_{t gamma} - sum_rho d_{s rho} d_{t rho};
// equals sum_x d_x^2 - <d, d>.
i64 a_dim(const CanonicalType& t, const DimVector& d);

DimVector special_vector_h(const CanonicalType& t);
// e_{i,j} for j in [1, m_i]: unit vector at (i, j) when j < m_i, and
// h - sum of the arm-i units when j = m_i.
DimVector special_vector_e(const CanonicalType& t, int i, int j);
// Unit vector at a single vertex (alpha / omega / interior).
DimVector unit_vector(const CanonicalType& t, const Vertex& v);

}  // namespace canvar
