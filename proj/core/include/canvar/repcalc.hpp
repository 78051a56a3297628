#pragma once

// Explicit points of the module variety over a prime field and exact
// homological linear algebra on them: Hom, Ext^1 and Ext^2 dimensions
// through the Z-space of Bongartz, extensions by block matrices, and
// seeded random sampling.  Everything is dense Gaussian elimination mod
// a prime (default 32003), exact by construction.

#include <optional>
#include <random>

#include "canvar/core.hpp"

namespace canvar {

// Row-major matrix over F_p; entries always reduced into [0, p).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<i64> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  bool is_zero() const;
  bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y, i64 p);
Mat mat_add(const Mat& x, const Mat& y, i64 p);
Mat mat_scale(const Mat& x, i64 c, i64 p);
Mat mat_sub(const Mat& x, const Mat& y, i64 p);
i64 mat_rank(Mat m, i64 p);
// Particular solution of a x = b (matrix unknowns, column by column), or
// nullopt when inconsistent.
std::optional<Mat> mat_solve(const Mat& a, const Mat& b, i64 p);

// Field characteristic and the relation scalars lambda_r, r in [3, n];
// lambda_1 = 0 and lambda_2 = infinity are the implicit exceptional
// points of arms 1 and 2.
struct TubeParams {
  i64 prime = 32003;
  std::vector<i64> lambda;  // lambda[r-3] for r in [3, n]

  static TubeParams defaults(const CanonicalType& t, i64 prime = 32003);
  i64 lambda_r(int r) const { return lambda.at(r - 3); }
};

// A point of the module variety: one matrix per arrow, of size
// d_{t gamma} x d_{s gamma}, with every relation matrix zero.
struct Rep {
  CanonicalType type{std::vector<int>{2, 2, 2}};
  TubeParams params;
  DimVector dim;
  std::vector<Mat> mats;  // indexed like BoundQuiver::arrows
};

// Product over a path stored as an arrow-index list (target side first).
Mat path_matrix(const Rep& rep, const std::vector<int>& path);
bool check_relations(const Rep& rep);

i64 hom_dim(const Rep& a, const Rep& b);

// dim Z(a, b): per-arrow unknowns Z_gamma of size (dim b)_{t gamma} x
// (dim a)_{s gamma} with Z_rho = 0, where paths act by b on the left
// and a on the right.
i64 z_space_dim(const Rep& a, const Rep& b);

// [a, b]^1 = z_space_dim(a, b) - sum_x (dim a)_x (dim b)_x + hom_dim(a, b)
i64 ext1_dim(const Rep& a, const Rep& b);
// [a, b]^2 = z_space_dim(a, b) - sum_gamma (dim a)_{s gamma}
//            (dim b)_{t gamma} + (n - 2) (dim a)_omega (dim b)_alpha
i64 ext2_dim(const Rep& a, const Rep& b);

struct ZElement {
  std::vector<Mat> mats;  // indexed like BoundQuiver::arrows
};

// Basis of Z(msecond, mprime); elements fit build_extension below.
std::vector<ZElement> z_space_basis(const Rep& msecond, const Rep& mprime);

// M_gamma = [[M'_gamma, Z_gamma], [0, M''_gamma]]; middle term of the
// sequence 0 -> M' -> M -> M'' -> 0.
Rep build_extension(const Rep& mprime, const Rep& msecond,
                    const ZElement& z);

Rep build_simple(const CanonicalType& t, const TubeParams& params,
                 const Vertex& x);
// j < m_i: the simple at vertex (i, j).  j = m_i: the arm-i mouth module
// with dimension vector e_{i,m_i} and scalar arm composites.
Rep build_arm_regular(const CanonicalType& t, const TubeParams& params,
                      int i, int j);
// Homogeneous module of dimension vector h with arm composites a, b and
// a + lambda_r b; all three must stay nonzero.
Rep build_homogeneous(const CanonicalType& t, const TubeParams& params,
                      i64 a, i64 b);

// Random point with the given dimension vector: arms 1 and 2 and the
// outer arrows of the remaining arms are uniform, the innermost arrow of
// each arm r >= 3 is solved from the relation.  Deterministic in seed;
// nullopt after `retries` unsolvable attempts.
std::optional<Rep> sample_point(const CanonicalType& t,
                                const TubeParams& params, const DimVector& d,
                                std::uint64_t seed, int retries = 16);

}  // namespace canvar
