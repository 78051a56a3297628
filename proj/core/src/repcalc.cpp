#include "canvar/repcalc.hpp"

#include <algorithm>

namespace canvar {

namespace {

i64 mod_pow(i64 b, i64 e, i64 p) {
  i64 r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

i64 mod_inv(i64 x, i64 p) { return mod_pow(x, p - 2, p); }

i64 dim_of(const DimVector& d, const Vertex& v) {
  switch (v.kind) {
    case Vertex::Kind::Alpha:
      return d.alpha;
    case Vertex::Kind::Omega:
      return d.omega;
    case Vertex::Kind::Arm:
      return d.arm[v.arm - 1][v.pos - 1];
  }
  return 0;
}

Mat identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

// In-place row reduction; returns rank.  Used for both rank and
// nullspace computations.
i64 row_reduce(Mat& m, i64 p, std::vector<int>* pivot_cols = nullptr) {
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r) {
      if (m.at(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
    }
    i64 inv = mod_inv(m.at(row, col), p);
    for (int c = col; c < m.cols; ++c) m.at(row, c) = m.at(row, c) * inv % p;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      i64 f = m.at(r, col);
      for (int c = col; c < m.cols; ++c) {
        m.at(r, c) = (m.at(r, c) - f * m.at(row, c) % p + p * p) % p;
      }
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++row;
  }
  return row;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  }
  return t;
}

void require_compatible(const Rep& a, const Rep& b, const char* what) {
  if (!(a.type == b.type) || a.params.prime != b.params.prime) {
    throw std::invalid_argument(std::string(what) +
                                ": type or prime mismatch");
  }
}

}  // namespace

bool Mat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](i64 x) { return x == 0; });
}

Mat mat_mul(const Mat& x, const Mat& y, i64 p) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape");
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      i64 v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % p;
      }
    }
  }
  return r;
}

Mat mat_add(const Mat& x, const Mat& y, i64 p) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw std::invalid_argument("mat_add: shape");
  }
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = (r.a[i] + y.a[i]) % p;
  return r;
}

Mat mat_sub(const Mat& x, const Mat& y, i64 p) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw std::invalid_argument("mat_sub: shape");
  }
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) {
    r.a[i] = (r.a[i] - y.a[i] + p) % p;
  }
  return r;
}

Mat mat_scale(const Mat& x, i64 c, i64 p) {
  Mat r = x;
  c = ((c % p) + p) % p;
  for (i64& v : r.a) v = v * c % p;
  return r;
}

i64 mat_rank(Mat m, i64 p) { return row_reduce(m, p); }

std::optional<Mat> mat_solve(const Mat& a, const Mat& b, i64 p) {
  if (a.rows != b.rows) throw std::invalid_argument("mat_solve: shape");
  Mat aug(a.rows, a.cols + b.cols);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
    for (int c = 0; c < b.cols; ++c) aug.at(r, a.cols + c) = b.at(r, c);
  }
  std::vector<int> pivots;
  row_reduce(aug, p, &pivots);
  for (int c : pivots) {
    if (c >= a.cols) return std::nullopt;  // pivot in the rhs block
  }
  Mat x(a.cols, b.cols);
  for (size_t k = 0; k < pivots.size(); ++k) {
    for (int c = 0; c < b.cols; ++c) {
      x.at(pivots[k], c) = aug.at(static_cast<int>(k), a.cols + c);
    }
  }
  return x;
}

TubeParams TubeParams::defaults(const CanonicalType& t, i64 prime) {
  if (prime < 2 + t.arm_count()) {
    throw std::invalid_argument("TubeParams: prime too small");
  }
  TubeParams params;
  params.prime = prime;
  for (int r = 3; r <= t.arm_count(); ++r) {
    params.lambda.push_back((r - 2) % prime);
  }
  return params;
}

Mat path_matrix(const Rep& rep, const std::vector<int>& path) {
  BoundQuiver q = build_quiver(rep.type);
  if (path.empty()) throw std::invalid_argument("path_matrix: empty path");
  Mat m = rep.mats[path[0]];
  for (size_t i = 1; i < path.size(); ++i) {
    m = mat_mul(m, rep.mats[path[i]], rep.params.prime);
  }
  return m;
}

bool check_relations(const Rep& rep) {
  const i64 p = rep.params.prime;
  BoundQuiver q = build_quiver(rep.type);
  for (const Relation& rel : q.relations) {
    Mat m = mat_add(path_matrix(rep, rel.arm1_path),
                    mat_scale(path_matrix(rep, rel.arm2_path),
                              rep.params.lambda_r(rel.r), p),
                    p);
    m = mat_sub(m, path_matrix(rep, rel.armr_path), p);
    if (!m.is_zero()) return false;
  }
  return true;
}

i64 hom_dim(const Rep& a, const Rep& b) {
  require_compatible(a, b, "hom_dim");
  const i64 p = a.params.prime;
  BoundQuiver q = build_quiver(a.type);

  // unknowns: f_x of size (dim b)_x x (dim a)_x per vertex
  std::vector<int> offset(q.vertices.size() + 1, 0);
  for (size_t x = 0; x < q.vertices.size(); ++x) {
    offset[x + 1] =
        offset[x] + static_cast<int>(dim_of(b.dim, q.vertices[x]) *
                                     dim_of(a.dim, q.vertices[x]));
  }
  const int unknowns = offset.back();

  i64 rows = 0;
  for (size_t g = 0; g < q.arrows.size(); ++g) {
    rows += dim_of(b.dim, q.vertices[q.arrows[g].target]) *
            dim_of(a.dim, q.vertices[q.arrows[g].source]);
  }
  Mat sys(static_cast<int>(rows), unknowns);

  int row0 = 0;
  for (size_t g = 0; g < q.arrows.size(); ++g) {
    const Arrow& ar = q.arrows[g];
    const int bs = static_cast<int>(dim_of(b.dim, q.vertices[ar.source]));
    const int bt = static_cast<int>(dim_of(b.dim, q.vertices[ar.target]));
    const int as = static_cast<int>(dim_of(a.dim, q.vertices[ar.source]));
    const int at = static_cast<int>(dim_of(a.dim, q.vertices[ar.target]));
    const Mat& Ag = a.mats[g];  // at x as
    const Mat& Bg = b.mats[g];  // bt x bs
    // constraint f_t A_gamma - B_gamma f_s = 0, entry (r, c)
    for (int r = 0; r < bt; ++r) {
      for (int c = 0; c < as; ++c) {
        int row = row0 + r * as + c;
        // f_t contributes f_t[r][u] A[u][c]
        for (int u = 0; u < at; ++u) {
          int col = offset[ar.target] + r * at + u;
          sys.at(row, col) = (sys.at(row, col) + Ag.at(u, c)) % p;
        }
        // -B[r][u] f_s[u][c]
        for (int u = 0; u < bs; ++u) {
          int col = offset[ar.source] + u * as + c;
          sys.at(row, col) = (sys.at(row, col) - Bg.at(r, u) + p) % p;
        }
      }
    }
    row0 += bt * as;
  }
  i64 total = 0;
  for (size_t x = 0; x < q.vertices.size(); ++x) {
    total += dim_of(b.dim, q.vertices[x]) * dim_of(a.dim, q.vertices[x]);
  }
  return total - mat_rank(std::move(sys), p);
}

namespace {

struct ZSystem {
  std::vector<int> offset;  // unknown offsets per arrow
  int unknowns = 0;
  Mat sys;  // constraints x unknowns
};

// Z(a, b): Z_gamma of size (dim b)_{t gamma} x (dim a)_{s gamma},
// paths act by b on the left and a on the right, one block of rows of
// size (dim b)_alpha x (dim a)_omega per relation.
ZSystem z_system(const Rep& a, const Rep& b) {
  const i64 p = a.params.prime;
  BoundQuiver q = build_quiver(a.type);

  ZSystem zs;
  zs.offset.assign(q.arrows.size() + 1, 0);
  for (size_t g = 0; g < q.arrows.size(); ++g) {
    zs.offset[g + 1] =
        zs.offset[g] +
        static_cast<int>(dim_of(b.dim, q.vertices[q.arrows[g].target]) *
                         dim_of(a.dim, q.vertices[q.arrows[g].source]));
  }
  zs.unknowns = zs.offset.back();

  const int ra = static_cast<int>(b.dim.alpha);
  const int ca = static_cast<int>(a.dim.omega);
  zs.sys = Mat(static_cast<int>(q.relations.size()) * ra * ca, zs.unknowns);

  int rel_idx = 0;
  for (const Relation& rel : q.relations) {
    const int row0 = rel_idx * ra * ca;
    auto add_path = [&](const std::vector<int>& path, i64 coeff) {
      coeff = ((coeff % p) + p) % p;
      for (size_t i = 0; i < path.size(); ++i) {
        // left prefix in b, right suffix in a
        Mat L = identity(static_cast<int>(b.dim.alpha));
        for (size_t k = 0; k < i; ++k) L = mat_mul(L, b.mats[path[k]], p);
        const Arrow& ar = q.arrows[path[i]];
        const int zr = static_cast<int>(dim_of(b.dim, q.vertices[ar.target]));
        const int zc = static_cast<int>(dim_of(a.dim, q.vertices[ar.source]));
        Mat R = identity(zc);
        for (size_t k = i + 1; k < path.size(); ++k) {
          R = mat_mul(R, a.mats[path[k]], p);
        }
        for (int r = 0; r < ra; ++r) {
          for (int c = 0; c < ca; ++c) {
            const int row = row0 + r * ca + c;
            for (int u = 0; u < zr; ++u) {
              if (L.at(r, u) == 0) continue;
              for (int v = 0; v < zc; ++v) {
                if (R.at(v, c) == 0) continue;
                const int col = zs.offset[path[i]] + u * zc + v;
                zs.sys.at(row, col) =
                    (zs.sys.at(row, col) + coeff * L.at(r, u) % p * R.at(v, c)) %
                    p;
              }
            }
          }
        }
      }
    };
    add_path(rel.arm1_path, 1);
    add_path(rel.arm2_path, a.params.lambda_r(rel.r));
    add_path(rel.armr_path, -1);
    ++rel_idx;
  }
  return zs;
}

}  // namespace

i64 z_space_dim(const Rep& a, const Rep& b) {
  require_compatible(a, b, "z_space_dim");
  ZSystem zs = z_system(a, b);
  return zs.unknowns - mat_rank(std::move(zs.sys), a.params.prime);
}

i64 ext1_dim(const Rep& a, const Rep& b) {
  require_compatible(a, b, "ext1_dim");
  BoundQuiver q = build_quiver(a.type);
  i64 vertex_prod = 0;
  for (const Vertex& v : q.vertices) {
    vertex_prod += dim_of(a.dim, v) * dim_of(b.dim, v);
  }
  i64 e1 = z_space_dim(a, b) - vertex_prod + hom_dim(a, b);
  if (e1 < 0) throw std::logic_error("ext1_dim: negative dimension");
  return e1;
}

i64 ext2_dim(const Rep& a, const Rep& b) {
  require_compatible(a, b, "ext2_dim");
  BoundQuiver q = build_quiver(a.type);
  i64 arrow_prod = 0;
  for (const Arrow& ar : q.arrows) {
    arrow_prod += dim_of(a.dim, q.vertices[ar.source]) *
                  dim_of(b.dim, q.vertices[ar.target]);
  }
  i64 rel_prod =
      static_cast<i64>(a.type.arm_count() - 2) * a.dim.omega * b.dim.alpha;
  i64 e2 = z_space_dim(a, b) - arrow_prod + rel_prod;
  if (e2 < 0) throw std::logic_error("ext2_dim: negative dimension");
  return e2;
}

std::vector<ZElement> z_space_basis(const Rep& msecond, const Rep& mprime) {
  require_compatible(msecond, mprime, "z_space_basis");
  const i64 p = msecond.params.prime;
  BoundQuiver q = build_quiver(msecond.type);
  ZSystem zs = z_system(msecond, mprime);

  std::vector<int> pivots;
  Mat red = zs.sys;
  row_reduce(red, p, &pivots);
  std::vector<bool> is_pivot(zs.unknowns, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<ZElement> basis;
  for (int free_col = 0; free_col < zs.unknowns; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<i64> vec(zs.unknowns, 0);
    vec[free_col] = 1;
    for (size_t k = 0; k < pivots.size(); ++k) {
      vec[pivots[k]] =
          (p - red.at(static_cast<int>(k), free_col)) % p;
    }
    ZElement z;
    for (size_t g = 0; g < q.arrows.size(); ++g) {
      const Arrow& ar = q.arrows[g];
      Mat m(static_cast<int>(dim_of(mprime.dim, q.vertices[ar.target])),
            static_cast<int>(dim_of(msecond.dim, q.vertices[ar.source])));
      for (size_t i = 0; i < m.a.size(); ++i) {
        m.a[i] = vec[zs.offset[g] + i];
      }
      z.mats.push_back(std::move(m));
    }
    basis.push_back(std::move(z));
  }
  return basis;
}

Rep build_extension(const Rep& mprime, const Rep& msecond,
                    const ZElement& z) {
  require_compatible(mprime, msecond, "build_extension");
  const i64 p = mprime.params.prime;
  BoundQuiver q = build_quiver(mprime.type);
  if (z.mats.size() != q.arrows.size()) {
    throw std::invalid_argument("build_extension: z arrow count");
  }

  Rep rep;
  rep.type = mprime.type;
  rep.params = mprime.params;
  rep.dim = mprime.dim + msecond.dim;
  for (size_t g = 0; g < q.arrows.size(); ++g) {
    const Arrow& ar = q.arrows[g];
    const int pt = static_cast<int>(dim_of(mprime.dim, q.vertices[ar.target]));
    const int ps = static_cast<int>(dim_of(mprime.dim, q.vertices[ar.source]));
    const int st = static_cast<int>(dim_of(msecond.dim, q.vertices[ar.target]));
    const int ss = static_cast<int>(dim_of(msecond.dim, q.vertices[ar.source]));
    if (z.mats[g].rows != pt || z.mats[g].cols != ss) {
      throw std::invalid_argument("build_extension: z block shape");
    }
    Mat m(pt + st, ps + ss);
    for (int r = 0; r < pt; ++r) {
      for (int c = 0; c < ps; ++c) m.at(r, c) = mprime.mats[g].at(r, c);
      for (int c = 0; c < ss; ++c) m.at(r, ps + c) = z.mats[g].at(r, c);
    }
    for (int r = 0; r < st; ++r) {
      for (int c = 0; c < ss; ++c) {
        m.at(pt + r, ps + c) = msecond.mats[g].at(r, c);
      }
    }
    rep.mats.push_back(std::move(m));
  }
  (void)p;
  if (!check_relations(rep)) {
    throw std::invalid_argument("build_extension: z outside the Z-space");
  }
  return rep;
}

namespace {

Rep zero_rep(const CanonicalType& t, const TubeParams& params,
             const DimVector& d) {
  BoundQuiver q = build_quiver(t);
  Rep rep;
  rep.type = t;
  rep.params = params;
  rep.dim = d;
  for (const Arrow& ar : q.arrows) {
    rep.mats.emplace_back(static_cast<int>(dim_of(d, q.vertices[ar.target])),
                          static_cast<int>(dim_of(d, q.vertices[ar.source])));
  }
  return rep;
}

// arrow index of gamma_{i, pos}
int arrow_index(const BoundQuiver& q, int i, int pos) {
  for (size_t g = 0; g < q.arrows.size(); ++g) {
    if (q.arrows[g].arm == i && q.arrows[g].pos == pos) {
      return static_cast<int>(g);
    }
  }
  throw std::out_of_range("arrow_index");
}

}  // namespace

Rep build_simple(const CanonicalType& t, const TubeParams& params,
                 const Vertex& x) {
  Rep rep = zero_rep(t, params, unit_vector(t, x));
  if (!check_relations(rep)) throw std::logic_error("build_simple");
  return rep;
}

Rep build_arm_regular(const CanonicalType& t, const TubeParams& params,
                      int i, int j) {
  if (i < 1 || i > t.arm_count() || j < 1 || j > t.arm_length(i)) {
    throw std::out_of_range("build_arm_regular: coordinates");
  }
  if (j < t.arm_length(i)) {
    return build_simple(t, params, Vertex::arm_vertex(i, j));
  }
  const i64 p = params.prime;
  const int n = t.arm_count();
  Rep rep = zero_rep(t, params, special_vector_e(t, i, t.arm_length(i)));
  BoundQuiver q = build_quiver(t);

  // scalar value of each nonempty arm composite; arm i is cut to zero
  std::vector<i64> comp(n + 1, 1);
  if (i >= 3) {
    comp[1] = (p - params.lambda_r(i)) % p;
    comp[2] = 1;
    for (int r = 3; r <= n; ++r) {
      comp[r] = (params.lambda_r(r) - params.lambda_r(i) + p) % p;
    }
  } else if (i == 1) {
    comp[2] = 1;
    for (int r = 3; r <= n; ++r) comp[r] = params.lambda_r(r) % p;
  } else {
    comp[1] = 1;
    for (int r = 3; r <= n; ++r) comp[r] = 1;
  }

  for (int s = 1; s <= n; ++s) {
    if (s == i) continue;
    for (int pos = 1; pos <= t.arm_length(s); ++pos) {
      rep.mats[arrow_index(q, s, pos)].at(0, 0) = pos == 1 ? comp[s] : 1;
    }
  }
  if (!check_relations(rep)) {
    throw std::logic_error("build_arm_regular: relations failed");
  }
  return rep;
}

Rep build_homogeneous(const CanonicalType& t, const TubeParams& params,
                      i64 a, i64 b) {
  const i64 p = params.prime;
  a = ((a % p) + p) % p;
  b = ((b % p) + p) % p;
  const int n = t.arm_count();
  std::vector<i64> comp(n + 1, 0);
  comp[1] = a;
  comp[2] = b;
  for (int r = 3; r <= n; ++r) {
    comp[r] = (a + params.lambda_r(r) * b) % p;
  }
  for (int s = 1; s <= n; ++s) {
    if (comp[s] == 0) {
      throw std::invalid_argument(
          "build_homogeneous: (a:b) hits an exceptional tube");
    }
  }
  Rep rep = zero_rep(t, params, special_vector_h(t));
  BoundQuiver q = build_quiver(t);
  for (int s = 1; s <= n; ++s) {
    for (int pos = 1; pos <= t.arm_length(s); ++pos) {
      rep.mats[arrow_index(q, s, pos)].at(0, 0) = pos == 1 ? comp[s] : 1;
    }
  }
  if (!check_relations(rep)) {
    throw std::logic_error("build_homogeneous: relations failed");
  }
  return rep;
}

std::optional<Rep> sample_point(const CanonicalType& t,
                                const TubeParams& params, const DimVector& d,
                                std::uint64_t seed, int retries) {
  require_shape(t, d, "sample_point");
  if (!d.is_nonnegative()) {
    throw std::invalid_argument("sample_point: negative entry");
  }
  const i64 p = params.prime;
  const int n = t.arm_count();
  BoundQuiver q = build_quiver(t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> pick(0, p - 1);

  for (int attempt = 0; attempt < retries; ++attempt) {
    Rep rep = zero_rep(t, params, d);
    auto randomize = [&](int g) {
      for (i64& v : rep.mats[g].a) v = pick(rng);
    };
    for (int pos = 1; pos <= t.arm_length(1); ++pos) {
      randomize(arrow_index(q, 1, pos));
    }
    for (int pos = 1; pos <= t.arm_length(2); ++pos) {
      randomize(arrow_index(q, 2, pos));
    }
    for (int r = 3; r <= n; ++r) {
      for (int pos = 2; pos <= t.arm_length(r); ++pos) {
        randomize(arrow_index(q, r, pos));
      }
    }

    Mat p1(static_cast<int>(d.alpha), static_cast<int>(d.omega));
    Mat p2 = p1;
    {
      std::vector<int> path1, path2;
      for (int pos = 1; pos <= t.arm_length(1); ++pos) {
        path1.push_back(arrow_index(q, 1, pos));
      }
      for (int pos = 1; pos <= t.arm_length(2); ++pos) {
        path2.push_back(arrow_index(q, 2, pos));
      }
      p1 = path_matrix(rep, path1);
      p2 = path_matrix(rep, path2);
    }

    bool ok = true;
    for (int r = 3; r <= n && ok; ++r) {
      Mat target = mat_add(p1, mat_scale(p2, params.lambda_r(r), p), p);
      // outer part of arm r, mapping from omega into vertex (r, 1)
      Mat outer = identity(static_cast<int>(d.at(r, 1)));
      for (int pos = 2; pos <= t.arm_length(r); ++pos) {
        outer = mat_mul(outer, rep.mats[arrow_index(q, r, pos)], p);
      }
      // innermost unknown A with A outer = target
      auto sol = mat_solve(transpose(outer), transpose(target), p);
      if (!sol) {
        ok = false;
        break;
      }
      rep.mats[arrow_index(q, r, 1)] = transpose(*sol);
    }
    if (!ok) continue;
    if (!check_relations(rep)) {
      throw std::logic_error("sample_point: relations failed after solve");
    }
    return rep;
  }
  return std::nullopt;
}

}  // namespace canvar
