#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/scalar.hpp"

namespace skewlab {

using Row = std::vector<Scalar>;

/// Dense matrix of scalars over one coefficient field.
struct Mat {
  FieldSpecPtr spec;
  std::size_t ncols = 0;
  std::vector<Row> rows;

  static Mat empty(FieldSpecPtr s, std::size_t cols) { return Mat{std::move(s), cols, {}}; }
  std::size_t nrows() const { return rows.size(); }
  void push(Row r) {
    require(r.size() == ncols, errc::dimension_mismatch, "row length mismatch");
    rows.push_back(std::move(r));
  }
};

inline Row zero_row(const FieldSpecPtr& spec, std::size_t n) {
  return Row(n, Scalar::zero(spec));
}

inline Row row_add(const Row& a, const Row& b) {
  Row r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

inline Row row_sub(const Row& a, const Row& b) {
  Row r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

inline Row row_scale(const Row& a, const Scalar& c) {
  Row r = a;
  for (auto& x : r) x = x * c;
  return r;
}

inline bool row_is_zero(const Row& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan reduction to reduced row echelon form.
inline RrefResult rref_in_place(Mat& m) {
  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.ncols && r < m.nrows(); ++c) {
    std::size_t piv = r;
    while (piv < m.nrows() && m.rows[piv][c].is_zero()) ++piv;
    if (piv == m.nrows()) continue;
    std::swap(m.rows[r], m.rows[piv]);
    Scalar inv = m.rows[r][c].inv();
    for (std::size_t j = c; j < m.ncols; ++j) m.rows[r][j] = m.rows[r][j] * inv;
    for (std::size_t i = 0; i < m.nrows(); ++i) {
      if (i == r || m.rows[i][c].is_zero()) continue;
      Scalar f = m.rows[i][c];
      for (std::size_t j = c; j < m.ncols; ++j) m.rows[i][j] = m.rows[i][j] - f * m.rows[r][j];
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  m.rows.resize(r, zero_row(m.spec, m.ncols));  // drop zero rows
  return res;
}

/// Kernel of m (viewed as row-vectors times matrix: solutions x of m x^T = 0
/// with x indexed by columns). Returned rows form an RREF basis.
inline Mat kernel(Mat m) {
  RrefResult rr = rref_in_place(m);
  std::vector<bool> is_pivot(m.ncols, false);
  for (auto c : rr.pivot_cols) is_pivot[c] = true;
  Mat ker = Mat::empty(m.spec, m.ncols);
  for (std::size_t c = 0; c < m.ncols; ++c) {
    if (is_pivot[c]) continue;
    Row v = zero_row(m.spec, m.ncols);
    v[c] = Scalar::one(m.spec);
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivot_cols[i]] = -m.rows[i][c];
    ker.push(std::move(v));
  }
  rref_in_place(ker);
  return ker;
}

/// Solve A x = b where x, b are column vectors; returns one solution if any.
inline std::optional<Row> solve(const Mat& a, const Row& b) {
  require(b.size() == a.nrows(), errc::dimension_mismatch, "rhs length mismatch");
  Mat aug = Mat::empty(a.spec, a.ncols + 1);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    Row r = a.rows[i];
    r.push_back(b[i]);
    aug.push(std::move(r));
  }
  RrefResult rr = rref_in_place(aug);
  if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == a.ncols) return std::nullopt;  // inconsistent
  Row x = zero_row(a.spec, a.ncols);
  for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivot_cols[i]] = aug.rows[i][a.ncols];
  return x;
}

inline Scalar det(Mat m) {
  require(m.ncols == m.nrows(), errc::dimension_mismatch, "determinant of non-square matrix");
  Scalar d = Scalar::one(m.spec);
  for (std::size_t c = 0; c < m.ncols; ++c) {
    std::size_t piv = c;
    while (piv < m.nrows() && m.rows[piv][c].is_zero()) ++piv;
    if (piv == m.nrows()) return Scalar::zero(m.spec);
    if (piv != c) {
      std::swap(m.rows[c], m.rows[piv]);
      d = -d;
    }
    d = d * m.rows[c][c];
    Scalar inv = m.rows[c][c].inv();
    for (std::size_t i = c + 1; i < m.nrows(); ++i) {
      if (m.rows[i][c].is_zero()) continue;
      Scalar f = m.rows[i][c] * inv;
      for (std::size_t j = c; j < m.ncols; ++j) m.rows[i][j] = m.rows[i][j] - f * m.rows[c][j];
    }
  }
  return d;
}

/// Row-reduced basis of a linear subspace; the canonical representation used
/// for subfields, tori, weight spaces and centralizers.
class Subspace {
 public:
  Subspace() = default;
  static Subspace from_rows(const FieldSpecPtr& spec, std::size_t ncols, std::vector<Row> rows) {
    Mat m = Mat::empty(spec, ncols);
    for (auto& r : rows) m.push(std::move(r));
    rref_in_place(m);
    return Subspace(std::move(m));
  }
  static Subspace whole(const FieldSpecPtr& spec, std::size_t n) {
    Mat m = Mat::empty(spec, n);
    for (std::size_t i = 0; i < n; ++i) {
      Row r = zero_row(spec, n);
      r[i] = Scalar::one(spec);
      m.push(std::move(r));
    }
    return Subspace(std::move(m));
  }

  std::size_t dim() const { return basis_.nrows(); }
  std::size_t ambient_dim() const { return basis_.ncols; }
  const Mat& basis() const { return basis_; }
  const Row& row(std::size_t i) const { return basis_.rows[i]; }

  /// Coordinates of v in the echelon basis, if v lies in the span.
  std::optional<Row> coords_of(const Row& v) const {
    require(v.size() == basis_.ncols, errc::dimension_mismatch, "vector length mismatch");
    Row rem = v;
    Row coords = zero_row(basis_.spec, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      std::size_t pc = pivot_col(i);
      if (rem[pc].is_zero()) continue;
      coords[i] = rem[pc];
      rem = row_sub(rem, row_scale(basis_.rows[i], coords[i]));
    }
    if (!row_is_zero(rem)) return std::nullopt;
    return coords;
  }
  bool contains(const Row& v) const { return coords_of(v).has_value(); }
  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.ambient_dim(); ++j)
        if (a.basis_.rows[i][j] != b.basis_.rows[i][j]) return false;
    return true;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  explicit Subspace(Mat m) : basis_(std::move(m)) {}
  std::size_t pivot_col(std::size_t row) const {
    for (std::size_t j = 0; j < basis_.ncols; ++j)
      if (!basis_.rows[row][j].is_zero()) return j;
    raise(errc::internal, "zero row in echelon basis");
  }
  Mat basis_;
};

}  // namespace skewlab
