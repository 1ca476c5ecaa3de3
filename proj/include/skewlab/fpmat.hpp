#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/fp.hpp"

namespace skewlab {

using FpVec = std::vector<fp_t>;

/// Dense matrix over F_p, row-major.
struct FpMat {
  std::size_t nrows = 0, ncols = 0;
  FpVec a;  // nrows * ncols

  static FpMat zero(std::size_t r, std::size_t c) { return FpMat{r, c, FpVec(r * c, 0)}; }
  static FpMat identity(std::size_t n) {
    FpMat m = zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  fp_t& at(std::size_t i, std::size_t j) { return a[i * ncols + j]; }
  fp_t at(std::size_t i, std::size_t j) const { return a[i * ncols + j]; }

  friend bool operator==(const FpMat& x, const FpMat& y) {
    return x.nrows == y.nrows && x.ncols == y.ncols && x.a == y.a;
  }
};

inline FpMat fpmat_mul(const FpMat& x, const FpMat& y, fp_t p) {
  require(x.ncols == y.nrows, errc::dimension_mismatch, "matrix product shape");
  FpMat r = FpMat::zero(x.nrows, y.ncols);
  for (std::size_t i = 0; i < x.nrows; ++i)
    for (std::size_t k = 0; k < x.ncols; ++k) {
      fp_t v = x.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < y.ncols; ++j)
        r.at(i, j) = fp_add(r.at(i, j), fp_mul(v, y.at(k, j), p), p);
    }
  return r;
}

inline FpMat fpmat_pow(FpMat m, std::uint64_t e, fp_t p) {
  FpMat r = FpMat::identity(m.nrows);
  while (e) {
    if (e & 1) r = fpmat_mul(r, m, p);
    m = fpmat_mul(m, m, p);
    e >>= 1;
  }
  return r;
}

struct FpRref {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

inline FpRref fp_rref_in_place(FpMat& m, fp_t p) {
  FpRref res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.ncols && r < m.nrows; ++c) {
    std::size_t piv = r;
    while (piv < m.nrows && m.at(piv, c) == 0) ++piv;
    if (piv == m.nrows) continue;
    for (std::size_t j = 0; j < m.ncols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    fp_t inv = fp_inv(m.at(r, c), p);
    for (std::size_t j = c; j < m.ncols; ++j) m.at(r, j) = fp_mul(m.at(r, j), inv, p);
    for (std::size_t i = 0; i < m.nrows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      fp_t f = m.at(i, c);
      for (std::size_t j = c; j < m.ncols; ++j)
        m.at(i, j) = fp_sub(m.at(i, j), fp_mul(f, m.at(r, j), p), p);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  m.a.resize(r * m.ncols);
  m.nrows = r;
  return res;
}

/// Row span in canonical (RREF) form.
class FpSubspace {
 public:
  FpSubspace() = default;
  static FpSubspace from_rows(std::size_t ncols, const std::vector<FpVec>& rows, fp_t p) {
    FpMat m = FpMat::zero(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == ncols, errc::dimension_mismatch, "row length mismatch");
      for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = rows[i][j] % p;
    }
    FpRref rr = fp_rref_in_place(m, p);
    FpSubspace s;
    s.basis_ = std::move(m);
    s.pivots_ = std::move(rr.pivot_cols);
    s.p_ = p;
    return s;
  }

  std::size_t dim() const { return basis_.nrows; }
  std::size_t ambient_dim() const { return basis_.ncols; }
  FpVec row(std::size_t i) const {
    FpVec r(basis_.ncols);
    for (std::size_t j = 0; j < basis_.ncols; ++j) r[j] = basis_.at(i, j);
    return r;
  }

  bool contains(const FpVec& v) const {
    FpVec rem = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      fp_t f = rem[pivots_[i]] % p_;
      if (!f) continue;
      for (std::size_t j = 0; j < basis_.ncols; ++j)
        rem[j] = fp_sub(rem[j] % p_, fp_mul(f, basis_.at(i, j), p_), p_);
    }
    for (auto x : rem)
      if (x % p_) return false;
    return true;
  }
  /// Coordinates in the echelon basis, or nothing when outside the span.
  std::optional<FpVec> coords_of(const FpVec& v) const {
    FpVec rem = v, out(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      fp_t f = rem[pivots_[i]] % p_;
      out[i] = f;
      if (!f) continue;
      for (std::size_t j = 0; j < basis_.ncols; ++j)
        rem[j] = fp_sub(rem[j] % p_, fp_mul(f, basis_.at(i, j), p_), p_);
    }
    for (auto x : rem)
      if (x % p_) return std::nullopt;
    return out;
  }

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) { return a.basis_ == b.basis_; }

 private:
  FpMat basis_;
  std::vector<std::size_t> pivots_;
  fp_t p_ = 2;
};

/// One solution of A x = b over F_p, if consistent.
inline std::optional<FpVec> fp_solve(const FpMat& a, const FpVec& b, fp_t p) {
  require(b.size() == a.nrows, errc::dimension_mismatch, "rhs length mismatch");
  FpMat aug = FpMat::zero(a.nrows, a.ncols + 1);
  for (std::size_t i = 0; i < a.nrows; ++i) {
    for (std::size_t j = 0; j < a.ncols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.ncols) = b[i] % p;
  }
  FpRref rr = fp_rref_in_place(aug, p);
  if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == a.ncols) return std::nullopt;
  FpVec x(a.ncols, 0);
  for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivot_cols[i]] = aug.at(i, a.ncols);
  return x;
}

inline FpVec fpvec_add(const FpVec& a, const FpVec& b, fp_t p) {
  FpVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = fp_add(r[i], b[i], p);
  return r;
}
inline FpVec fpvec_sub(const FpVec& a, const FpVec& b, fp_t p) {
  FpVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = fp_sub(r[i], b[i], p);
  return r;
}
inline FpVec fpvec_scale(fp_t c, const FpVec& a, fp_t p) {
  FpVec r = a;
  for (auto& x : r) x = fp_mul(x, c, p);
  return r;
}
inline bool fpvec_is_zero(const FpVec& a) {
  for (auto x : a)
    if (x) return false;
  return true;
}

}  // namespace skewlab
