#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/matrix.hpp"
#include "skewlab/scalar.hpp"

namespace skewlab {

/// Element of a structure-constant algebra, stored by coordinates in the
/// declared basis.
struct AlgElement {
  Row coords;

  friend bool operator==(const AlgElement& a, const AlgElement& b) { return a.coords == b.coords; }
  friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }
};

/// Finite-dimensional associative unital algebra over the field declared by a
/// FieldSpec, given by a sparse multiplication table c_{ij}^k. The same table
/// serves the algebra over Z and over Z(X): only the coefficient field
/// changes, realizing the base change D ⊗_Z Z(X) without a second structure.
class StructureTensor {
 public:
  struct Entry {
    std::size_t i, j, k;
    Scalar c;
  };

  StructureTensor(FieldSpecPtr spec, std::size_t dim, std::size_t unit_index,
                  const std::vector<Entry>& entries, std::vector<std::string> labels = {})
      : spec_(std::move(spec)), dim_(dim), unit_(unit_index), table_(dim * dim) {
    require(dim_ > 0, errc::invalid_parameters, "dimension must be positive");
    require(unit_ < dim_, errc::invalid_parameters, "unit index out of range");
    for (const auto& e : entries) {
      require(e.i < dim_ && e.j < dim_ && e.k < dim_, errc::invalid_parameters,
              "table index out of range");
      require(!e.c.is_zero(), errc::invalid_parameters, "sparse table entries must be nonzero");
      table_[e.i * dim_ + e.j].push_back({e.k, e.c});
    }
    if (labels.empty()) {
      for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    } else {
      require(labels.size() == dim_, errc::invalid_parameters, "label count mismatch");
      labels_ = std::move(labels);
    }
    validate();
    centre_ = compute_centre();
  }

  const FieldSpecPtr& spec() const { return spec_; }
  std::size_t dim() const { return dim_; }
  std::size_t unit_index() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::pair<std::size_t, Scalar>>& table(std::size_t i, std::size_t j) const {
    return table_[i * dim_ + j];
  }
  /// Sparse entries in deterministic (i, j, k) order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (const auto& [k, c] : table_[i * dim_ + j]) out.push_back(Entry{i, j, k, c});
    return out;
  }

  AlgElement zero() const { return AlgElement{zero_row(spec_, dim_)}; }
  AlgElement basis_element(std::size_t i) const {
    AlgElement e = zero();
    e.coords[i] = Scalar::one(spec_);
    return e;
  }
  AlgElement unit() const { return basis_element(unit_); }
  AlgElement scalar_element(const Scalar& c) const {
    AlgElement e = zero();
    e.coords[unit_] = c;
    return e;
  }
  /// The central value c with a = c*1, if a is a multiple of the unit.
  std::optional<Scalar> as_scalar(const AlgElement& a) const {
    for (std::size_t i = 0; i < dim_; ++i)
      if (i != unit_ && !a.coords[i].is_zero()) return std::nullopt;
    return a.coords[unit_];
  }

  const Subspace& centre() const { return centre_; }

  /// Same table over an enlarged coefficient field (extra ext variables).
  StructureTensor with_field(const FieldSpecPtr& larger) const {
    std::vector<Entry> es;
    for (auto& e : entries()) es.push_back(Entry{e.i, e.j, e.k, lift_scalar(e.c, larger)});
    return StructureTensor(larger, dim_, unit_, es, labels_);
  }

 private:
  void validate() const {
    // unit is a two-sided identity: e_u e_j = e_j = e_j e_u on the sparse table
    auto is_delta = [&](const std::vector<std::pair<std::size_t, Scalar>>& cell, std::size_t j) {
      return cell.size() == 1 && cell[0].first == j && cell[0].second.is_one();
    };
    for (std::size_t j = 0; j < dim_; ++j)
      require(is_delta(table_[unit_ * dim_ + j], j) && is_delta(table_[j * dim_ + unit_], j),
              errc::invalid_parameters, "designated unit is not a two-sided identity");

    // associativity on all basis triples, accumulated sparsely:
    // sum_m c_ij^m c_mk^l = sum_m c_jk^m c_im^l for every l
    Row acc(dim_, Scalar::zero(spec_));
    std::vector<std::size_t> touched;
    auto accumulate = [&](const std::vector<std::pair<std::size_t, Scalar>>& outer,
                          auto&& inner_cell, int sign) {
      for (const auto& [m, c1] : outer)
        for (const auto& [l, c2] : inner_cell(m)) {
          Scalar v = c1 * c2;
          if (acc[l].is_zero()) touched.push_back(l);
          acc[l] = sign > 0 ? acc[l] + v : acc[l] - v;
        }
    };
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const auto& tij = table_[i * dim_ + j];
        for (std::size_t k = 0; k < dim_; ++k) {
          accumulate(tij, [&](std::size_t m) -> const auto& { return table_[m * dim_ + k]; }, 1);
          accumulate(table_[j * dim_ + k],
                     [&](std::size_t m) -> const auto& { return table_[i * dim_ + m]; }, -1);
          bool ok = true;
          for (auto l : touched) {
            if (!acc[l].is_zero()) ok = false;
            acc[l] = Scalar::zero(spec_);
          }
          touched.clear();
          require(ok, errc::invalid_parameters,
                  "multiplication table is not associative at triple (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
  }

  Subspace compute_centre() const;

 public:
  AlgElement mul(const AlgElement& a, const AlgElement& b) const {
    require(a.coords.size() == dim_ && b.coords.size() == dim_, errc::dimension_mismatch,
            "element does not belong to this algebra");
    AlgElement r = zero();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (a.coords[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (b.coords[j].is_zero()) continue;
        Scalar cij = a.coords[i] * b.coords[j];
        for (const auto& [k, c] : table_[i * dim_ + j]) r.coords[k] = r.coords[k] + cij * c;
      }
    }
    return r;
  }

 private:
  FieldSpecPtr spec_;
  std::size_t dim_, unit_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
  std::vector<std::string> labels_;
  Subspace centre_;
};

inline AlgElement alg_mul(const StructureTensor& A, const AlgElement& a, const AlgElement& b) {
  return A.mul(a, b);
}

inline AlgElement alg_add(const AlgElement& a, const AlgElement& b) {
  return AlgElement{row_add(a.coords, b.coords)};
}
inline AlgElement alg_sub(const AlgElement& a, const AlgElement& b) {
  return AlgElement{row_sub(a.coords, b.coords)};
}
inline AlgElement alg_scale(const Scalar& c, const AlgElement& a) {
  return AlgElement{row_scale(a.coords, c)};
}
inline bool alg_is_zero(const AlgElement& a) { return row_is_zero(a.coords); }

inline AlgElement alg_commutator(const StructureTensor& A, const AlgElement& a, const AlgElement& b) {
  return alg_sub(A.mul(a, b), A.mul(b, a));
}

inline AlgElement alg_pow(const StructureTensor& A, const AlgElement& a, std::uint64_t e) {
  AlgElement r = A.unit();
  AlgElement base = a;
  while (e) {
    if (e & 1) r = A.mul(r, base);
    base = A.mul(base, base);
    e >>= 1;
  }
  return r;
}

/// Matrix of left multiplication by a (columns are a * e_j).
inline Mat left_mul_operator(const StructureTensor& A, const AlgElement& a) {
  Mat m = Mat::empty(A.spec(), A.dim());
  std::vector<AlgElement> cols;
  for (std::size_t j = 0; j < A.dim(); ++j) cols.push_back(A.mul(a, A.basis_element(j)));
  for (std::size_t i = 0; i < A.dim(); ++i) {
    Row r = zero_row(A.spec(), A.dim());
    for (std::size_t j = 0; j < A.dim(); ++j) r[j] = cols[j].coords[i];
    m.push(std::move(r));
  }
  return m;
}

/// Matrix of ad(a) = [a, -] (columns are [a, e_j]).
inline Mat ad_operator(const StructureTensor& A, const AlgElement& a) {
  Mat m = Mat::empty(A.spec(), A.dim());
  std::vector<AlgElement> cols;
  for (std::size_t j = 0; j < A.dim(); ++j) cols.push_back(alg_commutator(A, a, A.basis_element(j)));
  for (std::size_t i = 0; i < A.dim(); ++i) {
    Row r = zero_row(A.spec(), A.dim());
    for (std::size_t j = 0; j < A.dim(); ++j) r[j] = cols[j].coords[i];
    m.push(std::move(r));
  }
  return m;
}

/// Two-sided inverse, found by solving the right-inverse linear system and
/// verifying the result from the left. NotInvertible surfaces a zero-divisor
/// witness: the algebra is not division at this element.
inline std::optional<AlgElement> try_inverse(const StructureTensor& A, const AlgElement& a) {
  if (alg_is_zero(a)) return std::nullopt;
  Mat la = left_mul_operator(A, a);
  auto x = solve(la, A.unit().coords);
  if (!x) return std::nullopt;
  AlgElement inv{*x};
  if (!(A.mul(inv, a) == A.unit())) return std::nullopt;
  return inv;
}

inline AlgElement alg_inverse(const StructureTensor& A, const AlgElement& a) {
  require(!alg_is_zero(a), errc::invalid_parameters, "inverse of zero");
  auto inv = try_inverse(A, a);
  require(inv.has_value(), errc::not_invertible, "element is a zero divisor");
  return *inv;
}

/// Solution space of [x, s_j] = 0 for every row s_j of S.
inline Subspace centralizer(const StructureTensor& A, const Subspace& S) {
  Mat stacked = Mat::empty(A.spec(), A.dim());
  for (std::size_t r = 0; r < S.dim(); ++r) {
    Mat ad = ad_operator(A, AlgElement{S.row(r)});
    for (auto& row : ad.rows) stacked.push(std::move(row));
  }
  if (stacked.nrows() == 0) return Subspace::whole(A.spec(), A.dim());
  Mat ker = kernel(std::move(stacked));
  return Subspace::from_rows(A.spec(), A.dim(), ker.rows);
}

inline Subspace StructureTensor::compute_centre() const {
  Mat stacked = Mat::empty(spec_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Mat ad = ad_operator(*this, basis_element(i));
    for (auto& row : ad.rows) stacked.push(std::move(row));
  }
  Mat ker = kernel(std::move(stacked));
  return Subspace::from_rows(spec_, dim_, ker.rows);
}

inline const Subspace& centre(const StructureTensor& A) { return A.centre(); }

/// Monic univariate polynomial over the coefficient field, low degree first.
struct UnivarPoly {
  FieldSpecPtr spec;
  std::vector<Scalar> coeffs;  // coeffs[k] multiplies T^k; leading coeff is 1

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  AlgElement eval(const StructureTensor& A, const AlgElement& a) const {
    AlgElement acc = A.zero();
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      acc = A.mul(acc, a);
      acc = alg_add(acc, A.scalar_element(coeffs[k]));
    }
    return acc;
  }

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      if (coeffs[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string cs = coeffs[k].to_string();
      bool needs_parens = cs.find_first_of("+-") != std::string::npos && cs.size() > 1;
      if (k == 0) {
        out += cs;
        continue;
      }
      if (!coeffs[k].is_one()) {
        out += needs_parens ? "(" + cs + ")" : cs;
        out += "*";
      }
      out += "T";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }
};

/// Least-degree monic P with P(a) = 0, from the first linear dependence among
/// the powers 1, a, a^2, ...
inline UnivarPoly min_poly(const StructureTensor& A, const AlgElement& a) {
  std::vector<Row> powers;
  AlgElement cur = A.unit();
  for (std::size_t k = 0;; ++k) {
    if (k > 0) {
      // is a^k a combination of the lower powers already collected?
      Mat sys = Mat::empty(A.spec(), powers.size());
      for (std::size_t i = 0; i < A.dim(); ++i) {
        Row r;
        r.reserve(powers.size());
        for (const auto& pw : powers) r.push_back(pw[i]);
        sys.push(std::move(r));
      }
      if (auto x = solve(sys, cur.coords)) {
        UnivarPoly P{A.spec(), {}};
        for (std::size_t i = 0; i < k; ++i) P.coeffs.push_back(-(*x)[i]);
        P.coeffs.push_back(Scalar::one(A.spec()));
        return P;
      }
    }
    powers.push_back(cur.coords);
    cur = A.mul(cur, a);
    require(k <= A.dim() + 1, errc::internal, "minimal polynomial search exceeded dimension bound");
  }
}

struct GeneratedSubfield {
  Subspace space;
  bool commutative = false;
  /// Heuristic flag: commutative and every echelon basis element invertible
  /// in the ambient algebra. Full field verification is left to the callers
  /// that know the instance.
  bool field = false;
};

/// Smallest unital subalgebra containing the generators; requires pairwise
/// commuting generators.
inline GeneratedSubfield generate_subfield(const StructureTensor& A,
                                           const std::vector<AlgElement>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      require(alg_is_zero(alg_commutator(A, gens[i], gens[j])), errc::not_commutative,
              "generators do not commute");
  std::vector<Row> rows;
  rows.push_back(A.unit().coords);
  for (const auto& g : gens) rows.push_back(g.coords);
  Subspace span = Subspace::from_rows(A.spec(), A.dim(), rows);
  for (;;) {
    std::vector<Row> next;
    for (std::size_t i = 0; i < span.dim(); ++i) next.push_back(span.row(i));
    bool grew = false;
    for (std::size_t i = 0; i < span.dim(); ++i)
      for (std::size_t j = 0; j < span.dim(); ++j) {
        AlgElement prod = A.mul(AlgElement{span.row(i)}, AlgElement{span.row(j)});
        if (!span.contains(prod.coords)) {
          next.push_back(prod.coords);
          grew = true;
        }
      }
    if (!grew) break;
    span = Subspace::from_rows(A.spec(), A.dim(), next);
  }

  GeneratedSubfield out;
  out.space = span;
  out.commutative = true;
  for (std::size_t i = 0; i < span.dim() && out.commutative; ++i)
    for (std::size_t j = i + 1; j < span.dim(); ++j)
      if (!alg_is_zero(alg_commutator(A, AlgElement{span.row(i)}, AlgElement{span.row(j)}))) {
        out.commutative = false;
        break;
      }
  out.field = out.commutative;
  for (std::size_t i = 0; i < span.dim() && out.field; ++i)
    if (!try_inverse(A, AlgElement{span.row(i)})) out.field = false;
  return out;
}

/// Subspace spanned by pairwise products u*v of basis elements of S together
/// with S itself; S is multiplicatively closed iff this equals S + span{1}.
inline bool multiplicatively_closed(const StructureTensor& A, const Subspace& S) {
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = 0; j < S.dim(); ++j) {
      AlgElement prod = A.mul(AlgElement{S.row(i)}, AlgElement{S.row(j)});
      if (!S.contains(prod.coords)) return false;
    }
  return true;
}

inline bool subspace_commutative(const StructureTensor& A, const Subspace& S) {
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = i + 1; j < S.dim(); ++j)
      if (!alg_is_zero(alg_commutator(A, AlgElement{S.row(i)}, AlgElement{S.row(j)}))) return false;
  return true;
}

// ---- concrete test algebras ------------------------------------------------

/// Symbol algebra of degree p over the declared field: generators x, y with
///   x^p - x = a,   y^p = b,   y x = (x + 1) y,
/// on the basis {x^i y^j : 0 <= i,j < p} with index i*p + j.
inline StructureTensor symbol_algebra(const FieldSpecPtr& spec, const Scalar& a, const Scalar& b) {
  fp_t p = spec->p();
  require(p >= 3, errc::invalid_parameters, "symbol algebra requires p >= 3");
  require(a.in_base_field() && b.in_base_field(), errc::invalid_parameters,
          "parameters must lie in the ground field Z");
  require(!b.is_zero(), errc::invalid_parameters, "parameter b must be nonzero");

  std::size_t n = static_cast<std::size_t>(p);
  auto idx = [&](std::size_t i, std::size_t j) { return i * n + j; };

  // x-polynomials reduced by x^p = x + a, as coefficient vectors of length p
  auto reduce_mul_x = [&](std::vector<Scalar> v) {
    // multiply by x: shift, then fold the overflow with x^p = x + a
    std::vector<Scalar> w(n, Scalar::zero(spec));
    Scalar top = v[n - 1];
    for (std::size_t i = n - 1; i >= 1; --i) w[i] = v[i - 1];
    w[0] = Scalar::zero(spec);
    if (!top.is_zero()) {
      w[1] = w[1] + top;
      w[0] = w[0] + top * a;
    }
    return w;
  };

  std::vector<StructureTensor::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // (x^i y^j)(x^k y^l) = x^i (x + j)^k y^(j+l)
        std::vector<Scalar> xpoly(n, Scalar::zero(spec));
        xpoly[i] = Scalar::one(spec);
        for (std::size_t t = 0; t < k; ++t) {
          // multiply by (x + j)
          std::vector<Scalar> shifted = reduce_mul_x(xpoly);
          Scalar jj = Scalar::constant(spec, static_cast<long long>(j));
          for (std::size_t m = 0; m < n; ++m) shifted[m] = shifted[m] + jj * xpoly[m];
          xpoly = std::move(shifted);
        }
        for (std::size_t l = 0; l < n; ++l) {
          std::size_t jl = j + l;
          Scalar yfactor = Scalar::one(spec);
          if (jl >= n) {
            jl -= n;
            yfactor = b;
          }
          for (std::size_t m = 0; m < n; ++m) {
            Scalar c = xpoly[m] * yfactor;
            if (!c.is_zero())
              entries.push_back(StructureTensor::Entry{idx(i, j), idx(k, l), idx(m, jl), c});
          }
        }
      }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string s;
      if (i == 1) s += "x";
      if (i > 1) s += "x^" + std::to_string(i);
      if (j >= 1) {
        if (!s.empty()) s += "*";
        s += (j == 1) ? "y" : "y^" + std::to_string(j);
      }
      if (s.empty()) s = "1";
      labels.push_back(s);
    }
  return StructureTensor(spec, n * n, idx(0, 0), entries, labels);
}

/// Full matrix algebra M_n over the declared field, on the basis
/// {I} u {E_ab : (a,b) != (1,1)} so that the unit is a basis element.
inline StructureTensor matrix_algebra(const FieldSpecPtr& spec, std::size_t n) {
  require(n >= 2, errc::invalid_parameters, "matrix algebra needs n >= 2");
  std::size_t dim = n * n;
  // basis index 0 = I, then E_ab for (a,b) != (0,0) in row-major order
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  pos.emplace_back(0, 0);  // placeholder slot for I
  std::vector<std::string> labels;
  labels.push_back("I");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      pos.emplace_back(a, b);
      labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
    }

  // dense matrix for each basis element
  auto as_matrix = [&](std::size_t t) {
    std::vector<Scalar> m(n * n, Scalar::zero(spec));
    if (t == 0) {
      for (std::size_t a = 0; a < n; ++a) m[a * n + a] = Scalar::one(spec);
    } else {
      m[pos[t].first * n + pos[t].second] = Scalar::one(spec);
    }
    return m;
  };
  // express a dense matrix in the basis: coeff of E_00 goes to I, and
  // -I-coeff is added back onto the other diagonal slots
  auto to_coords = [&](const std::vector<Scalar>& m) {
    Row coords = zero_row(spec, dim);
    Scalar c00 = m[0];
    coords[0] = c00;
    std::size_t t = 1;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == 0 && b == 0) continue;
        Scalar c = m[a * n + b];
        if (a == b) c = c - c00;
        coords[t] = c;
        ++t;
      }
    return coords;
  };

  std::vector<StructureTensor::Entry> entries;
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t t = 0; t < dim; ++t) {
      auto ms = as_matrix(s), mt = as_matrix(t);
      std::vector<Scalar> prod(n * n, Scalar::zero(spec));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            prod[a * n + b] = prod[a * n + b] + ms[a * n + c] * mt[c * n + b];
      Row coords = to_coords(prod);
      for (std::size_t k = 0; k < dim; ++k)
        if (!coords[k].is_zero()) entries.push_back(StructureTensor::Entry{s, t, k, coords[k]});
    }
  return StructureTensor(spec, dim, 0, entries, labels);
}

/// Truncated polynomial algebra F[w]/(w^n): the canonical commutative tensor.
inline StructureTensor truncated_polynomial_algebra(const FieldSpecPtr& spec, std::size_t n) {
  require(n >= 1, errc::invalid_parameters, "dimension must be positive");
  std::vector<StructureTensor::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + i < n; ++j)
      entries.push_back(StructureTensor::Entry{i, j, i + j, Scalar::one(spec)});
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "w" : "w^" + std::to_string(i)));
  return StructureTensor(spec, n, 0, entries, labels);
}

}  // namespace skewlab
