#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/algebra.hpp"
#include "skewlab/error.hpp"
#include "skewlab/matrix.hpp"

namespace skewlab {

/// Commutative subspace spanned by toral elements, normalized to contain the
/// unit as t_0; rank counts the generators t_1..t_d.
struct Torus {
  std::vector<AlgElement> toral_basis;  // t_0 = 1 first
  std::size_t rank = 0;
};

struct ToralWitness {
  bool toral = false;
  AlgElement value;  // t^p - t, central exactly when toral
};

/// t is toral when t^p - t lies in the centre.
inline ToralWitness is_toral(const StructureTensor& A, const AlgElement& t) {
  AlgElement w = alg_sub(alg_pow(A, t, A.spec()->p()), t);
  return ToralWitness{A.centre().contains(w.coords), w};
}

/// Validates and normalizes a torus from generators t_1..t_d (the unit is
/// inserted as t_0; unit multiples among the generators are dropped).
inline Torus make_torus(const StructureTensor& A, const std::vector<AlgElement>& gens) {
  Torus T;
  T.toral_basis.push_back(A.unit());
  for (const auto& g : gens) {
    if (A.as_scalar(g).has_value()) continue;  // central multiples of 1 add nothing
    require(is_toral(A, g).toral, errc::invalid_parameters, "generator is not toral");
    require(!A.centre().contains(g.coords), errc::invalid_parameters,
            "torus generators must not be central");
    T.toral_basis.push_back(g);
  }
  for (std::size_t i = 0; i < T.toral_basis.size(); ++i)
    for (std::size_t j = i + 1; j < T.toral_basis.size(); ++j)
      require(alg_is_zero(alg_commutator(A, T.toral_basis[i], T.toral_basis[j])),
              errc::not_commutative, "toral generators must commute");
  std::vector<Row> rows;
  for (const auto& t : T.toral_basis) rows.push_back(t.coords);
  Subspace span = Subspace::from_rows(A.spec(), A.dim(), rows);
  require(span.dim() == T.toral_basis.size(), errc::invalid_parameters,
          "toral basis is linearly dependent");
  T.rank = T.toral_basis.size() - 1;
  return T;
}

/// Weight: the tuple (λ(t_1), ..., λ(t_d)) of F_p eigenvalues; λ(t_0) = 0.
struct Weight {
  std::vector<fp_t> values;

  friend bool operator==(const Weight& a, const Weight& b) { return a.values == b.values; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.values < b.values; }
  bool is_zero() const {
    for (auto v : values)
      if (v) return false;
    return true;
  }
  Weight add(const Weight& o, fp_t p) const {
    Weight r = *this;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = fp_add(r.values[i], o.values[i], p);
    return r;
  }
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(values[i]);
    }
    return s + ")";
  }
};

struct WeightDecomposition {
  std::vector<Weight> weights;   // sorted lexicographically
  std::vector<Subspace> spaces;  // aligned with weights, all nonzero

  const Subspace* space_of(const Weight& w) const {
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] == w) return &spaces[i];
    return nullptr;
  }
  const Subspace& zero_space() const {
    const Subspace* s = space_of(Weight{std::vector<fp_t>(weights.empty() ? 0 : weights[0].values.size(), 0)});
    require(s != nullptr, errc::internal, "decomposition without zero weight");
    return *s;
  }
};

/// Simultaneous eigenspace decomposition of ad(t_1), ..., ad(t_d) with
/// eigenvalues searched in F_p. Fails with NotSimultaneouslyDiagonalizable
/// when the eigenspaces do not fill the algebra.
inline WeightDecomposition weight_decomposition(const StructureTensor& A, const Torus& T) {
  fp_t p = A.spec()->p();
  std::size_t d = T.rank;
  std::vector<Mat> ads;
  for (std::size_t i = 1; i <= d; ++i) ads.push_back(ad_operator(A, T.toral_basis[i]));

  WeightDecomposition out;
  std::size_t total = 0;
  std::vector<fp_t> tuple(d, 0);
  for (;;) {
    // kernel of the stacked operators ad(t_i) - lambda_i
    Mat stacked = Mat::empty(A.spec(), A.dim());
    for (std::size_t i = 0; i < d; ++i) {
      Mat m = ads[i];
      Scalar lam = Scalar::constant(A.spec(), static_cast<long long>(tuple[i]));
      for (std::size_t r = 0; r < A.dim(); ++r) m.rows[r][r] = m.rows[r][r] - lam;
      for (auto& row : m.rows) stacked.push(std::move(row));
    }
    Subspace space = d == 0 ? Subspace::whole(A.spec(), A.dim())
                            : Subspace::from_rows(A.spec(), A.dim(), kernel(std::move(stacked)).rows);
    if (space.dim() > 0) {
      out.weights.push_back(Weight{tuple});
      out.spaces.push_back(space);
      total += space.dim();
    }
    // next tuple in lexicographic order
    std::size_t k = d;
    while (k > 0 && tuple[k - 1] == p - 1) tuple[--k] = 0;
    if (k == 0) break;
    tuple[k - 1] += 1;
  }
  require(total == A.dim(), errc::not_simultaneously_diagonalizable,
          "weight spaces do not fill the algebra");
  return out;
}

/// The weight set must be a grading: D_v * D_w inside D_{v+w}, with the sum
/// of weights again carrying a (possibly zero) space. Exact containment check.
inline bool weight_grading_check(const StructureTensor& A, const WeightDecomposition& wd) {
  fp_t p = A.spec()->p();
  for (std::size_t i = 0; i < wd.weights.size(); ++i)
    for (std::size_t j = 0; j < wd.weights.size(); ++j) {
      Weight sum = wd.weights[i].add(wd.weights[j], p);
      const Subspace* target = wd.space_of(sum);
      for (std::size_t a = 0; a < wd.spaces[i].dim(); ++a)
        for (std::size_t b = 0; b < wd.spaces[j].dim(); ++b) {
          AlgElement prod =
              A.mul(AlgElement{wd.spaces[i].row(a)}, AlgElement{wd.spaces[j].row(b)});
          if (alg_is_zero(prod)) continue;
          if (target == nullptr || !target->contains(prod.coords)) return false;
        }
    }
  return true;
}

struct GaloisGenerator {
  Weight weight;
  AlgElement conjugator;  // x_lambda, one nonzero element of D_lambda
  Mat automorphism;       // matrix of v -> x v x^{-1} on the subfield basis
};

struct GaloisData {
  Subspace subfield;  // Z(T)
  std::vector<GaloisGenerator> generators;  // one per weight, in weight order

  std::vector<Mat> group() const {
    std::vector<Mat> g;
    for (const auto& gen : generators) g.push_back(gen.automorphism);
    return g;
  }
};

namespace detail {

inline Mat mat_identity(const FieldSpecPtr& spec, std::size_t n) {
  Mat m = Mat::empty(spec, n);
  for (std::size_t i = 0; i < n; ++i) {
    Row r = zero_row(spec, n);
    r[i] = Scalar::one(spec);
    m.push(std::move(r));
  }
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  require(a.ncols == b.nrows(), errc::dimension_mismatch, "matrix product shape");
  Mat r = Mat::empty(a.spec, b.ncols);
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    Row row = zero_row(a.spec, b.ncols);
    for (std::size_t k = 0; k < a.ncols; ++k) {
      if (a.rows[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b.ncols; ++j) row[j] = row[j] + a.rows[i][k] * b.rows[k][j];
    }
    r.push(std::move(row));
  }
  return r;
}

inline bool mat_eq(const Mat& a, const Mat& b) {
  if (a.nrows() != b.nrows() || a.ncols != b.ncols) return false;
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (std::size_t j = 0; j < a.ncols; ++j)
      if (a.rows[i][j] != b.rows[i][j]) return false;
  return true;
}

/// Matrix (in the subfield's echelon basis) of conjugation v -> g v g^{-1}.
inline std::optional<Mat> conjugation_on_subspace(const StructureTensor& A, const Subspace& K,
                                                  const AlgElement& g) {
  auto ginv = try_inverse(A, g);
  if (!ginv) return std::nullopt;
  Mat m = Mat::empty(A.spec(), K.dim());
  std::vector<Row> cols;
  for (std::size_t j = 0; j < K.dim(); ++j) {
    AlgElement img = A.mul(A.mul(g, AlgElement{K.row(j)}), *ginv);
    auto coords = K.coords_of(img.coords);
    if (!coords) return std::nullopt;  // conjugation does not preserve K
    cols.push_back(*coords);
  }
  for (std::size_t i = 0; i < K.dim(); ++i) {
    Row r = zero_row(A.spec(), K.dim());
    for (std::size_t j = 0; j < K.dim(); ++j) r[j] = cols[j][i];
    m.push(std::move(r));
  }
  return m;
}

}  // namespace detail

/// For each weight pick one nonzero x_lambda in D_lambda (first echelon basis
/// vector) and return the induced automorphisms of Z(T); verifies that
/// lambda -> sigma_lambda is an injective group homomorphism of order p^rank.
inline GaloisData galois_from_torus(const StructureTensor& A, const Torus& T) {
  fp_t p = A.spec()->p();
  WeightDecomposition wd = weight_decomposition(A, T);

  std::vector<AlgElement> gens(T.toral_basis.begin() + 1, T.toral_basis.end());
  GeneratedSubfield zt = generate_subfield(A, gens);

  GaloisData out;
  out.subfield = zt.space;
  for (std::size_t w = 0; w < wd.weights.size(); ++w) {
    AlgElement x{wd.spaces[w].row(0)};
    auto m = detail::conjugation_on_subspace(A, zt.space, x);
    require(m.has_value(), errc::not_invertible,
            "conjugator is not invertible or does not stabilize Z(T)");
    out.generators.push_back(GaloisGenerator{wd.weights[w], x, std::move(*m)});
  }

  // group law: sigma_{v+w} = sigma_v sigma_w, sigma_0 = id, injectivity,
  // and every automorphism fixes the centre pointwise
  Mat id = detail::mat_identity(A.spec(), zt.space.dim());
  Row one_coords = [&] {
    auto c = zt.space.coords_of(A.unit().coords);
    require(c.has_value(), errc::internal, "Z(T) does not contain 1");
    return *c;
  }();
  for (std::size_t i = 0; i < out.generators.size(); ++i) {
    const auto& gi = out.generators[i];
    require(gi.weight.is_zero() == detail::mat_eq(gi.automorphism, id), errc::internal,
            "sigma_lambda = id exactly for the zero weight");
    Row img = zero_row(A.spec(), zt.space.dim());
    for (std::size_t r = 0; r < zt.space.dim(); ++r)
      for (std::size_t c = 0; c < zt.space.dim(); ++c)
        img[r] = img[r] + gi.automorphism.rows[r][c] * one_coords[c];
    require(img == one_coords, errc::internal, "automorphism moves the centre");
    for (std::size_t j = 0; j < out.generators.size(); ++j) {
      const auto& gj = out.generators[j];
      Weight sum = gi.weight.add(gj.weight, p);
      const Mat* target = nullptr;
      for (const auto& gk : out.generators)
        if (gk.weight == sum) target = &gk.automorphism;
      require(target != nullptr, errc::internal, "weight set not closed under addition");
      require(detail::mat_eq(detail::mat_mul(gi.automorphism, gj.automorphism), *target),
              errc::internal, "conjugation automorphisms do not compose along weights");
    }
  }
  for (std::size_t i = 0; i < out.generators.size(); ++i)
    for (std::size_t j = i + 1; j < out.generators.size(); ++j)
      require(!detail::mat_eq(out.generators[i].automorphism, out.generators[j].automorphism),
              errc::internal, "weight -> automorphism map is not injective");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < T.rank; ++i) expected *= static_cast<std::size_t>(p);
  require(out.generators.size() == expected, errc::internal,
          "Galois group order differs from p^rank");
  require(zt.space.dim() == expected, errc::internal, "[Z(T):Z] differs from p^rank");
  return out;
}

/// Given a subfield K Galois over Z with p-elementary abelian group (supplied
/// as automorphism matrices on K's echelon basis), produce toral generators
/// t_1..t_d with K = Z(t_1,...,t_d) via Artin-Schreier generators of the
/// index-p fixed subfields.
inline Torus artin_schreier_from_galois(const StructureTensor& A, const Subspace& K,
                                        const std::vector<Mat>& group) {
  fp_t p = A.spec()->p();
  std::size_t n = K.dim();
  require(!group.empty(), errc::not_elementary_abelian, "empty automorphism list");
  require(group.size() == n, errc::not_elementary_abelian,
          "|Gal| differs from [K:Z]; the extension is not Galois with this group");

  // group must be p-elementary abelian: commuting, every element of order p or 1
  Mat id = detail::mat_identity(A.spec(), n);
  std::size_t d = 0;
  std::size_t order = 1;
  while (order < group.size()) {
    order *= static_cast<std::size_t>(p);
    ++d;
  }
  require(order == group.size(), errc::not_elementary_abelian, "group order is not a power of p");
  for (const auto& g : group) {
    Mat pw = id;
    for (fp_t i = 0; i < p; ++i) pw = detail::mat_mul(pw, g);
    require(detail::mat_eq(pw, id), errc::not_elementary_abelian,
            "group element of order not dividing p");
  }
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t j = i + 1; j < group.size(); ++j)
      require(detail::mat_eq(detail::mat_mul(group[i], group[j]), detail::mat_mul(group[j], group[i])),
              errc::not_elementary_abelian, "group is not abelian");

  if (d == 0) return make_torus(A, {});

  // greedy independent generators gamma_1..gamma_d
  std::vector<Mat> gens;
  std::vector<Mat> span = {id};
  for (const auto& g : group) {
    bool known = false;
    for (const auto& s : span) known = known || detail::mat_eq(s, g);
    if (known) continue;
    gens.push_back(g);
    std::vector<Mat> bigger;
    for (const auto& s : span) {
      Mat cur = s;
      for (fp_t e = 0; e < p; ++e) {
        bigger.push_back(cur);
        cur = detail::mat_mul(cur, g);
      }
    }
    span = std::move(bigger);
    if (gens.size() == d) break;
  }
  require(gens.size() == d && span.size() == group.size(), errc::not_elementary_abelian,
          "could not decompose the group into rank-d elementary abelian form");

  Row one_in_K = [&] {
    auto c = K.coords_of(A.unit().coords);
    require(c.has_value(), errc::invalid_parameters, "K does not contain 1");
    return *c;
  }();

  std::vector<AlgElement> torals;
  for (std::size_t i = 0; i < d; ++i) {
    // K_i = fixed space of all generators except gamma_i
    Mat fix = Mat::empty(A.spec(), n);
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      Mat m = gens[j];
      for (std::size_t r = 0; r < n; ++r) m.rows[r][r] = m.rows[r][r] - Scalar::one(A.spec());
      for (auto& row : m.rows) fix.push(std::move(row));
    }
    Subspace Ki = d == 1 ? Subspace::whole(A.spec(), n)
                         : Subspace::from_rows(A.spec(), n, kernel(std::move(fix)).rows);

    // solve (gamma_i - id) t = 1 inside K_i
    Mat sys = Mat::empty(A.spec(), Ki.dim());
    for (std::size_t r = 0; r < n; ++r) {
      Row row = zero_row(A.spec(), Ki.dim());
      for (std::size_t cidx = 0; cidx < Ki.dim(); ++cidx) {
        // (gamma_i - id) applied to the c-th basis vector of K_i
        Scalar acc = Scalar::zero(A.spec());
        for (std::size_t k = 0; k < n; ++k) acc = acc + gens[i].rows[r][k] * Ki.row(cidx)[k];
        row[cidx] = acc - Ki.row(cidx)[r];
      }
      sys.push(std::move(row));
    }
    auto sol = solve(sys, one_in_K);
    require(sol.has_value(), errc::no_generator,
            "Artin-Schreier system sigma(t) = t + 1 is inconsistent");

    // back to ambient coordinates
    Row in_K = zero_row(A.spec(), n);
    for (std::size_t cidx = 0; cidx < Ki.dim(); ++cidx)
      in_K = row_add(in_K, row_scale(Ki.row(cidx), (*sol)[cidx]));
    Row ambient = zero_row(A.spec(), K.ambient_dim());
    for (std::size_t k = 0; k < n; ++k) ambient = row_add(ambient, row_scale(K.row(k), in_K[k]));
    AlgElement t{ambient};
    require(is_toral(A, t).toral, errc::no_generator,
            "recovered generator is not toral; the supplied data is inconsistent");
    torals.push_back(t);
  }

  Torus T = make_torus(A, torals);
  require(generate_subfield(A, torals).space == K, errc::no_generator,
          "recovered torus does not generate K");
  return T;
}

/// The six equivalent maximality conditions, each evaluated independently.
struct MaximalityReport {
  bool n_equals_rank = false;   // (i)   n = d
  bool zt_maximal = false;      // (ii)  Z(T) is a maximal subfield
  bool d0_maximal = false;      // (iii) D_0 is a maximal subfield
  bool d0_equals_zt = false;    // (iv)  D_0 = Z(T)
  bool d0_commutative = false;  // (v)   D_0 is commutative
  bool weight_count = false;    // (vi)  |Lambda| = p^n

  bool all_equal() const {
    return n_equals_rank == zt_maximal && zt_maximal == d0_maximal && d0_maximal == d0_equals_zt &&
           d0_equals_zt == d0_commutative && d0_commutative == weight_count;
  }
  bool all_true() const {
    return n_equals_rank && zt_maximal && d0_maximal && d0_equals_zt && d0_commutative && weight_count;
  }
};

inline MaximalityReport maximality_report(const StructureTensor& A, const Torus& T) {
  fp_t p = A.spec()->p();
  // [A : Z] must be p^(2n)
  std::size_t n = 0;
  std::size_t dim = A.dim();
  std::size_t acc = 1;
  while (acc < dim) {
    acc *= static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
    ++n;
  }
  require(acc == dim, errc::not_p_power_square_dimension, "[A:Z] is not an even power of p");

  WeightDecomposition wd = weight_decomposition(A, T);
  const Subspace& d0 = wd.zero_space();
  std::vector<AlgElement> gens(T.toral_basis.begin() + 1, T.toral_basis.end());
  Subspace zt = generate_subfield(A, gens).space;

  std::size_t pn = 1;
  for (std::size_t i = 0; i < n; ++i) pn *= static_cast<std::size_t>(p);

  MaximalityReport r;
  r.n_equals_rank = (T.rank == n);
  r.zt_maximal = (centralizer(A, zt) == zt);
  r.d0_maximal = (centralizer(A, d0) == d0);
  r.d0_equals_zt = (d0 == zt);
  r.d0_commutative = subspace_commutative(A, d0);
  r.weight_count = (wd.weights.size() == pn);
  return r;
}

}  // namespace skewlab
