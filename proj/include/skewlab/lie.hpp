#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/fp.hpp"
#include "skewlab/fpmat.hpp"

namespace skewlab {

/// Lie algebra over F_p by sparse structure constants, with an optional
/// p-mapping given on the basis.
class LiePresentation {
 public:
  struct Entry {
    std::size_t i, j, k;
    fp_t c;
  };

  LiePresentation(fp_t p, std::size_t dim, const std::vector<Entry>& bracket,
                  std::optional<std::vector<FpVec>> pmap = std::nullopt)
      : p_(p), dim_(dim), table_(dim * dim), pmap_(std::move(pmap)) {
    require(is_prime(p_), errc::invalid_parameters, "characteristic must be prime");
    require(dim_ > 0, errc::invalid_parameters, "dimension must be positive");
    for (const auto& e : bracket) {
      require(e.i < dim_ && e.j < dim_ && e.k < dim_, errc::invalid_parameters,
              "bracket index out of range");
      fp_t c = e.c % p_;
      if (!c) continue;
      add_entry(e.i, e.j, e.k, c);
      add_entry(e.j, e.i, e.k, fp_neg(c, p_));  // antisymmetry
    }
    for (std::size_t i = 0; i < dim_; ++i)
      require(table_[i * dim_ + i].empty(), errc::invalid_parameters, "[x,x] must vanish");
    if (pmap_) {
      require(pmap_->size() == dim_, errc::invalid_parameters, "pmap must cover the basis");
      for (const auto& v : *pmap_)
        require(v.size() == dim_, errc::invalid_parameters, "pmap coordinate length mismatch");
    }
  }

  fp_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  bool has_pmap() const { return pmap_.has_value(); }
  const std::vector<FpVec>& pmap() const {
    require(pmap_.has_value(), errc::not_restricted, "presentation carries no p-mapping");
    return *pmap_;
  }
  const std::vector<std::pair<std::size_t, fp_t>>& table(std::size_t i, std::size_t j) const {
    return table_[i * dim_ + j];
  }
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (const auto& [k, c] : table_[i * dim_ + j]) out.push_back(Entry{i, j, k, c});
    return out;
  }

  FpVec bracket(const FpVec& x, const FpVec& y) const {
    FpVec r(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!y[j]) continue;
        fp_t c = fp_mul(x[i], y[j], p_);
        for (const auto& [k, v] : table_[i * dim_ + j]) r[k] = fp_add(r[k], fp_mul(c, v, p_), p_);
      }
    }
    return r;
  }

  FpVec basis_vector(std::size_t i) const {
    FpVec v(dim_, 0);
    v[i] = 1;
    return v;
  }

  FpMat ad(const FpVec& x) const {
    FpMat m = FpMat::zero(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      FpVec col = bracket(x, basis_vector(j));
      for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
    }
    return m;
  }

 private:
  void add_entry(std::size_t i, std::size_t j, std::size_t k, fp_t c) {
    auto& cell = table_[i * dim_ + j];
    for (auto& [kk, cc] : cell)
      if (kk == k) {
        cc = fp_add(cc, c, p_);
        return;
      }
    cell.emplace_back(k, c);
  }

  fp_t p_;
  std::size_t dim_;
  std::vector<std::vector<std::pair<std::size_t, fp_t>>> table_;
  std::optional<std::vector<FpVec>> pmap_;
};

struct JacobiResult {
  bool holds = true;
  std::size_t i = 0, j = 0, k = 0;  // first failing triple when !holds
};

inline JacobiResult jacobi_check(const LiePresentation& L) {
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j)
      for (std::size_t k = j + 1; k < L.dim(); ++k) {
        FpVec ei = L.basis_vector(i), ej = L.basis_vector(j), ek = L.basis_vector(k);
        FpVec sum = fpvec_add(
            fpvec_add(L.bracket(L.bracket(ei, ej), ek), L.bracket(L.bracket(ej, ek), ei), L.p()),
            L.bracket(L.bracket(ek, ei), ej), L.p());
        if (!fpvec_is_zero(sum)) return JacobiResult{false, i, j, k};
      }
  return JacobiResult{};
}

struct DerivedSeries {
  std::vector<FpSubspace> series;  // L = S_0 > S_1 > ... until stabilization
  bool solvable = false;
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : series) d.push_back(s.dim());
    return d;
  }
};

namespace detail {
inline FpSubspace derived_of(const LiePresentation& L, const FpSubspace& S) {
  std::vector<FpVec> rows;
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = i + 1; j < S.dim(); ++j) rows.push_back(L.bracket(S.row(i), S.row(j)));
  return FpSubspace::from_rows(L.dim(), rows, L.p());
}
}  // namespace detail

inline DerivedSeries derived_series(const LiePresentation& L) {
  DerivedSeries out;
  std::vector<FpVec> all;
  for (std::size_t i = 0; i < L.dim(); ++i) all.push_back(L.basis_vector(i));
  FpSubspace cur = FpSubspace::from_rows(L.dim(), all, L.p());
  out.series.push_back(cur);
  for (;;) {
    FpSubspace next = detail::derived_of(L, cur);
    if (next.dim() == cur.dim()) break;
    out.series.push_back(next);
    cur = next;
    if (cur.dim() == 0) break;
  }
  out.solvable = out.series.back().dim() == 0;
  return out;
}

struct RestrictedCheck {
  bool restricted = false;            // with pmap: the defining identity holds
  bool restrictable = false;          // without pmap: every (ad b_i)^p is inner
  std::vector<FpVec> preimages;       // witnesses y_i with ad(y_i) = (ad b_i)^p
  std::optional<std::size_t> failing_basis;  // first basis element that fails
  std::string detail;
};

/// With a pmap: verify (ad x)^p = ad(x^[p]) on the basis. Without: solve for
/// inner preimages of each (ad b_i)^p, which decides restrictability.
inline RestrictedCheck restricted_check(const LiePresentation& L) {
  RestrictedCheck out;
  fp_t p = L.p();
  std::size_t n = L.dim();
  if (L.has_pmap()) {
    out.restricted = true;
    for (std::size_t i = 0; i < n; ++i) {
      FpMat lhs = fpmat_pow(L.ad(L.basis_vector(i)), p, p);
      FpMat rhs = L.ad(L.pmap()[i]);
      if (!(lhs == rhs)) {
        out.restricted = false;
        out.failing_basis = i;
        out.detail = "(ad b_" + std::to_string(i) + ")^p differs from ad(b_" + std::to_string(i) +
                     "^[p])";
        return out;
      }
    }
    out.restrictable = true;
    return out;
  }
  // linear system: ad(y) = (ad b_i)^p, unknowns y in L
  FpMat ad_map = FpMat::zero(n * n, n);  // columns: ad(e_c) flattened
  for (std::size_t c = 0; c < n; ++c) {
    FpMat m = L.ad(L.basis_vector(c));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ad_map.at(i * n + j, c) = m.at(i, j);
  }
  out.restrictable = true;
  for (std::size_t i = 0; i < n; ++i) {
    FpMat target = fpmat_pow(L.ad(L.basis_vector(i)), p, p);
    FpVec flat(n * n, 0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = target.at(r, c);
    auto y = fp_solve(ad_map, flat, p);
    if (!y) {
      out.restrictable = false;
      out.failing_basis = i;
      out.detail = "(ad b_" + std::to_string(i) + ")^p is not an inner derivation";
      return out;
    }
    out.preimages.push_back(*y);
  }
  return out;
}

/// p-th power of an arbitrary element of a restricted Lie algebra, assembled
/// from the basis pmap with Jacobson's summands:
///   (x + y)^[p] = x^[p] + y^[p] + sum_i s_i(x, y),
/// where i*s_i(x,y) is the t^(i-1) coefficient of ad(tx + y)^(p-1) (x).
inline FpVec p_power(const LiePresentation& L, const FpVec& y) {
  fp_t p = L.p();
  std::size_t n = L.dim();
  const auto& pm = L.pmap();

  FpVec acc(n, 0), acc_pow(n, 0);
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] % p)) continue;
    FpVec term = fpvec_scale(y[i] % p, L.basis_vector(i), p);
    FpVec term_pow = fpvec_scale(fp_pow(y[i] % p, p, p), pm[i], p);
    if (first) {
      acc = term;
      acc_pow = term_pow;
      first = false;
      continue;
    }
    // polynomial in t with FpVec coefficients: w(t) = ad(t*acc + term)^(p-1) (acc)
    std::vector<FpVec> w{acc};  // degree 0
    for (fp_t step = 0; step + 1 < p; ++step) {
      std::vector<FpVec> next(w.size() + 1, FpVec(n, 0));
      for (std::size_t d = 0; d < w.size(); ++d) {
        next[d] = fpvec_add(next[d], L.bracket(term, w[d]), p);
        next[d + 1] = fpvec_add(next[d + 1], L.bracket(acc, w[d]), p);
      }
      w = std::move(next);
    }
    FpVec jac(n, 0);
    for (fp_t i_s = 1; i_s < p; ++i_s)
      jac = fpvec_add(jac, fpvec_scale(fp_inv(i_s, p), w[i_s - 1], p), p);
    acc_pow = fpvec_add(fpvec_add(acc_pow, term_pow, p), jac, p);
    acc = fpvec_add(acc, term, p);
  }
  return acc_pow;
}

/// The p-envelope chain data: L = L_0 < L_1 < ... < L_q = L_(p) inside a
/// restricted ambient G, with steps x_i = y_{i-1}^[p].
struct EnvelopeChain {
  const LiePresentation* ambient = nullptr;
  std::vector<FpVec> base_basis;     // basis of L, in the given order
  std::vector<FpSubspace> chain;     // L_0, ..., L_q
  struct Step {
    FpVec y;  // element of L_{i-1}
    FpVec x;  // y^[p], adjoined to form L_i
  };
  std::vector<Step> steps;

  std::size_t q() const { return steps.size(); }
  /// Chain-adapted basis: L's basis first, adjoined x_i last.
  std::vector<FpVec> adapted_basis() const {
    std::vector<FpVec> b = base_basis;
    for (const auto& s : steps) b.push_back(s.x);
    return b;
  }
};

/// Abstract presentation of the envelope on the chain-adapted basis,
/// validated restricted.
struct EnvelopePresentation {
  LiePresentation algebra;
  std::size_t base_dim = 0;  // first base_dim basis vectors span L
  std::vector<FpVec> y_coords;  // chain y_{i-1} in adapted coordinates
};

/// Iterated p-closure: scan the chain-adapted basis in order, adjoin the
/// first p-th power that escapes, repeat until closed.
inline EnvelopeChain p_closure_chain(const LiePresentation& G, const std::vector<FpVec>& L_basis) {
  RestrictedCheck rc = restricted_check(G);
  require(G.has_pmap() && rc.restricted, errc::not_restricted,
          "ambient algebra is not restricted");
  require(!L_basis.empty(), errc::invalid_parameters, "empty basis");
  fp_t p = G.p();

  FpSubspace span = FpSubspace::from_rows(G.dim(), L_basis, p);
  require(span.dim() == L_basis.size(), errc::invalid_parameters, "basis is linearly dependent");
  for (std::size_t i = 0; i < L_basis.size(); ++i)
    for (std::size_t j = i + 1; j < L_basis.size(); ++j)
      require(span.contains(G.bracket(L_basis[i], L_basis[j])), errc::not_a_subalgebra,
              "input space is not closed under the bracket");

  EnvelopeChain out;
  out.ambient = &G;
  out.base_basis = L_basis;
  out.chain.push_back(span);

  std::vector<FpVec> adapted = L_basis;
  for (;;) {
    bool grew = false;
    for (const auto& y : adapted) {
      FpVec x = p_power(G, y);
      if (!span.contains(x)) {
        out.steps.push_back(EnvelopeChain::Step{y, x});
        adapted.push_back(x);
        std::vector<FpVec> rows = adapted;
        span = FpSubspace::from_rows(G.dim(), rows, p);
        out.chain.push_back(span);
        grew = true;
        break;  // deterministic: restart the scan from the first basis vector
      }
    }
    if (!grew) break;
  }

  // every L_i is an ideal in the final space
  for (const auto& Li : out.chain)
    for (std::size_t a = 0; a < span.dim(); ++a)
      for (std::size_t b = 0; b < Li.dim(); ++b)
        require(Li.contains(G.bracket(span.row(a), Li.row(b))), errc::internal,
                "chain member is not an ideal in the envelope");
  return out;
}

/// Express the envelope abstractly on the chain-adapted basis.
inline EnvelopePresentation envelope_presentation(const EnvelopeChain& chain) {
  const LiePresentation& G = *chain.ambient;
  fp_t p = G.p();
  std::vector<FpVec> basis = chain.adapted_basis();
  std::size_t n = basis.size();
  FpSubspace span = FpSubspace::from_rows(G.dim(), basis, p);

  // coordinates of an ambient vector in the adapted basis, via the echelon
  // coordinates and the change of basis
  FpMat change = FpMat::zero(n, n);  // basis[i] = sum_j change(j,i) * echelon_j
  for (std::size_t i = 0; i < n; ++i) {
    auto c = span.coords_of(basis[i]);
    require(c.has_value(), errc::internal, "adapted basis outside its own span");
    for (std::size_t j = 0; j < n; ++j) change.at(j, i) = (*c)[j];
  }
  auto adapted_coords = [&](const FpVec& v) {
    auto ech = span.coords_of(v);
    require(ech.has_value(), errc::internal, "envelope is not closed");
    return fp_solve(change, *ech, p);
  };

  std::vector<LiePresentation::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto c = adapted_coords(G.bracket(basis[i], basis[j]));
      require(c.has_value(), errc::internal, "bracket escapes the envelope");
      for (std::size_t k = 0; k < n; ++k)
        if ((*c)[k]) entries.push_back(LiePresentation::Entry{i, j, k, (*c)[k]});
    }
  std::vector<FpVec> pmap;
  for (std::size_t i = 0; i < n; ++i) {
    auto c = adapted_coords(p_power(G, basis[i]));
    require(c.has_value(), errc::internal, "p-th power escapes the envelope");
    pmap.push_back(*c);
  }
  EnvelopePresentation out{LiePresentation(p, n, entries, pmap), chain.base_basis.size(), {}};
  RestrictedCheck rc = restricted_check(out.algebra);
  require(rc.restricted, errc::internal, "envelope presentation is not restricted");
  for (const auto& step : chain.steps) {
    auto c = adapted_coords(step.y);
    require(c.has_value(), errc::internal, "chain witness escapes the envelope");
    out.y_coords.push_back(*c);
  }
  return out;
}

/// Presentation induced on a bracket-closed subspace, in the given basis
/// order. Raises NotASubalgebra when a bracket escapes the span.
inline LiePresentation subalgebra_presentation(const LiePresentation& L,
                                               const std::vector<FpVec>& basis) {
  fp_t p = L.p();
  std::size_t n = basis.size();
  require(n > 0, errc::invalid_parameters, "empty basis");
  FpSubspace span = FpSubspace::from_rows(L.dim(), basis, p);
  require(span.dim() == n, errc::invalid_parameters, "basis is linearly dependent");

  FpMat change = FpMat::zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = span.coords_of(basis[i]);
    for (std::size_t j = 0; j < n; ++j) change.at(j, i) = (*c)[j];
  }
  std::vector<LiePresentation::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      FpVec br = L.bracket(basis[i], basis[j]);
      auto ech = span.coords_of(br);
      require(ech.has_value(), errc::not_a_subalgebra, "bracket escapes the subspace");
      auto c = fp_solve(change, *ech, p);
      require(c.has_value(), errc::internal, "change of basis is singular");
      for (std::size_t k = 0; k < n; ++k)
        if ((*c)[k]) entries.push_back(LiePresentation::Entry{i, j, k, (*c)[k]});
    }
  return LiePresentation(p, n, entries);
}

// ---- named families ---------------------------------------------------------

/// The Zassenhaus algebra W(1,m): basis e_{-1}, ..., e_{p^m - 2} with
/// [e_i, e_j] = (C(i+j+1, i) - C(i+j+1, j)) e_{i+j}.
inline LiePresentation zassenhaus(fp_t p, std::uint32_t m) {
  require(p > 2 && is_prime(p), errc::invalid_parameters, "p must be an odd prime");
  require(m >= 1, errc::invalid_parameters, "m must be >= 1");
  std::size_t dim = 1;
  for (std::uint32_t i = 0; i < m; ++i) dim *= static_cast<std::size_t>(p);
  std::vector<LiePresentation::Entry> entries;
  auto lo = [](std::size_t idx) { return static_cast<long long>(idx) - 1; };  // basis index -> weight
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b) {
      long long i = lo(a), j = lo(b);
      long long target = i + j;
      if (target < -1 || target > static_cast<long long>(dim) - 2) continue;
      fp_t c = fp_sub(binom_mod_p(i + j + 1, i, p), binom_mod_p(i + j + 1, j, p), p);
      if (c) entries.push_back(LiePresentation::Entry{a, b, static_cast<std::size_t>(target + 1), c});
    }
  LiePresentation L(p, dim, entries);
  JacobiResult jr = jacobi_check(L);
  require(jr.holds, errc::internal, "Zassenhaus constants fail the Jacobi identity");
  return L;
}

/// Standard filiform algebra f_n: [e_1, e_i] = e_{i+1} for 2 <= i <= n-1.
inline LiePresentation filiform(fp_t p, std::size_t n) {
  require(n >= 3, errc::invalid_parameters, "filiform needs dimension >= 3");
  std::vector<LiePresentation::Entry> entries;
  for (std::size_t i = 1; i + 1 < n; ++i) entries.push_back(LiePresentation::Entry{0, i, i + 1, 1});
  return LiePresentation(p, n, entries);
}

/// gl_n over F_p with the matrix p-th power as p-mapping: basis E_ab in
/// row-major order, [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb.
inline LiePresentation gl_presentation(fp_t p, std::size_t n) {
  std::size_t dim = n * n;
  auto idx = [&](std::size_t a, std::size_t b) { return a * n + b; };
  std::vector<LiePresentation::Entry> entries;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          std::size_t s = idx(a, b), t = idx(c, d);
          if (s >= t) continue;
          FpVec v(dim, 0);
          if (b == c) v[idx(a, d)] = fp_add(v[idx(a, d)], 1, p);
          if (d == a) v[idx(c, b)] = fp_sub(v[idx(c, b)], 1, p);
          for (std::size_t k = 0; k < dim; ++k)
            if (v[k]) entries.push_back(LiePresentation::Entry{s, t, k, v[k]});
        }
  std::vector<FpVec> pmap;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      FpVec v(dim, 0);
      if (a == b) v[idx(a, b)] = 1;  // E_aa^p = E_aa, E_ab^p = 0 otherwise
      pmap.push_back(v);
    }
  return LiePresentation(p, dim, entries, pmap);
}

/// The 2-dimensional algebra <h, e> with [h, e] = e; restricted via h^[p] = h,
/// e^[p] = 0.
inline LiePresentation borel2(fp_t p) {
  std::vector<LiePresentation::Entry> entries = {{0, 1, 1, 1}};
  std::vector<FpVec> pmap = {{1, 0}, {0, 0}};
  return LiePresentation(p, 2, entries, pmap);
}

/// Embedding of filiform f_5 into gl_6: e_1 = E_10 + E_21 + E_32 + E_43 + E_54,
/// e_j = E_j0 for j = 2..5.
inline std::vector<FpVec> filiform5_gl6_embedding() {
  std::size_t n = 6;
  auto idx = [&](std::size_t a, std::size_t b) { return a * n + b; };
  std::vector<FpVec> rows;
  FpVec e1(n * n, 0);
  e1[idx(1, 0)] = 1;
  for (std::size_t i = 1; i <= 4; ++i) e1[idx(i + 1, i)] = 1;
  rows.push_back(e1);
  for (std::size_t j = 2; j <= 5; ++j) {
    FpVec ej(n * n, 0);
    ej[idx(j, 0)] = 1;
    rows.push_back(ej);
  }
  return rows;
}

}  // namespace skewlab
