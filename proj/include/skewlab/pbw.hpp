#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/fp.hpp"
#include "skewlab/lie.hpp"

namespace skewlab {

/// Ordered PBW exponent vector over a fixed Lie basis; compared by total
/// degree, then lexicographically.
using PbwMono = std::vector<std::uint32_t>;

struct PbwLess {
  bool operator()(const PbwMono& a, const PbwMono& b) const {
    std::uint64_t ta = 0, tb = 0;
    for (auto e : a) ta += e;
    for (auto e : b) tb += e;
    if (ta != tb) return ta < tb;
    return a < b;
  }
};

/// Element of U(L) in straightened form: a finite map from PBW monomials to
/// nonzero F_p coefficients.
struct UElement {
  std::size_t ngens = 0;
  std::map<PbwMono, fp_t, PbwLess> terms;

  bool is_zero() const { return terms.empty(); }
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms) {
      std::uint64_t t = 0;
      for (auto e : m) t += e;
      d = std::max(d, t);
    }
    return d;
  }

  static UElement zero(std::size_t n) { return UElement{n, {}}; }
  static UElement one(std::size_t n, fp_t /*p*/) {
    UElement u{n, {}};
    u.terms[PbwMono(n, 0)] = 1;
    return u;
  }
  static UElement monomial(std::size_t n, const PbwMono& m, fp_t c) {
    UElement u{n, {}};
    if (c) u.terms[m] = c;
    return u;
  }
  static UElement generator(std::size_t n, std::size_t i) {
    PbwMono m(n, 0);
    m[i] = 1;
    return monomial(n, m, 1);
  }
  static UElement from_lie(const FpVec& v, fp_t p) {
    UElement u{v.size(), {}};
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] % p) {
        PbwMono m(v.size(), 0);
        m[i] = 1;
        u.terms[m] = v[i] % p;
      }
    return u;
  }

  friend bool operator==(const UElement& a, const UElement& b) {
    return a.ngens == b.ngens && a.terms == b.terms;
  }
};

inline void u_add_term(UElement& u, const PbwMono& m, fp_t c, fp_t p) {
  if (!(c % p)) return;
  auto it = u.terms.find(m);
  if (it == u.terms.end()) {
    u.terms.emplace(m, c % p);
    return;
  }
  it->second = fp_add(it->second, c, p);
  if (!it->second) u.terms.erase(it);
}

inline UElement u_add(const UElement& a, const UElement& b, fp_t p) {
  UElement r = a;
  for (const auto& [m, c] : b.terms) u_add_term(r, m, c, p);
  return r;
}

inline UElement u_sub(const UElement& a, const UElement& b, fp_t p) {
  UElement r = a;
  for (const auto& [m, c] : b.terms) u_add_term(r, m, fp_neg(c, p), p);
  return r;
}

inline UElement u_scale(fp_t c, const UElement& a, fp_t p) {
  UElement r = UElement::zero(a.ngens);
  for (const auto& [m, cc] : a.terms) u_add_term(r, m, fp_mul(c, cc, p), p);
  return r;
}

/// Straightening engine with a rewrite cache; rewrites e_j e_i -> e_i e_j +
/// [e_j, e_i] for j > i, recursing until every word is sorted. The bracket
/// term is shorter, so the rewriting terminates.
class Straightener {
 public:
  explicit Straightener(const LiePresentation& L) : L_(L) {}

  const LiePresentation& algebra() const { return L_; }

  UElement mul(const UElement& a, const UElement& b) {
    fp_t p = L_.p();
    UElement r = UElement::zero(L_.dim());
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        Word w = expand(ma);
        Word wb = expand(mb);
        w.insert(w.end(), wb.begin(), wb.end());
        const UElement& s = straighten(w);
        fp_t c = fp_mul(ca, cb, p);
        for (const auto& [m, cc] : s.terms) u_add_term(r, m, fp_mul(c, cc, p), p);
      }
    return r;
  }

  UElement pow(const UElement& a, std::uint64_t e) {
    UElement r = UElement::one(L_.dim(), L_.p());
    UElement base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

 private:
  using Word = std::vector<std::uint32_t>;

  Word expand(const PbwMono& m) const {
    Word w;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) w.push_back(static_cast<std::uint32_t>(i));
    return w;
  }

  const UElement& straighten(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    fp_t p = L_.p();
    UElement result = UElement::zero(L_.dim());

    std::size_t k = 0;
    bool sorted = true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) {
        k = i;
        sorted = false;
        break;
      }
    if (sorted) {
      PbwMono m(L_.dim(), 0);
      for (auto g : w) m[g] += 1;
      result = UElement::monomial(L_.dim(), m, 1);
    } else {
      Word swapped = w;
      std::swap(swapped[k], swapped[k + 1]);
      result = straighten(swapped);
      // bracket term [e_{w_k}, e_{w_{k+1}}] replaces the adjacent pair
      for (const auto& [g, c] : L_.table(w[k], w[k + 1])) {
        Word shorter;
        shorter.reserve(w.size() - 1);
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (i == k) {
            shorter.push_back(static_cast<std::uint32_t>(g));
            ++i;  // the bracket replaces both w[k] and w[k+1]
            continue;
          }
          shorter.push_back(w[i]);
        }
        const UElement& sub = straighten(shorter);
        UElement scaled = u_scale(c, sub, p);
        result = u_add(result, scaled, p);
      }
    }
    return cache_.emplace(w, std::move(result)).first->second;
  }

  const LiePresentation& L_;
  std::map<Word, UElement> cache_;
};

/// Canonical straightened product in U(L).
inline UElement u_mul(const LiePresentation& L, const UElement& a, const UElement& b) {
  Straightener s(L);
  return s.mul(a, b);
}

struct CentralityResult {
  bool central = false;
  std::size_t failing_generator = 0;  // first witness when not central
};

/// [a, b_j] = 0 in U(L) for every Lie basis element b_j; the generators
/// generate U, so this decides centrality.
inline CentralityResult centrality_check_with(Straightener& s, const UElement& a) {
  const LiePresentation& L = s.algebra();
  for (std::size_t j = 0; j < L.dim(); ++j) {
    UElement ej = UElement::generator(L.dim(), j);
    UElement comm = u_sub(s.mul(a, ej), s.mul(ej, a), L.p());
    if (!comm.is_zero()) return CentralityResult{false, j};
  }
  return CentralityResult{true, 0};
}

inline CentralityResult centrality_check(const LiePresentation& L, const UElement& a) {
  Straightener s(L);
  return centrality_check_with(s, a);
}

/// The p-centre generators b_i^p - b_i^[p], each verified central.
inline std::vector<UElement> p_centre_gens(const LiePresentation& L) {
  RestrictedCheck rc = restricted_check(L);
  require(L.has_pmap() && rc.restricted, errc::not_restricted, "algebra is not restricted");
  fp_t p = L.p();
  Straightener s(L);
  std::vector<UElement> out;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    PbwMono m(L.dim(), 0);
    m[i] = static_cast<std::uint32_t>(p);
    UElement gen = u_sub(UElement::monomial(L.dim(), m, 1), UElement::from_lie(L.pmap()[i], p), p);
    require(centrality_check_with(s, gen).central, errc::internal,
            "p-centre generator is not central");
    out.push_back(std::move(gen));
  }
  return out;
}

/// The central variables u_i = x_i - y_{i-1}^p of an envelope presentation;
/// raises CentralityFailure if any commutator with the basis survives.
inline std::vector<UElement> central_u_variables(const EnvelopePresentation& env) {
  const LiePresentation& L = env.algebra;
  fp_t p = L.p();
  Straightener s(L);
  std::vector<UElement> out;
  for (std::size_t i = 0; i < env.y_coords.size(); ++i) {
    UElement x = UElement::generator(L.dim(), env.base_dim + i);
    UElement y = UElement::from_lie(env.y_coords[i], p);
    UElement u = u_sub(x, s.pow(y, p), p);
    CentralityResult cr = centrality_check_with(s, u);
    require(cr.central, errc::centrality_failure,
            "u_" + std::to_string(i + 1) + " fails to commute with basis element " +
                std::to_string(cr.failing_generator));
    out.push_back(std::move(u));
  }
  return out;
}

namespace detail {

/// Sparse incremental rank check over F_p: returns false as soon as a row
/// reduces to zero against the accumulated pivots.
class SparseRank {
 public:
  explicit SparseRank(fp_t p) : p_(p) {}

  bool add_independent(UElement row) {
    for (;;) {
      if (row.is_zero()) return false;
      PbwMono lead = row.terms.rbegin()->first;  // largest monomial
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        fp_t inv = fp_inv(row.terms.rbegin()->second, p_);
        pivots_.emplace(lead, u_scale(inv, row, p_));
        return true;
      }
      fp_t c = row.terms.rbegin()->second;
      row = u_sub(row, u_scale(c, it->second, p_), p_);
    }
  }

 private:
  fp_t p_;
  std::map<PbwMono, UElement, PbwLess> pivots_;
};

}  // namespace detail

/// Finite shadow of the polynomial-extension structure: all products
/// m * u^alpha with deg(m) + |alpha| <= degree_bound must stay linearly
/// independent, where m runs over PBW monomials of the base algebra.
inline bool freeness_check(const EnvelopePresentation& env, const std::vector<UElement>& u_vars,
                           std::uint32_t degree_bound) {
  const LiePresentation& L = env.algebra;
  fp_t p = L.p();
  require(degree_bound >= p, errc::invalid_parameters, "degree bound must be at least p");
  std::size_t q = u_vars.size();
  Straightener s(L);

  // u^alpha for all |alpha| <= degree_bound
  std::vector<std::pair<std::vector<std::uint32_t>, UElement>> upowers;
  std::vector<std::uint32_t> alpha(q, 0);
  auto rec_alpha = [&](auto&& self, std::size_t idx, std::uint32_t left) -> void {
    if (idx == q) {
      UElement prod = UElement::one(L.dim(), p);
      for (std::size_t i = 0; i < q; ++i)
        if (alpha[i]) prod = s.mul(prod, s.pow(u_vars[i], alpha[i]));
      upowers.emplace_back(alpha, prod);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      alpha[idx] = e;
      self(self, idx + 1, left - e);
    }
    alpha[idx] = 0;
  };
  rec_alpha(rec_alpha, 0, degree_bound);

  // PBW monomials of the base algebra, degree filtered per alpha
  std::vector<PbwMono> base_monos;
  PbwMono mono(L.dim(), 0);
  auto rec_mono = [&](auto&& self, std::size_t idx, std::uint32_t left) -> void {
    if (idx == env.base_dim) {
      base_monos.push_back(mono);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      mono[idx] = e;
      self(self, idx + 1, left - e);
    }
    mono[idx] = 0;
  };
  rec_mono(rec_mono, 0, degree_bound);

  detail::SparseRank rank(p);
  for (const auto& [av, upow] : upowers) {
    std::uint32_t da = 0;
    for (auto e : av) da += e;
    for (const auto& m : base_monos) {
      std::uint32_t dm = 0;
      for (auto e : m) dm += e;
      if (dm + da > degree_bound) continue;
      UElement row = s.mul(UElement::monomial(L.dim(), m, 1), upow);
      if (!rank.add_independent(std::move(row))) return false;
    }
  }
  return true;
}

/// Torality inside the enveloping algebra, decided for elements of degree <=
/// 1: a is toral iff a^p - a is central in U(L).
inline bool toral_in_envelope(const LiePresentation& L, const UElement& a) {
  require(a.degree() <= 1, errc::degree_too_high,
          "torality is decided for degree <= 1 elements only");
  Straightener s(L);
  UElement w = u_sub(s.pow(a, L.p()), a, L.p());
  return centrality_check_with(s, w).central;
}

/// Serialization order: descending PBW order, exponents comma-joined.
inline std::vector<std::pair<std::string, std::string>> u_serialize(const UElement& a) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
    std::string key;
    for (std::size_t i = 0; i < it->first.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(it->first[i]);
    }
    out.emplace_back(key, std::to_string(it->second));
  }
  return out;
}

}  // namespace skewlab
