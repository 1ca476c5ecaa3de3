#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/fp.hpp"

namespace skewlab {

/// Exponent vector over a fixed ordered variable list.
struct Monomial {
  std::vector<std::uint32_t> exps;

  std::uint64_t total_degree() const {
    std::uint64_t t = 0;
    for (auto e : exps) t += e;
    return t;
  }
  bool is_one() const {
    for (auto e : exps)
      if (e) return false;
    return true;
  }
  static Monomial one(std::size_t nvars) { return Monomial{std::vector<std::uint32_t>(nvars, 0)}; }
  static Monomial var(std::size_t nvars, std::size_t idx, std::uint32_t e = 1) {
    Monomial m = one(nvars);
    m.exps[idx] = e;
    return m;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Graded lexicographic comparison in the declared variable order:
/// higher total degree first, ties broken by the leftmost differing exponent.
inline int grlex_cmp(const Monomial& a, const Monomial& b) {
  std::uint64_t ta = a.total_degree(), tb = b.total_degree();
  if (ta != tb) return ta < tb ? -1 : 1;
  for (std::size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
  return 0;
}

struct grlex_less {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) < 0; }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
  return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] > b.exps[i]) return false;
  return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r = b;
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] -= a.exps[i];
  return r;
}

/// Multivariate polynomial over F_p in canonical form: terms strictly
/// descending in graded-lex order, all coefficients in {1,...,p-1}.
struct Poly {
  struct Term {
    Monomial mono;
    fp_t coeff;
  };

  std::size_t nvars = 0;
  std::vector<Term> terms;  // leading term first

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].mono.is_one()); }
  fp_t constant_value() const { return terms.empty() ? 0 : terms[0].coeff; }
  const Monomial& leading_mono() const { return terms.front().mono; }
  fp_t leading_coeff() const { return terms.front().coeff; }
  std::uint64_t total_degree() const { return terms.empty() ? 0 : terms.front().mono.total_degree(); }

  bool uses_var(std::size_t idx) const {
    for (const auto& t : terms)
      if (t.mono.exps[idx]) return true;
    return false;
  }
  std::uint32_t degree_in(std::size_t idx) const {
    std::uint32_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.mono.exps[idx]);
    return d;
  }

  static Poly zero(std::size_t nvars) { return Poly{nvars, {}}; }
  static Poly constant(std::size_t nvars, fp_t c, fp_t p) {
    c %= p;
    if (c == 0) return zero(nvars);
    return Poly{nvars, {Term{Monomial::one(nvars), c}}};
  }
  static Poly variable(std::size_t nvars, std::size_t idx, std::uint32_t e = 1) {
    return Poly{nvars, {Term{Monomial::var(nvars, idx, e), 1}}};
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars != b.nvars || a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].coeff != b.terms[i].coeff || !(a.terms[i].mono == b.terms[i].mono)) return false;
    return true;
  }
};

namespace detail {
inline Poly from_map(std::size_t nvars, const std::map<Monomial, fp_t, grlex_less>& acc) {
  Poly r = Poly::zero(nvars);
  r.terms.reserve(acc.size());
  // map is ascending; emit descending
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second) r.terms.push_back(Poly::Term{it->first, it->second});
  return r;
}
}  // namespace detail

inline Poly poly_add(const Poly& a, const Poly& b, fp_t p) {
  require(a.nvars == b.nvars, errc::internal, "poly_add variable count mismatch");
  Poly r = Poly::zero(a.nvars);
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    int c = grlex_cmp(a.terms[i].mono, b.terms[j].mono);
    if (c > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (c < 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      fp_t s = fp_add(a.terms[i].coeff, b.terms[j].coeff, p);
      if (s) r.terms.push_back(Poly::Term{a.terms[i].mono, s});
      ++i, ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

inline Poly poly_neg(const Poly& a, fp_t p) {
  Poly r = a;
  for (auto& t : r.terms) t.coeff = fp_neg(t.coeff, p);
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b, fp_t p) { return poly_add(a, poly_neg(b, p), p); }

inline Poly poly_scale(const Poly& a, fp_t c, fp_t p) {
  c %= p;
  if (c == 0) return Poly::zero(a.nvars);
  Poly r = a;
  for (auto& t : r.terms) t.coeff = fp_mul(t.coeff, c, p);
  return r;
}

inline Poly poly_mul_term(const Poly& a, const Monomial& m, fp_t c, fp_t p) {
  c %= p;
  if (c == 0 || a.is_zero()) return Poly::zero(a.nvars);
  Poly r = a;
  for (auto& t : r.terms) {
    t.mono = mono_mul(t.mono, m);
    t.coeff = fp_mul(t.coeff, c, p);
  }
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b, fp_t p) {
  require(a.nvars == b.nvars, errc::internal, "poly_mul variable count mismatch");
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.nvars);
  std::map<Monomial, fp_t, grlex_less> acc;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      Monomial m = mono_mul(ta.mono, tb.mono);
      fp_t& slot = acc[m];
      slot = fp_add(slot, fp_mul(ta.coeff, tb.coeff, p), p);
    }
  return detail::from_map(a.nvars, acc);
}

inline Poly poly_pow(Poly a, std::uint64_t e, fp_t p) {
  Poly r = Poly::constant(a.nvars, 1, p);
  while (e) {
    if (e & 1) r = poly_mul(r, a, p);
    a = poly_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

/// Scale so the graded-lex leading coefficient is 1.
inline Poly poly_monic(const Poly& a, fp_t p) {
  if (a.is_zero()) return a;
  return poly_scale(a, fp_inv(a.leading_coeff(), p), p);
}

/// Exact division; raises internal error when g does not divide f.
inline Poly poly_divexact(const Poly& f, const Poly& g, fp_t p) {
  require(!g.is_zero(), errc::division_by_zero, "polynomial division by zero");
  Poly r = f;
  Poly q = Poly::zero(f.nvars);
  std::map<Monomial, fp_t, grlex_less> qacc;
  while (!r.is_zero()) {
    require(mono_divides(g.leading_mono(), r.leading_mono()), errc::internal,
            "poly_divexact: not an exact multiple");
    Monomial m = mono_div(r.leading_mono(), g.leading_mono());
    fp_t c = fp_mul(r.leading_coeff(), fp_inv(g.leading_coeff(), p), p);
    qacc[m] = c;
    r = poly_sub(r, poly_mul_term(g, m, c, p), p);
  }
  return detail::from_map(f.nvars, qacc);
}

/// Coefficient of v^k, with variable v zeroed out of the monomials.
inline Poly poly_coeff_in_var(const Poly& f, std::size_t v, std::uint32_t k) {
  Poly r = Poly::zero(f.nvars);
  for (const auto& t : f.terms)
    if (t.mono.exps[v] == k) {
      Monomial m = t.mono;
      m.exps[v] = 0;
      r.terms.push_back(Poly::Term{m, t.coeff});
    }
  std::sort(r.terms.begin(), r.terms.end(),
            [](const Poly::Term& a, const Poly::Term& b) { return grlex_cmp(a.mono, b.mono) > 0; });
  return r;
}

Poly poly_gcd(const Poly& a, const Poly& b, fp_t p);

namespace detail {

/// Content of f viewed as a univariate polynomial in variable v.
inline Poly poly_content_in_var(const Poly& f, std::size_t v, fp_t p) {
  Poly c = Poly::zero(f.nvars);
  std::uint32_t d = f.degree_in(v);
  for (std::uint32_t k = 0; k <= d; ++k) {
    Poly ck = poly_coeff_in_var(f, v, k);
    if (!ck.is_zero()) c = c.is_zero() ? poly_monic(ck, p) : poly_gcd(c, ck, p);
    if (c.is_constant() && !c.is_zero()) break;  // content is already trivial
  }
  return c;
}

inline Poly poly_primitive_in_var(const Poly& f, std::size_t v, fp_t p, Poly* content_out = nullptr) {
  Poly c = poly_content_in_var(f, v, p);
  if (content_out) *content_out = c;
  if (c.is_zero()) return f;
  return poly_divexact(f, c, p);
}

/// Exact pseudo-remainder: returns lc_v(g)^(deg f - deg g + 1) * f mod g.
inline Poly poly_prem(Poly f, const Poly& g, std::size_t v, fp_t p) {
  std::uint32_t dg = g.degree_in(v);
  Poly lg = poly_coeff_in_var(g, v, dg);
  std::int64_t scale_left =
      f.is_zero() ? 0 : static_cast<std::int64_t>(f.degree_in(v)) - dg + 1;
  while (!f.is_zero() && f.degree_in(v) >= dg) {
    std::uint32_t df = f.degree_in(v);
    Poly lf = poly_coeff_in_var(f, v, df);
    // f <- lg*f - lf*v^(df-dg)*g, strictly dropping deg_v
    Poly shift = poly_mul_term(g, Monomial::var(g.nvars, v, df - dg), 1, p);
    f = poly_sub(poly_mul(lg, f, p), poly_mul(lf, shift, p), p);
    --scale_left;
  }
  for (; scale_left > 0; --scale_left) f = poly_mul(lg, f, p);
  return f;
}

/// Dense univariate coefficient vector in variable v (constants elsewhere).
inline bool poly_to_univar(const Poly& f, std::size_t v, std::vector<fp_t>& out) {
  out.assign(f.degree_in(v) + 1, 0);
  for (const auto& t : f.terms) {
    for (std::size_t i = 0; i < f.nvars; ++i)
      if (i != v && t.mono.exps[i]) return false;
    out[t.mono.exps[v]] = t.coeff;
  }
  return true;
}

inline Poly univar_to_poly(std::size_t nvars, std::size_t v, const std::vector<fp_t>& c) {
  Poly r = Poly::zero(nvars);
  for (std::size_t k = c.size(); k-- > 0;)
    if (c[k]) r.terms.push_back(Poly::Term{Monomial::var(nvars, v, static_cast<std::uint32_t>(k)), c[k]});
  return r;
}

inline std::vector<fp_t> univar_gcd(std::vector<fp_t> a, std::vector<fp_t> b, fp_t p) {
  auto trim = [](std::vector<fp_t>& x) {
    while (!x.empty() && x.back() == 0) x.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    fp_t ilc = fp_inv(b.back(), p);
    while (a.size() >= b.size()) {
      fp_t f = fp_mul(a.back(), ilc, p);
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = fp_sub(a[off + i], fp_mul(f, b[i], p), p);
      trim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    fp_t ilc = fp_inv(a.back(), p);
    for (auto& c : a) c = fp_mul(c, ilc, p);
  }
  return a;
}

/// Substitute deterministic F_p values for every variable except v.
inline Poly poly_eval_except(const Poly& f, std::size_t v, const std::vector<fp_t>& vals, fp_t p) {
  std::vector<fp_t> acc(f.degree_in(v) + 1, 0);
  for (const auto& t : f.terms) {
    fp_t c = t.coeff;
    for (std::size_t i = 0; i < f.nvars; ++i)
      if (i != v && t.mono.exps[i]) c = fp_mul(c, fp_pow(vals[i], t.mono.exps[i], p), p);
    acc[t.mono.exps[v]] = fp_add(acc[t.mono.exps[v]], c, p);
  }
  return univar_to_poly(f.nvars, v, acc);
}

/// Sound coprimality certificate for v-primitive polynomials: if some F_p
/// evaluation of the other variables preserves deg_v of both inputs and the
/// univariate images are coprime, then gcd(f, g) = 1.
inline bool coprime_by_probe(const Poly& f, const Poly& g, std::size_t v, fp_t p) {
  splitmix64 rng(0x5eedULL + f.terms.size() * 131 + g.terms.size());
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<fp_t> vals(f.nvars, 0);
    for (auto& x : vals) x = rng.next_below(p);
    Poly fe = poly_eval_except(f, v, vals, p);
    Poly ge = poly_eval_except(g, v, vals, p);
    if (fe.degree_in(v) != f.degree_in(v) || ge.degree_in(v) != g.degree_in(v)) continue;
    std::vector<fp_t> fu, gu;
    poly_to_univar(fe, v, fu);
    poly_to_univar(ge, v, gu);
    std::vector<fp_t> gg = univar_gcd(fu, gu, p);
    if (gg.size() == 1) return true;
  }
  return false;
}

}  // namespace detail

/// Monic gcd: univariate Euclid when possible, and otherwise a primitive
/// pseudo-remainder sequence (recursing on the variable set through contents)
/// guarded by a sound evaluation probe for the common coprime case.
inline Poly poly_gcd(const Poly& a, const Poly& b, fp_t p) {
  if (a.is_zero()) return poly_monic(b, p);
  if (b.is_zero()) return poly_monic(a, p);
  if (a.is_constant() || b.is_constant()) return Poly::constant(a.nvars, 1, p);
  if (a == b) return poly_monic(a, p);

  // main variable: used by both, smallest combined degree; else first used
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::size_t v = none;
  std::uint64_t best = ~0ULL;
  for (std::size_t i = 0; i < a.nvars; ++i) {
    std::uint32_t da = a.degree_in(i), db = b.degree_in(i);
    if (da && db && static_cast<std::uint64_t>(da) + db < best) {
      best = da + db;
      v = i;
    }
  }
  if (v == none) {
    // no shared variable with positive degree on both sides
    std::size_t w = 0;
    while (!a.uses_var(w) && !b.uses_var(w)) ++w;
    if (!a.uses_var(w)) return poly_gcd(a, detail::poly_content_in_var(b, w, p), p);
    return poly_gcd(detail::poly_content_in_var(a, w, p), b, p);
  }

  {
    std::vector<fp_t> ua, ub;
    if (detail::poly_to_univar(a, v, ua) && detail::poly_to_univar(b, v, ub))
      return detail::univar_to_poly(a.nvars, v, detail::univar_gcd(ua, ub, p));
  }

  Poly ca, cb;
  Poly pa = detail::poly_primitive_in_var(a, v, p, &ca);
  Poly pb = detail::poly_primitive_in_var(b, v, p, &cb);
  Poly c = poly_gcd(ca, cb, p);

  if (detail::coprime_by_probe(pa, pb, v, p)) return poly_monic(c, p);

  // subresultant PRS in v on the primitive parts
  Poly A = pa, B = pb;
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  Poly one = Poly::constant(a.nvars, 1, p);
  Poly g_ = one, h = one;
  Poly pp_gcd;
  for (;;) {
    if (B.degree_in(v) == 0) {
      pp_gcd = one;  // primitive inputs with a v-free common part are coprime
      break;
    }
    std::uint32_t delta = A.degree_in(v) - B.degree_in(v);
    Poly R = detail::poly_prem(A, B, v, p);
    if (R.is_zero()) {
      pp_gcd = detail::poly_primitive_in_var(B, v, p);
      break;
    }
    A = B;
    B = poly_divexact(R, poly_mul(g_, poly_pow(h, delta, p), p), p);
    g_ = poly_coeff_in_var(A, v, A.degree_in(v));
    if (delta >= 1) h = poly_divexact(poly_pow(g_, delta, p), poly_pow(h, delta - 1, p), p);
  }
  return poly_monic(poly_mul(c, pp_gcd, p), p);
}

inline Poly poly_lcm(const Poly& a, const Poly& b, fp_t p) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.nvars);
  return poly_monic(poly_divexact(poly_mul(a, b, p), poly_gcd(a, b, p), p), p);
}

}  // namespace skewlab
