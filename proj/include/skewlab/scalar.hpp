#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/error.hpp"
#include "skewlab/fp.hpp"
#include "skewlab/poly.hpp"

namespace skewlab {

/// The coefficient-field tower F_p(base_vars)(ext_vars). Base variables span
/// the ground field Z; ext variables are the specialization parameters, so a
/// value "lies in Z" exactly when its monomials avoid every ext variable.
class FieldSpec {
 public:
  FieldSpec(fp_t p, std::vector<std::string> base_vars, std::vector<std::string> ext_vars = {})
      : p_(p), base_(std::move(base_vars)), ext_(std::move(ext_vars)) {
    require(is_prime(p_), errc::invalid_parameters, "characteristic must be prime");
    for (std::size_t i = 0; i < nvars(); ++i)
      for (std::size_t j = i + 1; j < nvars(); ++j)
        require(var_name(i) != var_name(j), errc::invalid_parameters,
                "variable names must be pairwise distinct");
  }

  fp_t p() const { return p_; }
  std::size_t nbase() const { return base_.size(); }
  std::size_t next() const { return ext_.size(); }
  std::size_t nvars() const { return base_.size() + ext_.size(); }
  bool is_ext(std::size_t idx) const { return idx >= base_.size(); }

  const std::vector<std::string>& base_vars() const { return base_; }
  const std::vector<std::string>& ext_vars() const { return ext_; }

  const std::string& var_name(std::size_t idx) const {
    return idx < base_.size() ? base_[idx] : ext_[idx - base_.size()];
  }
  /// Index of a variable name, or npos.
  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < nvars(); ++i)
      if (var_name(i) == name) return i;
    return npos;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool same_field(const FieldSpec& o) const {
    return p_ == o.p_ && base_ == o.base_ && ext_ == o.ext_;
  }
  /// True when o has the same p and base variables and our ext list is a
  /// prefix of o's (scalars then lift by zero-padding exponents).
  bool extends_to(const FieldSpec& o) const {
    if (p_ != o.p_ || base_ != o.base_ || ext_.size() > o.ext_.size()) return false;
    for (std::size_t i = 0; i < ext_.size(); ++i)
      if (ext_[i] != o.ext_[i]) return false;
    return true;
  }

 private:
  fp_t p_;
  std::vector<std::string> base_, ext_;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

class EvalPoint;

/// Element of the rational function field declared by a FieldSpec, kept in
/// canonical form: fraction reduced, denominator monic, zero stored as 0/1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldSpecPtr spec, Poly num, Poly den) : spec_(std::move(spec)), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static Scalar zero(const FieldSpecPtr& spec) {
    return Scalar(spec, Poly::zero(spec->nvars()), Poly::constant(spec->nvars(), 1, spec->p()));
  }
  static Scalar one(const FieldSpecPtr& spec) { return constant(spec, 1); }
  static Scalar constant(const FieldSpecPtr& spec, long long c) {
    return Scalar(spec, Poly::constant(spec->nvars(), fp_of(c, spec->p()), spec->p()),
                  Poly::constant(spec->nvars(), 1, spec->p()));
  }
  static Scalar variable(const FieldSpecPtr& spec, const std::string& name) {
    std::size_t idx = spec->var_index(name);
    require(idx != FieldSpec::npos, errc::parse_error, "unknown variable '" + name + "'");
    return from_poly(spec, Poly::variable(spec->nvars(), idx));
  }
  static Scalar from_poly(const FieldSpecPtr& spec, Poly num) {
    return Scalar(spec, std::move(num), Poly::constant(spec->nvars(), 1, spec->p()));
  }

  const FieldSpecPtr& spec() const { return spec_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  fp_t p() const { return spec_->p(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  /// No ext variable occurs, i.e. the value lies in Z.
  bool in_base_field() const {
    for (std::size_t i = spec_->nbase(); i < spec_->nvars(); ++i)
      if (num_.uses_var(i) || den_.uses_var(i)) return false;
    return true;
  }
  /// Denominator free of ext variables (an element of Z[X] up to a Z-denominator).
  bool denominator_in_base() const {
    for (std::size_t i = spec_->nbase(); i < spec_->nvars(); ++i)
      if (den_.uses_var(i)) return false;
    return true;
  }
  /// Constant in {0,...,p-1} when the value is a prime-field constant.
  bool is_fp_constant() const { return num_.is_constant() && den_.is_constant(); }
  fp_t fp_value() const {
    require(is_fp_constant(), errc::internal, "scalar is not a prime-field constant");
    if (num_.is_zero()) return 0;
    return fp_mul(num_.constant_value(), fp_inv(den_.constant_value(), p()), p());
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_compat(b);
    fp_t p = a.p();
    Poly n = poly_add(poly_mul(a.num_, b.den_, p), poly_mul(b.num_, a.den_, p), p);
    return Scalar(a.spec_, std::move(n), poly_mul(a.den_, b.den_, p));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.check_compat(b);
    fp_t p = a.p();
    Poly n = poly_sub(poly_mul(a.num_, b.den_, p), poly_mul(b.num_, a.den_, p), p);
    return Scalar(a.spec_, std::move(n), poly_mul(a.den_, b.den_, p));
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar r = a;
    r.num_ = poly_neg(r.num_, a.p());
    return r;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_compat(b);
    fp_t p = a.p();
    if (a.is_zero() || b.is_zero()) return zero(a.spec_);
    // cross-reduce before multiplying to keep intermediates small
    Poly g1 = poly_gcd(a.num_, b.den_, p);
    Poly g2 = poly_gcd(b.num_, a.den_, p);
    Poly n = poly_mul(poly_divexact(a.num_, g1, p), poly_divexact(b.num_, g2, p), p);
    Poly d = poly_mul(poly_divexact(a.den_, g2, p), poly_divexact(b.den_, g1, p), p);
    return Scalar(a.spec_, std::move(n), std::move(d));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    require(!b.is_zero(), errc::division_by_zero, "scalar division by zero");
    return a * b.inv();
  }

  Scalar inv() const {
    require(!is_zero(), errc::division_by_zero, "inverse of zero");
    return Scalar(spec_, den_, num_);
  }
  Scalar pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar r = one(spec_), base = *this;
    auto ue = static_cast<std::uint64_t>(e);
    while (ue) {
      if (ue & 1) r = r * base;
      base = base * base;
      ue >>= 1;
    }
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_compat(const Scalar& o) const {
    require(spec_ && o.spec_ && spec_->same_field(*o.spec_), errc::dimension_mismatch,
            "scalars from different coefficient fields");
  }
  void normalize() {
    fp_t p = spec_->p();
    require(!den_.is_zero(), errc::division_by_zero, "zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::constant(spec_->nvars(), 1, p);
      return;
    }
    if (!num_.is_constant() && !den_.is_constant()) {
      Poly g = poly_gcd(num_, den_, p);
      if (!g.is_constant()) {
        num_ = poly_divexact(num_, g, p);
        den_ = poly_divexact(den_, g, p);
      }
    }
    fp_t lc = den_.leading_coeff();
    if (lc != 1) {
      fp_t ilc = fp_inv(lc, p);
      num_ = poly_scale(num_, ilc, p);
      den_ = poly_scale(den_, ilc, p);
    }
  }

  FieldSpecPtr spec_;
  Poly num_, den_;
};

/// A point of X: one Z-valued assignment per ext variable.
class EvalPoint {
 public:
  EvalPoint(FieldSpecPtr spec, std::vector<Scalar> values) : spec_(std::move(spec)), values_(std::move(values)) {
    require(values_.size() == spec_->next(), errc::invalid_parameters,
            "every ext variable needs exactly one assignment");
    for (const auto& v : values_)
      require(v.in_base_field(), errc::invalid_parameters, "assigned values may not involve ext variables");
  }

  const FieldSpecPtr& spec() const { return spec_; }
  const Scalar& value(std::size_t ext_idx) const { return values_[ext_idx]; }
  const std::vector<Scalar>& values() const { return values_; }

 private:
  FieldSpecPtr spec_;
  std::vector<Scalar> values_;
};

namespace detail {
/// All exponent vectors over nvars variables with total degree <= bound,
/// enumerated in a fixed (ascending graded-lex) order.
inline void enumerate_monomials(std::size_t nvars, std::uint32_t bound,
                                std::vector<Monomial>& out) {
  Monomial cur = Monomial::one(nvars);
  // recursive lexicographic fill
  auto rec = [&](auto&& self, std::size_t idx, std::uint32_t remaining) -> void {
    if (idx == nvars) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
      cur.exps[idx] = e;
      self(self, idx + 1, remaining - e);
    }
    cur.exps[idx] = 0;
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(), grlex_less{});
}
}  // namespace detail

/// Evaluation morphism: substitute the point's Z-values for the ext
/// variables. Raises PoleAtPoint when the denominator vanishes.
inline Scalar evaluate(const Scalar& f, const EvalPoint& lambda) {
  const FieldSpecPtr& spec = f.spec();
  require(spec->same_field(*lambda.spec()), errc::dimension_mismatch, "point from a different field");
  std::size_t nb = spec->nbase();

  auto eval_poly = [&](const Poly& g) {
    Scalar acc = Scalar::zero(spec);
    for (const auto& t : g.terms) {
      Monomial base_part = t.mono;
      Scalar factor = Scalar::constant(spec, static_cast<long long>(t.coeff));
      for (std::size_t i = nb; i < spec->nvars(); ++i) {
        if (t.mono.exps[i]) factor = factor * lambda.value(i - nb).pow(t.mono.exps[i]);
        base_part.exps[i] = 0;
      }
      Poly mono_poly = Poly::zero(spec->nvars());
      mono_poly.terms.push_back(Poly::Term{base_part, 1});
      acc = acc + factor * Scalar::from_poly(spec, mono_poly);
    }
    return acc;
  };

  Scalar dn = eval_poly(f.den());
  require(!dn.is_zero(), errc::pole_at_point, "denominator vanishes at the point");
  return eval_poly(f.num()) / dn;
}

/// Deterministic pseudo-random point: every coordinate is a polynomial in the
/// base variables of total degree <= height, with coefficients drawn from a
/// seeded splitmix64 stream. Same (spec, seed, height) gives the same point.
inline EvalPoint sample_point(const FieldSpecPtr& spec, std::uint64_t seed, std::uint32_t height) {
  require(height >= 1, errc::invalid_parameters, "height must be >= 1");
  splitmix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
  std::vector<Monomial> monos;
  {
    // monomials in the base variables only
    std::vector<Monomial> base_monos;
    detail::enumerate_monomials(spec->nbase(), height, base_monos);
    for (auto& m : base_monos) {
      Monomial full = Monomial::one(spec->nvars());
      for (std::size_t i = 0; i < spec->nbase(); ++i) full.exps[i] = m.exps[i];
      monos.push_back(full);
    }
  }
  std::vector<Scalar> values;
  values.reserve(spec->next());
  for (std::size_t v = 0; v < spec->next(); ++v) {
    std::map<Monomial, fp_t, grlex_less> acc;
    for (const auto& m : monos) {
      fp_t c = rng.next_below(spec->p());
      if (c) acc[m] = c;
    }
    values.push_back(Scalar::from_poly(spec, detail::from_map(spec->nvars(), acc)));
  }
  return EvalPoint(spec, std::move(values));
}

/// Lift a scalar into an extended field spec (same p and base variables,
/// additional ext variables appended).
inline Scalar lift_scalar(const Scalar& s, const FieldSpecPtr& to) {
  require(s.spec()->extends_to(*to), errc::invalid_parameters, "field spec does not extend");
  auto pad = [&](const Poly& g) {
    Poly r = Poly::zero(to->nvars());
    r.terms.reserve(g.terms.size());
    for (const auto& t : g.terms) {
      Monomial m = Monomial::one(to->nvars());
      for (std::size_t i = 0; i < g.nvars; ++i) m.exps[i] = t.mono.exps[i];
      r.terms.push_back(Poly::Term{m, t.coeff});
    }
    return r;
  };
  return Scalar(to, pad(s.num()), pad(s.den()));
}

// ---- printing -------------------------------------------------------------

namespace detail {
inline void print_poly(std::string& out, const Poly& g, const FieldSpec& spec) {
  if (g.is_zero()) {
    out += "0";
    return;
  }
  bool first = true;
  for (const auto& t : g.terms) {
    if (!first) out += " + ";
    first = false;
    bool trivial_mono = t.mono.is_one();
    bool printed = false;
    if (t.coeff != 1 || trivial_mono) {
      out += std::to_string(t.coeff);
      printed = true;
    }
    for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
      if (!t.mono.exps[i]) continue;
      if (printed) out += "*";
      out += spec.var_name(i);
      if (t.mono.exps[i] > 1) out += "^" + std::to_string(t.mono.exps[i]);
      printed = true;
    }
  }
}
}  // namespace detail

inline std::string Scalar::to_string() const {
  std::string out;
  if (den_.is_constant()) {
    detail::print_poly(out, num_, *spec_);
  } else {
    out += "(";
    detail::print_poly(out, num_, *spec_);
    out += ")/(";
    detail::print_poly(out, den_, *spec_);
    out += ")";
  }
  return out;
}

}  // namespace skewlab
