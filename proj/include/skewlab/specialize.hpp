#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/algebra.hpp"
#include "skewlab/error.hpp"
#include "skewlab/matrix.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

/// Element of D[X] up to a Z-denominator: every coordinate denominator is
/// free of ext variables, so evaluation at a point never hits a pole.
class PolyAlgElement {
 public:
  PolyAlgElement(const StructureTensor& A, AlgElement e) : elem_(std::move(e)) {
    require(elem_.coords.size() == A.dim(), errc::dimension_mismatch, "coordinate length mismatch");
    for (const auto& c : elem_.coords)
      require(c.denominator_in_base(), errc::invalid_parameters,
              "coordinate denominator involves ext variables");
  }
  const AlgElement& element() const { return elem_; }

 private:
  AlgElement elem_;
};

/// Nonzero minor certificate: wherever the polynomial does not vanish, the
/// certified property (independence of a specialized family) holds.
struct SpecCertificate {
  Scalar poly;  // element of Z[X], normalized monic
  std::string description;
};

/// Coordinatewise evaluation D[X] -> D.
inline AlgElement pi_lambda(const StructureTensor& A, const PolyAlgElement& a, const EvalPoint& lambda) {
  Row out;
  out.reserve(A.dim());
  for (const auto& c : a.element().coords) out.push_back(evaluate(c, lambda));
  return AlgElement{out};
}

namespace detail {

/// Primitive part of a polynomial with respect to the ext-variable block:
/// the minimal Z[X]-multiplier that absorbs a denominator.
inline Poly ext_primitive_part(const Poly& f, const FieldSpec& spec) {
  fp_t p = spec.p();
  // split terms by their ext-monomial; contents are base-only coefficients
  std::vector<std::pair<Monomial, Poly>> groups;
  for (const auto& t : f.terms) {
    Monomial ext_part = Monomial::one(f.nvars);
    Monomial base_part = t.mono;
    for (std::size_t i = spec.nbase(); i < spec.nvars(); ++i) {
      ext_part.exps[i] = t.mono.exps[i];
      base_part.exps[i] = 0;
    }
    bool found = false;
    for (auto& [m, poly] : groups)
      if (m == ext_part) {
        poly = poly_add(poly, Poly{f.nvars, {Poly::Term{base_part, t.coeff}}}, p);
        found = true;
      }
    if (!found) groups.emplace_back(ext_part, Poly{f.nvars, {Poly::Term{base_part, t.coeff}}});
  }
  Poly content = Poly::zero(f.nvars);
  for (const auto& [m, poly] : groups)
    content = content.is_zero() ? poly_monic(poly, p) : poly_gcd(content, poly, p);
  if (content.is_zero()) return f;
  return poly_monic(poly_divexact(f, content, p), p);
}

}  // namespace detail

struct ClearedFamily {
  Scalar c;  // minimal monic multiplier in Z[X]
  std::vector<PolyAlgElement> elements;
};

/// Least common Z[X]-multiplier c with c * a_i in D[X] for every i.
inline ClearedFamily clear_denominators(const StructureTensor& A, const std::vector<AlgElement>& elements) {
  require(!elements.empty(), errc::invalid_parameters, "empty element list");
  const FieldSpecPtr& spec = A.spec();
  fp_t p = spec->p();
  Poly c = Poly::constant(spec->nvars(), 1, p);
  for (const auto& e : elements)
    for (const auto& coord : e.coords) {
      if (coord.is_zero()) continue;
      Poly pp = detail::ext_primitive_part(coord.den(), *spec);
      if (!pp.is_constant()) c = poly_lcm(c, pp, p);
    }
  Scalar cs = Scalar::from_poly(spec, c);
  ClearedFamily out{cs, {}};
  for (const auto& e : elements) out.elements.emplace_back(A, alg_scale(cs, e));
  return out;
}

/// Nonzero n x n minor of the coefficient matrix of a Z(X)-independent
/// family in D[X]; wherever it does not vanish the specialized family stays
/// independent over Z.
inline SpecCertificate independence_certificate(const StructureTensor& A,
                                                const std::vector<PolyAlgElement>& elements) {
  require(!elements.empty(), errc::invalid_parameters, "empty element list");
  const FieldSpecPtr& spec = A.spec();
  std::size_t n = elements.size();

  Mat m = Mat::empty(spec, A.dim());
  for (const auto& e : elements) m.push(e.element().coords);
  Mat reduced = m;
  RrefResult rr = rref_in_place(reduced);
  require(rr.rank == n, errc::dependent_input, "family is dependent over Z(X)");

  Mat minor = Mat::empty(spec, n);
  for (std::size_t i = 0; i < n; ++i) {
    Row r;
    r.reserve(n);
    for (std::size_t j = 0; j < n; ++j) r.push_back(m.rows[i][rr.pivot_cols[j]]);
    minor.push(std::move(r));
  }
  Scalar d = det(minor);
  require(!d.is_zero(), errc::internal, "pivot minor is singular");
  // normalize into Z[X]: the base-field denominator never vanishes under
  // evaluation, so the monic numerator carries the whole vanishing locus
  Scalar cert = Scalar::from_poly(spec, poly_monic(d.num(), spec->p()));

  std::string desc = "rows 0..";
  desc += std::to_string(n - 1) + " columns ";
  for (std::size_t j = 0; j < n; ++j) {
    if (j) desc += ",";
    desc += std::to_string(rr.pivot_cols[j]);
  }
  desc += " of the cleared coefficient matrix";
  return SpecCertificate{cert, desc};
}

struct SpecializationResult {
  Subspace space;  // the specialization along lambda
  std::size_t expected_dim = 0;
  bool preserved = false;
  SpecCertificate cert;
  Scalar c;             // denominator clearer used
  Scalar cert_value;    // evaluate(cert, lambda)
};

/// Specialize the span of V along lambda: clear denominators on a basis,
/// evaluate, row-reduce over Z. Wherever the certificate does not vanish the
/// dimension is preserved.
inline SpecializationResult specialize_subspace(const StructureTensor& A,
                                                const std::vector<AlgElement>& V,
                                                const EvalPoint& lambda) {
  require(!V.empty(), errc::invalid_parameters, "empty generator list");
  // first maximal independent sub-list, in the given order
  std::vector<AlgElement> basis;
  for (const auto& v : V) {
    std::vector<Row> rows;
    for (const auto& b : basis) rows.push_back(b.coords);
    rows.push_back(v.coords);
    if (Subspace::from_rows(A.spec(), A.dim(), rows).dim() == basis.size() + 1) basis.push_back(v);
  }
  require(!basis.empty(), errc::invalid_parameters, "generators span the zero space");

  ClearedFamily cleared = clear_denominators(A, basis);
  SpecCertificate cert = independence_certificate(A, cleared.elements);

  std::vector<Row> rows;
  for (const auto& e : cleared.elements) rows.push_back(pi_lambda(A, e, lambda).coords);
  Subspace space = Subspace::from_rows(A.spec(), A.dim(), rows);

  SpecializationResult out{std::move(space), basis.size(), false, cert, cleared.c,
                           evaluate(cert.poly, lambda)};
  out.preserved = (out.space.dim() == out.expected_dim);
  return out;
}

// ---- per-point specialization verifier ---------------------------------------

enum class SubfieldKind { subspace, toral, inseparable };

/// Lambda-independent data prepared once per input family.
struct ReductionSetup {
  const StructureTensor* A = nullptr;  // tensor over Z(X)
  SubfieldKind kind = SubfieldKind::subspace;
  std::vector<AlgElement> gens;

  Subspace K;            // generated subfield (or plain span for subspace kind)
  std::size_t dim = 0;   // [K : Z(X)]
  bool field_over_ZX = false;
  /// Basis that gets cleared and specialized: the given generators for plain
  /// subspaces (their scaling carries the certificate), the echelon basis of
  /// the generated field otherwise.
  std::vector<AlgElement> working_basis;
  SpecCertificate cert;
  Scalar clearer;

  struct ToralData {
    Torus torus;
    GaloisData galois;
    std::string group_name;
    Scalar c;  // clears the toral generators
    std::vector<PolyAlgElement> cleared_torals;
    AlgElement alpha;  // primitive element of K over Z(X)
    Scalar c_orbit;    // clears the automorphism orbit of alpha
    std::vector<PolyAlgElement> cleared_orbit;
  };
  std::optional<ToralData> toral;

  struct InsepData {
    std::uint32_t exponent;  // claimed r, validated over Z(X)
    AlgElement witness;      // a with {1, a, a^p, ..., a^(p^(r-1))} independent
    SpecCertificate powers_cert;
    Scalar c_powers;
    std::vector<PolyAlgElement> cleared_powers;
  };
  std::optional<InsepData> insep;
};

namespace detail {

inline AlgElement apply_on_subspace(const StructureTensor& A, const Subspace& K, const Mat& m,
                                    const AlgElement& v) {
  auto coords = K.coords_of(v.coords);
  require(coords.has_value(), errc::internal, "element not in the subspace");
  Row img = zero_row(A.spec(), K.dim());
  for (std::size_t i = 0; i < K.dim(); ++i)
    for (std::size_t j = 0; j < K.dim(); ++j) img[i] = img[i] + m.rows[i][j] * (*coords)[j];
  Row ambient = zero_row(A.spec(), A.dim());
  for (std::size_t k = 0; k < K.dim(); ++k) ambient = row_add(ambient, row_scale(K.row(k), img[k]));
  return AlgElement{ambient};
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

/// Validate the input family and precompute certificates, clearers, Galois
/// data and inseparability witnesses.
inline ReductionSetup prepare_reduction(const StructureTensor& A, const std::vector<AlgElement>& gens,
                                        SubfieldKind kind, std::uint32_t claimed_exponent = 0) {
  require(!gens.empty(), errc::invalid_parameters, "empty generator list");
  ReductionSetup s;
  s.A = &A;
  s.kind = kind;
  s.gens = gens;
  fp_t p = A.spec()->p();

  auto finish_setup = [&](ReductionSetup& setup) {
    ClearedFamily cf = clear_denominators(A, setup.working_basis);
    setup.clearer = cf.c;
    setup.cert = independence_certificate(A, cf.elements);
  };

  if (kind == SubfieldKind::subspace) {
    // first maximal independent sub-list, in the given order
    for (const auto& v : gens) {
      std::vector<Row> rows;
      for (const auto& b : s.working_basis) rows.push_back(b.coords);
      rows.push_back(v.coords);
      if (Subspace::from_rows(A.spec(), A.dim(), rows).dim() == s.working_basis.size() + 1)
        s.working_basis.push_back(v);
    }
    require(!s.working_basis.empty(), errc::invalid_parameters, "generators span the zero space");
    std::vector<Row> rows;
    for (const auto& g : s.working_basis) rows.push_back(g.coords);
    s.K = Subspace::from_rows(A.spec(), A.dim(), rows);
    s.dim = s.K.dim();
    finish_setup(s);
    return s;
  }

  GeneratedSubfield gen = generate_subfield(A, gens);  // raises NotCommutative
  require(gen.field, errc::not_a_field, "generators do not generate a subfield");
  s.K = gen.space;
  s.dim = s.K.dim();
  s.field_over_ZX = true;
  for (std::size_t i = 0; i < s.K.dim(); ++i) s.working_basis.push_back(AlgElement{s.K.row(i)});
  finish_setup(s);

  if (kind == SubfieldKind::toral) {
    ReductionSetup::ToralData td{make_torus(A, gens), {}, "", Scalar::one(A.spec()), {},
                                 A.zero(), Scalar::one(A.spec()), {}};
    td.galois = galois_from_torus(A, td.torus);
    require(td.galois.subfield == s.K, errc::internal, "Z(T) differs from the generated field");
    td.group_name = "Z_" + std::to_string(p);
    if (td.torus.rank > 1) td.group_name += "^" + std::to_string(td.torus.rank);

    std::vector<AlgElement> torals(td.torus.toral_basis.begin() + 1, td.torus.toral_basis.end());
    ClearedFamily ct = clear_denominators(A, torals);
    td.c = ct.c;
    td.cleared_torals = ct.elements;

    // primitive element: orbit under the full group has |G| distinct images
    std::size_t group_size = td.galois.generators.size();
    auto orbit_of = [&](const AlgElement& a) {
      std::vector<AlgElement> orbit;
      for (const auto& g : td.galois.generators)
        orbit.push_back(detail::apply_on_subspace(A, s.K, g.automorphism, a));
      return orbit;
    };
    auto all_distinct = [&](const std::vector<AlgElement>& v) {
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
          if (v[i] == v[j]) return false;
      return true;
    };
    std::optional<AlgElement> alpha;
    // candidates: the toral generators, then small F_p-combinations
    std::vector<AlgElement> candidates = torals;
    {
      std::vector<fp_t> tuple(torals.size(), 0);
      for (std::size_t count = 0; count < detail::ipow(p, torals.size()); ++count) {
        AlgElement sum = A.zero();
        for (std::size_t i = 0; i < torals.size(); ++i)
          sum = alg_add(sum, alg_scale(Scalar::constant(A.spec(), static_cast<long long>(tuple[i])),
                                       torals[i]));
        candidates.push_back(sum);
        std::size_t k = torals.size();
        while (k > 0 && tuple[k - 1] == p - 1) tuple[--k] = 0;
        if (k == 0) break;
        tuple[k - 1] += 1;
      }
    }
    for (const auto& cand : candidates) {
      if (alg_is_zero(cand)) continue;
      auto orb = orbit_of(cand);
      if (orb.size() == group_size && all_distinct(orb)) {
        alpha = cand;
        break;
      }
    }
    require(alpha.has_value(), errc::no_generator, "no primitive element found for the Galois orbit");
    td.alpha = *alpha;
    ClearedFamily co = clear_denominators(A, orbit_of(*alpha));
    td.c_orbit = co.c;
    td.cleared_orbit = co.elements;
    s.toral = std::move(td);
  }

  if (kind == SubfieldKind::inseparable) {
    require(claimed_exponent >= 1, errc::invalid_parameters, "inseparability exponent must be >= 1");
    std::uint64_t q = detail::ipow(p, claimed_exponent);
    // validate the claim over Z(X): every basis element to the p^r lands in Z(X)*1
    for (std::size_t i = 0; i < s.K.dim(); ++i) {
      AlgElement z = alg_pow(A, AlgElement{s.K.row(i)}, q);
      require(A.as_scalar(z).has_value(), errc::invalid_parameters,
              "K is not purely inseparable of the claimed exponent over Z(X)");
    }
    // witness with independent p-power family
    std::optional<ReductionSetup::InsepData> found;
    for (const auto& cand : gens) {
      std::vector<AlgElement> fam;
      AlgElement cur = A.unit();
      for (std::uint32_t k = 0; k < claimed_exponent; ++k) {
        fam.push_back(k == 0 ? cand : alg_pow(A, cand, detail::ipow(p, k)));
      }
      fam.insert(fam.begin(), A.unit());
      std::vector<Row> rows;
      for (const auto& f : fam) rows.push_back(f.coords);
      if (Subspace::from_rows(A.spec(), A.dim(), rows).dim() != fam.size()) continue;
      ClearedFamily cf = clear_denominators(A, fam);
      ReductionSetup::InsepData id{claimed_exponent, cand, independence_certificate(A, cf.elements),
                                   cf.c, cf.elements};
      found = std::move(id);
      (void)cur;
      break;
    }
    require(found.has_value(), errc::invalid_parameters,
            "no generator realizes the claimed inseparability exponent");
    s.insep = std::move(*found);
  }
  return s;
}

/// Everything the verifier can say about one evaluation point.
struct ReductionPointReport {
  Scalar cert_value;
  bool cert_nonzero = false;
  std::size_t dim = 0;
  bool preserved = false;
  Subspace specialized;
  bool mult_closed = false;
  bool commutative = false;
  bool is_subfield = false;  // closed, commutative, echelon basis invertible
  bool maximal = false;      // centralizer equals the space itself

  struct ToralPoint {
    Scalar c_value;
    bool c_nonzero = false;
    std::vector<AlgElement> taus;
    std::vector<bool> tau_toral;
    bool all_toral = false;
    bool taus_generate = false;  // Z(tau_1..tau_d) equals the specialization
  };
  std::optional<ToralPoint> toral;

  struct GaloisPoint {
    bool applicable = false;  // cert_nonzero and the orbit clearer is nonzero
    Scalar c_orbit_value;
    bool c_orbit_nonzero = false;
    bool orbit_specializes_independent = false;
    std::vector<AlgElement> roots;
    bool roots_distinct = false;
    bool roots_in_specialized = false;
    bool coeffs_in_Z = false;  // P_lambda(T) has central, ext-free coefficients
    bool splitting_field = false;
    std::string group_name;
  };
  std::optional<GaloisPoint> galois;

  struct InsepPoint {
    bool powers_in_Z = false;  // z^(p^r) central and ext-free for every basis z
    std::uint32_t exponent = 0;
    bool exponent_le_claimed = false;
    Scalar powers_cert_value;
    bool powers_cert_nonzero = false;
    bool exponent_matches = false;  // == claimed whenever the cert is nonzero
  };
  std::optional<InsepPoint> insep;
};

inline ReductionPointReport verify_reduction_at(const ReductionSetup& s, const EvalPoint& lambda) {
  const StructureTensor& A = *s.A;
  fp_t p = A.spec()->p();
  ReductionPointReport r;

  SpecializationResult sp = specialize_subspace(A, s.working_basis, lambda);
  r.cert_value = sp.cert_value;
  r.cert_nonzero = !sp.cert_value.is_zero();
  r.specialized = sp.space;
  r.dim = sp.space.dim();
  r.preserved = sp.preserved;

  r.mult_closed = multiplicatively_closed(A, r.specialized);
  r.commutative = subspace_commutative(A, r.specialized);
  r.is_subfield = r.mult_closed && r.commutative;
  if (r.is_subfield)
    for (std::size_t i = 0; i < r.specialized.dim() && r.is_subfield; ++i)
      if (!try_inverse(A, AlgElement{r.specialized.row(i)})) r.is_subfield = false;
  r.maximal = r.is_subfield && (centralizer(A, r.specialized) == r.specialized);

  if (s.toral) {
    ReductionPointReport::ToralPoint tp;
    tp.c_value = evaluate(s.toral->c, lambda);
    tp.c_nonzero = !tp.c_value.is_zero();
    if (tp.c_nonzero) {
      Scalar inv = tp.c_value.inv();
      tp.all_toral = true;
      for (const auto& ct : s.toral->cleared_torals) {
        AlgElement tau = alg_scale(inv, pi_lambda(A, ct, lambda));
        bool ok = is_toral(A, tau).toral;
        tp.taus.push_back(tau);
        tp.tau_toral.push_back(ok);
        tp.all_toral = tp.all_toral && ok;
      }
      if (r.preserved && tp.all_toral) {
        bool commute = true;
        for (std::size_t i = 0; i < tp.taus.size() && commute; ++i)
          for (std::size_t j = i + 1; j < tp.taus.size(); ++j)
            if (!alg_is_zero(alg_commutator(A, tp.taus[i], tp.taus[j]))) commute = false;
        tp.taus_generate = commute && generate_subfield(A, tp.taus).space == r.specialized;
      }
    }
    r.toral = std::move(tp);

    ReductionPointReport::GaloisPoint gp;
    gp.group_name = s.toral->group_name;
    gp.c_orbit_value = evaluate(s.toral->c_orbit, lambda);
    gp.c_orbit_nonzero = !gp.c_orbit_value.is_zero();
    gp.applicable = r.cert_nonzero && gp.c_orbit_nonzero;
    if (gp.c_orbit_nonzero) {
      Scalar inv = gp.c_orbit_value.inv();
      for (const auto& co : s.toral->cleared_orbit)
        gp.roots.push_back(alg_scale(inv, pi_lambda(A, co, lambda)));

      std::vector<Row> rows;
      for (const auto& root : gp.roots) rows.push_back(root.coords);
      gp.orbit_specializes_independent =
          Subspace::from_rows(A.spec(), A.dim(), rows).dim() == gp.roots.size();

      gp.roots_distinct = true;
      for (std::size_t i = 0; i < gp.roots.size() && gp.roots_distinct; ++i)
        for (std::size_t j = i + 1; j < gp.roots.size(); ++j)
          if (gp.roots[i] == gp.roots[j]) gp.roots_distinct = false;

      gp.roots_in_specialized = true;
      for (const auto& root : gp.roots)
        gp.roots_in_specialized = gp.roots_in_specialized && r.specialized.contains(root.coords);

      // P_lambda(T) = prod (T - root), expanded coefficient by coefficient
      std::vector<AlgElement> coeffs{A.unit()};
      for (const auto& root : gp.roots) {
        std::vector<AlgElement> next(coeffs.size() + 1, A.zero());
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          next[k + 1] = alg_add(next[k + 1], coeffs[k]);
          next[k] = alg_sub(next[k], A.mul(root, coeffs[k]));
        }
        coeffs = std::move(next);
      }
      gp.coeffs_in_Z = true;
      for (const auto& cf : coeffs) {
        auto sc = A.as_scalar(cf);
        if (!sc || !sc->in_base_field()) gp.coeffs_in_Z = false;
      }

      bool roots_commute = true;
      for (std::size_t i = 0; i < gp.roots.size() && roots_commute; ++i)
        for (std::size_t j = i + 1; j < gp.roots.size(); ++j)
          if (!alg_is_zero(alg_commutator(A, gp.roots[i], gp.roots[j]))) roots_commute = false;
      gp.splitting_field =
          roots_commute && gp.roots_in_specialized &&
          generate_subfield(A, gp.roots).space == r.specialized;
    }
    r.galois = std::move(gp);
  }

  if (s.insep) {
    ReductionPointReport::InsepPoint ip;
    std::uint32_t claimed = s.insep->exponent;

    // specialized basis of the cleared K-basis (same family the main
    // certificate covers), plus the raw specialization rows
    std::vector<AlgElement> zs;
    for (std::size_t i = 0; i < r.specialized.dim(); ++i) zs.push_back(AlgElement{r.specialized.row(i)});

    ip.powers_in_Z = true;
    for (const auto& z : zs) {
      AlgElement zq = alg_pow(A, z, detail::ipow(p, claimed));
      auto sc = A.as_scalar(zq);
      if (!sc || !sc->in_base_field()) ip.powers_in_Z = false;
    }
    // actual exponent: least r' with every basis power p^(r') landing in Z*1
    std::uint32_t rr = 0;
    for (; rr <= claimed; ++rr) {
      bool all_in = true;
      for (const auto& z : zs) {
        AlgElement zq = alg_pow(A, z, detail::ipow(p, rr));
        auto sc = A.as_scalar(zq);
        if (!sc || !sc->in_base_field()) all_in = false;
      }
      if (all_in) break;
    }
    ip.exponent = rr;
    ip.exponent_le_claimed = rr <= claimed;
    ip.powers_cert_value = evaluate(s.insep->powers_cert.poly, lambda);
    ip.powers_cert_nonzero = !ip.powers_cert_value.is_zero();
    ip.exponent_matches = !ip.powers_cert_nonzero || rr == claimed;
    r.insep = std::move(ip);
  }
  return r;
}

// ---- scalar extension -------------------------------------------------------

struct ExtendedScalars {
  Subspace K_ext;                 // the same echelon basis over Z(X)
  std::vector<AlgElement> gens;   // lifted basis rows
  std::size_t dim_base = 0, dim_ext = 0;
  bool field_over_ext = false;
};

/// View a subfield K of D over Z inside D(X): the same basis over Z(X).
/// Dimension, commutativity and closure carry over verbatim; the caller
/// re-verifies Galois or inseparability data with the torus machinery.
inline ExtendedScalars extend_scalars(const StructureTensor& D, const Subspace& K,
                                      const StructureTensor& DX) {
  require(D.dim() == DX.dim(), errc::dimension_mismatch, "tensors differ in dimension");
  require(D.spec()->extends_to(*DX.spec()), errc::invalid_parameters,
          "target field does not extend the base field");
  require(multiplicatively_closed(D, K) && subspace_commutative(D, K), errc::not_a_field,
          "K is not a commutative subalgebra of D");
  for (std::size_t i = 0; i < K.dim(); ++i)
    require(try_inverse(D, AlgElement{K.row(i)}).has_value(), errc::not_a_field,
            "K has a non-invertible basis element");
  require(K.contains(D.unit().coords), errc::not_a_field, "K does not contain 1");

  ExtendedScalars out;
  out.dim_base = K.dim();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < K.dim(); ++i) {
    Row r;
    for (const auto& c : K.row(i)) r.push_back(lift_scalar(c, DX.spec()));
    rows.push_back(r);
    out.gens.push_back(AlgElement{std::move(r)});
  }
  out.K_ext = Subspace::from_rows(DX.spec(), DX.dim(), rows);
  out.dim_ext = out.K_ext.dim();
  GeneratedSubfield regen = generate_subfield(DX, out.gens);
  out.field_over_ext = regen.field && regen.space == out.K_ext;
  return out;
}

}  // namespace skewlab
