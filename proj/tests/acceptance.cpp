// Acceptance suite: one exact, self-contained run per criterion, one
// PASS/FAIL line each, exit 0 only when every criterion holds. All checks
// are exact equalities over exact fields; there are no tolerances.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "skewlab/corpus.hpp"
#include "skewlab/parse.hpp"
#include "skewlab/pbw.hpp"
#include "skewlab/specialize.hpp"
#include "skewlab/torus.hpp"

using namespace skewlab;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> body;
};

bool check(bool cond, std::string& why, const std::string& label) {
  if (!cond && why.empty()) why = label;
  return cond;
}

// ---- criterion 1: Zassenhaus validity --------------------------------------

bool criterion1(std::string& why) {
  bool ok = true;
  for (auto [p, m] : std::vector<std::pair<fp_t, std::uint32_t>>{{3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
    LiePresentation W = zassenhaus(p, m);
    std::size_t expect_dim = 1;
    for (std::uint32_t i = 0; i < m; ++i) expect_dim *= static_cast<std::size_t>(p);
    std::string tag = "zassenhaus(" + std::to_string(p) + "," + std::to_string(m) + ")";
    ok &= check(jacobi_check(W).holds, why, tag + ": jacobi");
    ok &= check(W.dim() == expect_dim, why, tag + ": dimension");

    std::vector<FpVec> rows;  // e_i for i >= 0 sit at basis indices 1..dim-1
    for (std::size_t i = 1; i < W.dim(); ++i) rows.push_back(W.basis_vector(i));
    LiePresentation H = subalgebra_presentation(W, rows);
    ok &= check(H.dim() + 1 == W.dim(), why, tag + ": codimension 1");
    ok &= check(derived_series(H).solvable, why, tag + ": solvable subalgebra");
  }
  return ok;
}

// ---- criterion 2: torus/Galois correspondence --------------------------------

bool criterion2(std::string& why) {
  StructureTensor A = corpus_symbol_algebra(3, false);
  Torus T = make_torus(A, {parse_element(A, "x")});
  WeightDecomposition wd = weight_decomposition(A, T);
  bool ok = true;
  ok &= check(wd.weights.size() == 3, why, "|Lambda| = 3");
  for (const auto& v : wd.weights)
    for (const auto& w : wd.weights) {
      bool closed = false;
      Weight sum = v.add(w, 3);
      for (const auto& z : wd.weights) closed = closed || z == sum;
      ok &= check(closed, why, "Lambda closed under addition");
    }

  GaloisData G = galois_from_torus(A, T);
  ok &= check(G.subfield.dim() == 3, why, "[Z(T):Z] = 3");
  ok &= check(G.generators.size() == 3, why, "exactly 3 automorphisms");
  // the three matrices are distinct and every non-identity one generates: Z_3
  Mat id = detail::mat_identity(A.spec(), 3);
  std::size_t nontrivial = 0;
  for (const auto& g : G.generators)
    if (!detail::mat_eq(g.automorphism, id)) {
      ++nontrivial;
      Mat sq = detail::mat_mul(g.automorphism, g.automorphism);
      Mat cube = detail::mat_mul(sq, g.automorphism);
      ok &= check(!detail::mat_eq(sq, id) && detail::mat_eq(cube, id), why,
                  "every non-identity automorphism has order 3");
    }
  ok &= check(nontrivial == 2, why, "group is Z_3");

  Torus back = artin_schreier_from_galois(A, G.subfield, G.group());
  ok &= check(back.rank == 1, why, "recovered rank");
  ok &= check(is_toral(A, back.toral_basis[1]).toral, why, "recovered generator toral");
  ok &= check(generate_subfield(A, {back.toral_basis[1]}).space == G.subfield, why,
              "recovered generator spans the same subfield");
  return ok;
}

// ---- criterion 3: six-way maximality equivalence ------------------------------

bool criterion3(std::string& why) {
  bool ok = true;
  bool saw_all_true = false, saw_all_false = false;

  StructureTensor A3 = corpus_symbol_algebra(3, false);
  StructureTensor A3u = corpus_symbol_algebra(3, true);
  StructureTensor A5 = corpus_symbol_algebra(5, false);

  struct Pair {
    const StructureTensor* A;
    std::string torus_expr;
  };
  std::vector<Pair> pairs = {
      {&A3, "x"}, {&A3, ""}, {&A5, "x"}, {&A3u, "x + u^3 - u"}, {&A5, ""},
  };
  for (const auto& pr : pairs) {
    std::vector<AlgElement> gens;
    if (!pr.torus_expr.empty()) gens.push_back(parse_element(*pr.A, pr.torus_expr));
    MaximalityReport mr = maximality_report(*pr.A, make_torus(*pr.A, gens));
    ok &= check(mr.all_equal(), why, "six conditions mutually equal");
    if (mr.all_true()) saw_all_true = true;
    if (mr.all_equal() && !mr.n_equals_rank) saw_all_false = true;
  }
  ok &= check(saw_all_true, why, "an all-true instance");
  ok &= check(saw_all_false, why, "an all-false instance");
  ok &= check(pairs.size() >= 3, why, "at least 3 corpus pairs");
  return ok;
}

// ---- criterion 4: specialization soundness -------------------------------------

bool criterion4(std::string& why) {
  StructureTensor A = corpus_symbol_algebra(3, true);
  struct Input {
    std::string name;
    SubfieldKind kind;
    std::vector<std::string> gens;
    std::uint32_t exponent = 0;
  };
  std::vector<Input> inputs = {
      {"span{1, x + u*y}", SubfieldKind::subspace, {"1", "x + u*y"}},
      {"span{u*x}", SubfieldKind::subspace, {"u*x"}},
      {"Z(X)(x)", SubfieldKind::toral, {"x"}},
      {"Z(X)(x + u^3 - u)", SubfieldKind::toral, {"x + u^3 - u"}},
      {"Z(X)(y)", SubfieldKind::inseparable, {"y"}, 1},
      {"Z(X)(y + u)", SubfieldKind::inseparable, {"y + u"}, 1},
  };
  bool ok = check(inputs.size() >= 5, why, "at least 5 corpus inputs");

  for (const auto& in : inputs) {
    std::vector<AlgElement> gens;
    for (const auto& g : in.gens) gens.push_back(parse_element(A, g));
    ReductionSetup setup = prepare_reduction(A, gens, in.kind, in.exponent);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      EvalPoint lambda = sample_point(A.spec(), seed, 2);
      ReductionPointReport r = verify_reduction_at(setup, lambda);
      if (r.cert_nonzero)
        ok &= check(r.preserved, why, in.name + ": certificate soundness at seed " +
                                          std::to_string(seed));
      if (r.insep) {
        ok &= check(r.insep->powers_in_Z, why, in.name + ": z^(p^r) in Z at every point");
        ok &= check(r.insep->exponent_le_claimed, why, in.name + ": exponent never grows");
        ok &= check(r.insep->exponent_matches, why, in.name + ": exponent generically exact");
      }
      if (r.toral && r.toral->c_nonzero)
        ok &= check(r.toral->all_toral, why, in.name + ": tau_i^p - tau_i in Z");
      if (r.galois && r.galois->applicable) {
        ok &= check(r.galois->roots_distinct, why, in.name + ": P_lambda separable");
        ok &= check(r.galois->roots_in_specialized && r.galois->splitting_field, why,
                    in.name + ": P_lambda splits in the specialization");
        ok &= check(r.galois->coeffs_in_Z, why, in.name + ": P_lambda has coefficients in Z");
      }
      if (r.galois && r.galois->orbit_specializes_independent && r.galois->c_orbit_nonzero)
        ok &= check(r.galois->roots_distinct && r.galois->coeffs_in_Z, why,
                    in.name + ": independent orbit specialization is separable");
      if (!ok) return ok;  // zero exceptions permitted; stop at the first
    }
  }
  return ok;
}

// ---- criterion 5: scalar extension ------------------------------------------------

bool criterion5(std::string& why) {
  StructureTensor D = corpus_symbol_algebra(3, false);
  StructureTensor DX = corpus_symbol_algebra(3, true);
  bool ok = true;

  // Z(x): Galois with group Z_3, stays maximal over Z(X)
  Subspace Zx = generate_subfield(D, {parse_element(D, "x")}).space;
  ExtendedScalars ex = extend_scalars(D, Zx, DX);
  ok &= check(ex.dim_ext == 3 && ex.field_over_ext, why, "Z(x) extends to a subfield of dim 3");
  ok &= check(centralizer(DX, ex.K_ext) == ex.K_ext, why, "Z(x) stays maximal over Z(X)");
  {
    Torus T = make_torus(DX, {parse_element(DX, "x")});
    WeightDecomposition wd = weight_decomposition(DX, T);
    ok &= check(wd.weights.size() == 3, why, "|Lambda| = 3 over Z(X)");
    GaloisData G = galois_from_torus(DX, T);
    ok &= check(G.generators.size() == 3, why, "Galois group Z_3 over Z(X)");
    ok &= check(G.subfield == ex.K_ext, why, "Z(T) matches the extended field");
    Torus back = artin_schreier_from_galois(DX, G.subfield, G.group());
    ok &= check(back.rank == 1, why, "Artin-Schreier roundtrip over Z(X)");
    ok &= check(maximality_report(DX, T).all_true(), why, "six conditions all true over Z(X)");
  }

  // Z(y): purely inseparable of exponent 1, stays maximal over Z(X)
  Subspace Zy = generate_subfield(D, {parse_element(D, "y")}).space;
  ExtendedScalars ey = extend_scalars(D, Zy, DX);
  ok &= check(ey.dim_ext == 3 && ey.field_over_ext, why, "Z(y) extends to a subfield of dim 3");
  ok &= check(centralizer(DX, ey.K_ext) == ey.K_ext, why, "Z(y) stays maximal over Z(X)");
  bool insep = true, proper = false;
  for (std::size_t i = 0; i < ey.K_ext.dim(); ++i) {
    AlgElement z{ey.K_ext.row(i)};
    auto cube = DX.as_scalar(alg_pow(DX, z, 3));
    insep = insep && cube.has_value();
    if (!DX.as_scalar(z).has_value()) proper = true;
  }
  ok &= check(insep && proper, why, "Z(y) purely inseparable of exponent 1 over Z(X)");
  return ok;
}

// ---- criterion 6: p-envelope chains -------------------------------------------------

bool criterion6(std::string& why) {
  bool ok = true;

  LiePresentation gl2 = gl_presentation(3, 2);
  EnvelopeChain c1 = p_closure_chain(gl2, {FpVec{0, 1, 1, 1}});
  ok &= check(c1.q() == 1, why, "matrix example terminates");
  for (const auto& st : c1.steps)
    ok &= check(p_power(gl2, st.y) == st.x, why, "matrix example: y^[p] = x");

  LiePresentation gl6 = gl_presentation(3, 6);
  EnvelopeChain c2 = p_closure_chain(gl6, filiform5_gl6_embedding());
  ok &= check(c2.q() >= 1, why, "filiform chain terminates with q >= 1");
  for (const auto& st : c2.steps)
    ok &= check(p_power(gl6, st.y) == st.x, why, "filiform chain: y^[p] = x");

  // ideal property of every chain member, in both examples
  for (const EnvelopeChain* ch : {&c1, &c2}) {
    const FpSubspace& top = ch->chain.back();
    for (const auto& Li : ch->chain)
      for (std::size_t a = 0; a < top.dim(); ++a)
        for (std::size_t b = 0; b < Li.dim(); ++b)
          ok &= check(Li.contains(ch->ambient->bracket(top.row(a), Li.row(b))), why,
                      "every L_i is an ideal in L_(p)");
  }

  ok &= check(!restricted_check(filiform(3, 5)).restrictable, why, "f_5 is not restrictable");
  return ok;
}

// ---- criterion 7: polynomial-extension shadow ----------------------------------------

bool criterion7(std::string& why) {
  bool ok = true;
  LiePresentation gl2 = gl_presentation(3, 2);
  EnvelopePresentation env1 = envelope_presentation(p_closure_chain(gl2, {FpVec{0, 1, 1, 1}}));
  std::vector<UElement> u1 = central_u_variables(env1);  // raises on centrality failure
  ok &= check(u1.size() == 1, why, "matrix chain has one u variable");
  for (const auto& u : u1)
    ok &= check(centrality_check(env1.algebra, u).central, why, "matrix chain u central");
  ok &= check(freeness_check(env1, u1, 4), why, "matrix chain free at degree p + 1");

  LiePresentation gl6 = gl_presentation(3, 6);
  EnvelopePresentation env2 = envelope_presentation(p_closure_chain(gl6, filiform5_gl6_embedding()));
  std::vector<UElement> u2 = central_u_variables(env2);
  ok &= check(u2.size() == 1, why, "filiform chain has one u variable");
  for (const auto& u : u2)
    ok &= check(centrality_check(env2.algebra, u).central, why, "filiform chain u central");
  for (std::size_t i = 0; i < u2.size(); ++i)
    for (std::size_t j = i + 1; j < u2.size(); ++j)
      ok &= check(u_mul(env2.algebra, u2[i], u2[j]) == u_mul(env2.algebra, u2[j], u2[i]), why,
                  "u variables commute");
  ok &= check(freeness_check(env2, u2, 4), why, "filiform chain free at degree p + 1");
  return ok;
}

// ---- criterion 8: the solvable bridge ---------------------------------------------------

bool criterion8(std::string& why) {
  bool ok = true;
  // enveloping side: U(<h, e>) over F_3
  LiePresentation B = borel2(3);
  Straightener st(B);
  UElement h = UElement::generator(2, 0), e = UElement::generator(2, 1);
  UElement one = UElement::one(2, 3);
  ok &= check(st.mul(e, h) == st.mul(u_sub(h, one, 3), e), why, "e h = (h - 1) e in U");
  ok &= check(centrality_check(B, u_sub(st.pow(h, 3), h, 3)).central, why, "h^3 - h central");
  ok &= check(centrality_check(B, st.pow(e, 3)).central, why, "e^3 central");
  ok &= check(toral_in_envelope(B, h), why, "h toral in the envelope");
  ok &= check(!toral_in_envelope(B, e), why, "e not toral in the envelope");

  // symbol-algebra side, under the sign convention y x = (x + 1) y:
  // hA := x and eA := y^{-1} satisfy the same relations, with s := hA^3 - hA
  // and t := eA^3 central
  StructureTensor A = corpus_symbol_algebra(3, false);
  AlgElement hA = parse_element(A, "x");
  AlgElement eA = alg_inverse(A, parse_element(A, "y"));
  AlgElement oneA = A.unit();
  ok &= check(A.mul(eA, hA) == A.mul(alg_sub(hA, oneA), eA), why, "e h = (h - 1) e in the algebra");
  {
    AlgElement s_val = alg_sub(alg_pow(A, hA, 3), hA);
    auto sc = A.as_scalar(s_val);
    ok &= check(sc.has_value() && *sc == Scalar::variable(A.spec(), "s"), why, "h^3 - h = s");
    ToralWitness tw = is_toral(A, hA);
    ok &= check(tw.toral, why, "hA toral");
    auto t_val = A.as_scalar(alg_pow(A, eA, 3));
    ok &= check(t_val.has_value() && *t_val == Scalar::variable(A.spec(), "t").inv(), why,
                "eA^3 = t^{-1} central");
    ok &= check(!is_toral(A, eA).toral, why, "eA not toral");
  }

  // the two witnesses: C(h) Galois maximal, C(e) purely inseparable maximal
  Subspace Ch = generate_subfield(A, {hA}).space;
  ok &= check(Ch.dim() == 3 && centralizer(A, Ch) == Ch, why, "C(h) is a maximal subfield");
  {
    Torus T = make_torus(A, {hA});
    GaloisData G = galois_from_torus(A, T);
    ok &= check(G.subfield == Ch && G.generators.size() == 3, why, "C(h) Galois with group Z_3");
  }
  Subspace Ce = generate_subfield(A, {eA}).space;
  ok &= check(Ce.dim() == 3 && centralizer(A, Ce) == Ce, why, "C(e) is a maximal subfield");
  ok &= check(Ce == generate_subfield(A, {parse_element(A, "y")}).space, why,
              "C(e) coincides with Z(y)");
  bool insep = true, proper = false;
  for (std::size_t i = 0; i < Ce.dim(); ++i) {
    AlgElement z{Ce.row(i)};
    if (!A.as_scalar(alg_pow(A, z, 3)).has_value()) insep = false;
    if (!A.as_scalar(z).has_value()) proper = true;
  }
  ok &= check(insep && proper, why, "C(e) purely inseparable of exponent 1");
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "Zassenhaus validity: jacobi, dimension, solvable codimension-1 subalgebra", criterion1},
      {2, "torus/Galois correspondence on the p=3 symbol algebra", criterion2},
      {3, "six-way maximality equivalence on corpus pairs", criterion3},
      {4, "specialization soundness over 50 seeded points per input", criterion4},
      {5, "scalar extension preserves Galois and inseparable maximal subfields", criterion5},
      {6, "p-envelope chains terminate with ideal steps; f_5 not restrictable", criterion6},
      {7, "central u variables and freeness at degree p + 1", criterion7},
      {8, "solvable bridge between U(<h,e>) and the symbol algebra", criterion8},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string why;
    bool pass = false;
    try {
      pass = c.body(why);
    } catch (const error& e) {
      why = e.what();
    }
    if (pass) {
      std::printf("PASS criterion %d: %s\n", c.number, c.title.c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %d: %s [%s]\n", c.number, c.title.c_str(),
                  why.empty() ? "unspecified" : why.c_str());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
