#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "skewlab/algebra.hpp"
#include "skewlab/parse.hpp"

using namespace skewlab;

namespace {
FieldSpecPtr spec3() { return std::make_shared<FieldSpec>(3, std::vector<std::string>{"s", "t"}); }

StructureTensor symbol3() {
  auto spec = spec3();
  return symbol_algebra(spec, Scalar::variable(spec, "s"), Scalar::variable(spec, "t"));
}

errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::internal;
}
}  // namespace

TEST_CASE("symbol algebra products follow the defining relations") {
  StructureTensor A = symbol3();
  AlgElement x = parse_element(A, "x"), y = parse_element(A, "y");
  CHECK(A.mul(y, x) == parse_element(A, "x*y + y"));
  AlgElement a = parse_element(A, "x^2*y + 2*x");
  CHECK(A.mul(A.unit(), a) == a);
  CHECK(A.mul(a, A.unit()) == a);
  CHECK(A.mul(y, parse_element(A, "y^2")) == parse_element(A, "t"));
  // conjugation: y x y^-1 = x + 1
  AlgElement yinv = alg_inverse(A, y);
  CHECK(A.mul(A.mul(y, x), yinv) == parse_element(A, "x + 1"));
}

TEST_CASE("inverses") {
  StructureTensor A = symbol3();
  CHECK(alg_inverse(A, A.unit()) == A.unit());
  AlgElement y = parse_element(A, "y");
  CHECK(alg_inverse(A, y) == parse_element(A, "t^-1 * y^2"));

  StructureTensor M2 = matrix_algebra(spec3(), 2);
  AlgElement e11 = parse_element(M2, "I - E22");
  CHECK(thrown_code([&] { alg_inverse(M2, e11); }) == errc::not_invertible);
  // invertible matrix element round-trips
  AlgElement g = parse_element(M2, "E12 + E21");
  CHECK(M2.mul(alg_inverse(M2, g), g) == M2.unit());
}

TEST_CASE("degenerate symbol algebra has zero divisors") {
  auto spec = spec3();
  StructureTensor A = symbol_algebra(spec, Scalar::zero(spec), Scalar::one(spec));
  // x^3 = x, so x(x-1)(x+1) = 0 and x cannot be invertible
  AlgElement x = parse_element(A, "x");
  CHECK(alg_pow(A, x, 3) == x);
  CHECK(thrown_code([&] { alg_inverse(A, x); }) == errc::not_invertible);
}

TEST_CASE("centre computations") {
  StructureTensor A = symbol3();
  CHECK(centre(A).dim() == 1);
  CHECK(centre(A).contains(A.unit().coords));

  StructureTensor M2 = matrix_algebra(spec3(), 2);
  CHECK(centre(M2).dim() == 1);
  CHECK(centre(M2).contains(M2.unit().coords));

  StructureTensor C = truncated_polynomial_algebra(spec3(), 4);
  CHECK(centre(C).dim() == 4);
}

TEST_CASE("centralizers") {
  StructureTensor A = symbol3();
  AlgElement x = parse_element(A, "x");
  Subspace s = Subspace::from_rows(A.spec(), A.dim(), {x.coords});
  Subspace c = centralizer(A, s);
  Subspace expect = Subspace::from_rows(
      A.spec(), A.dim(),
      {A.unit().coords, x.coords, parse_element(A, "x^2").coords});
  CHECK(c == expect);

  Subspace unit_span = Subspace::from_rows(A.spec(), A.dim(), {A.unit().coords});
  CHECK(centralizer(A, unit_span) == Subspace::whole(A.spec(), A.dim()));
  CHECK(centralizer(A, Subspace::whole(A.spec(), A.dim())) == centre(A));

  // double centralizer grows back
  CHECK(centralizer(A, c).dim() <= c.dim());
  CHECK(centralizer(A, centralizer(A, s)).contains(s));
}

TEST_CASE("minimal polynomials") {
  StructureTensor A = symbol3();
  CHECK(min_poly(A, parse_element(A, "x")).to_string() == "T^3 + 2*T + 2*s");
  CHECK(min_poly(A, parse_element(A, "y")).to_string() == "T^3 + 2*t");
  CHECK(min_poly(A, A.unit()).to_string() == "T + 2");
  // P(a) = 0 exactly, evaluated through alg_mul chains
  for (const char* e : {"x", "y", "x + y", "x*y + 2"}) {
    AlgElement a = parse_element(A, e);
    CHECK(alg_is_zero(min_poly(A, a).eval(A, a)));
  }
}

TEST_CASE("generated subfields") {
  StructureTensor A = symbol3();
  AlgElement x = parse_element(A, "x"), y = parse_element(A, "y");
  GeneratedSubfield zx = generate_subfield(A, {x});
  CHECK(zx.space.dim() == 3);
  CHECK(zx.field);
  CHECK(zx.space.contains(parse_element(A, "x^2").coords));

  GeneratedSubfield triv = generate_subfield(A, {A.unit()});
  CHECK(triv.space.dim() == 1);

  CHECK(thrown_code([&] { generate_subfield(A, {x, y}); }) == errc::not_commutative);
}

TEST_CASE("tensor validation catches broken tables") {
  auto spec = spec3();
  // e1*e1 = e1 with unit e0 but e1*e0 = 0 breaks the identity axiom
  std::vector<StructureTensor::Entry> bad = {
      {1, 1, 1, Scalar::one(spec)},
      {0, 0, 0, Scalar::one(spec)},
      {0, 1, 1, Scalar::one(spec)},
  };
  CHECK(thrown_code([&] { StructureTensor(spec, 2, 0, bad); }) == errc::invalid_parameters);

  // associativity breaks: e1 e1 = e0 but e1 (e1 e1) != (e1 e1) e1 forced
  std::vector<StructureTensor::Entry> nonassoc = {
      {0, 0, 0, Scalar::one(spec)}, {0, 1, 1, Scalar::one(spec)}, {1, 0, 1, Scalar::one(spec)},
      {0, 2, 2, Scalar::one(spec)}, {2, 0, 2, Scalar::one(spec)},
      {1, 1, 2, Scalar::one(spec)}, {1, 2, 0, Scalar::one(spec)},
      {2, 1, 1, Scalar::one(spec)}, {2, 2, 1, Scalar::one(spec)},
  };
  CHECK(thrown_code([&] { StructureTensor(spec, 3, 0, nonassoc); }) == errc::invalid_parameters);
}

TEST_CASE("symbol algebra parameter validation") {
  auto spec = spec3();
  auto specu = std::make_shared<FieldSpec>(3, std::vector<std::string>{"s", "t"},
                                           std::vector<std::string>{"u"});
  Scalar s = Scalar::variable(spec, "s"), t = Scalar::variable(spec, "t");
  CHECK(thrown_code([&] { symbol_algebra(spec, s, Scalar::zero(spec)); }) ==
        errc::invalid_parameters);
  auto spec2 = std::make_shared<FieldSpec>(2, std::vector<std::string>{"s", "t"});
  CHECK(thrown_code([&] {
          symbol_algebra(spec2, Scalar::variable(spec2, "s"), Scalar::variable(spec2, "t"));
        }) == errc::invalid_parameters);
  // parameters must lie in the ground field Z
  CHECK(thrown_code([&] {
          symbol_algebra(specu, Scalar::variable(specu, "u"), Scalar::variable(specu, "t"));
        }) == errc::invalid_parameters);
}

TEST_CASE("element length mismatches are rejected") {
  StructureTensor A = symbol3();
  AlgElement bad{zero_row(A.spec(), 4)};
  CHECK(thrown_code([&] { A.mul(bad, A.unit()); }) == errc::dimension_mismatch);
}

TEST_CASE("base change keeps the table") {
  StructureTensor A = symbol3();
  auto ext = std::make_shared<FieldSpec>(3, std::vector<std::string>{"s", "t"},
                                         std::vector<std::string>{"u"});
  StructureTensor AX = A.with_field(ext);
  CHECK(AX.dim() == A.dim());
  CHECK(centre(AX).dim() == 1);  // [D(X):Z(X)] = [D:Z]
  AlgElement x = parse_element(AX, "x"), y = parse_element(AX, "y");
  CHECK(AX.mul(y, x) == parse_element(AX, "x*y + y"));
  AlgElement scaled = parse_element(AX, "u*x");
  CHECK(AX.mul(scaled, y) == parse_element(AX, "u*x*y"));
}
