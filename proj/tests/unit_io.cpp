#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "skewlab/corpus.hpp"
#include "skewlab/io.hpp"

using namespace skewlab;

namespace {
errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::internal;
}
}  // namespace

TEST_CASE("algebra files round-trip") {
  StructureTensor A = corpus_symbol_algebra(3, true);
  json j = algebra_to_json(A);
  CHECK(j["p"] == 3);
  CHECK(j["dim"] == 9);
  CHECK(j["unit"] == 0);
  CHECK(j["base_vars"] == json::array({"s", "t"}));
  CHECK(j["ext_vars"] == json::array({"u"}));

  StructureTensor back = algebra_from_json(j);
  CHECK(back.dim() == A.dim());
  CHECK(back.labels() == A.labels());
  CHECK(algebra_to_json(back) == j);  // canonical serialization is stable

  AlgElement x = parse_element(back, "x"), y = parse_element(back, "y");
  CHECK(back.mul(y, x) == parse_element(back, "x*y + y"));
}

TEST_CASE("malformed algebra files raise parse errors") {
  CHECK(thrown_code([] { algebra_from_json(json::parse("{}")); }) == errc::parse_error);
  json j = algebra_to_json(corpus_symbol_algebra(3, false));
  j["table"][0] = json::array({0, 0});
  CHECK(thrown_code([&] { algebra_from_json(j); }) == errc::parse_error);
  // an inconsistent table is rejected by validation, not just parsing
  json j2 = algebra_to_json(corpus_symbol_algebra(3, false));
  j2["table"][1][3] = "2";  // break the unit row
  CHECK(thrown_code([&] { algebra_from_json(j2); }) == errc::invalid_parameters);
}

TEST_CASE("lie files round-trip with pmap and embedding") {
  json j = lie_to_json(gl_presentation(3, 2));
  LieFile back = lie_from_json(j);
  CHECK(back.algebra.dim() == 4);
  CHECK(back.algebra.has_pmap());
  CHECK(lie_to_json(back.algebra) == j);

  json jf = lie_to_json(filiform(3, 5), filiform5_gl6_embedding());
  CHECK(jf.contains("embedding"));
  LieFile f5 = lie_from_json(jf);
  CHECK(!f5.algebra.has_pmap());
  std::vector<FpVec> emb = lie_embedding_from_json(jf, 36, 3);
  CHECK(emb == filiform5_gl6_embedding());
  CHECK(thrown_code([&] { lie_embedding_from_json(jf, 25, 3); }) == errc::parse_error);
}

TEST_CASE("gens files validate their kind") {
  json j = gens_to_json(GensFile{"inseparable", 1, {"y"}});
  GensFile g = gens_from_json(j);
  CHECK(g.kind == "inseparable");
  CHECK(g.exponent == 1);
  StructureTensor A = corpus_symbol_algebra(3, true);
  auto gens = g.parse_against(A);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == parse_element(A, "y"));

  json bad = j;
  bad["kind"] = "mystery";
  CHECK(thrown_code([&] { gens_from_json(bad); }) == errc::parse_error);
  json empty = j;
  empty["gens"] = json::array();
  CHECK(thrown_code([&] { gens_from_json(empty); }) == errc::invalid_parameters);
}

TEST_CASE("uelement serialization is ordered") {
  LiePresentation B = borel2(3);
  Straightener s(B);
  UElement h = UElement::generator(2, 0), e = UElement::generator(2, 1);
  UElement v = u_sub(s.mul(h, e), e, 3);  // h e - e
  json j = uelement_to_json(v);
  REQUIRE(j.size() == 2);
  CHECK(j[0] == json::array({"1,1", "1"}));  // leading term h e first
  CHECK(j[1] == json::array({"0,1", "2"}));
}

TEST_CASE("run reports are deterministic") {
  RunReport a("demo", json::object());
  a.add_verdict("v", "inst", true, json(3));
  a.set_timing("total", 12.5);
  RunReport b("demo", json::object());
  b.add_verdict("v", "inst", true, json(3));
  b.set_timing("total", 99.9);
  // timings stay out of the default serialization, keeping bytes identical
  CHECK(a.to_json().dump(2) == b.to_json().dump(2));
  CHECK(a.to_json(true) != b.to_json(true));
  CHECK(a.to_json()["schema"] == 1);
  CHECK(a.all_pass());
  b.add_verdict("w", "inst", false);
  CHECK(!b.all_pass());
}

TEST_CASE("corpus instances all emit and reload") {
  for (const auto& e : corpus_entries()) {
    json j = corpus_emit(e.name);
    CHECK(!j.empty());
    if (e.kind == "algebra") CHECK(algebra_from_json(j).dim() >= 1);
    if (e.kind == "lie") CHECK(lie_from_json(j).algebra.dim() >= 1);
    if (e.kind == "gens") CHECK(!gens_from_json(j).exprs.empty());
  }
  CHECK(thrown_code([] { corpus_emit("nonsense"); }) == errc::invalid_parameters);
}
