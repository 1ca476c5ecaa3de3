#pragma once

#include <string>
#include <vector>

#include "skewlab/algebra.hpp"
#include "skewlab/io.hpp"
#include "skewlab/lie.hpp"

namespace skewlab {

/// Built-in desk-scale instances; `corpus list` enumerates them and
/// `corpus emit` writes them in the documented file formats.
struct CorpusEntry {
  std::string name;
  std::string kind;  // "algebra", "lie" or "gens"
  std::string description;
};

inline const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = {
      {"symbol3", "algebra",
       "degree-3 symbol algebra over F_3(s,t): x^3 - x = s, y^3 = t, y x = (x+1) y"},
      {"symbol3u", "algebra", "the same symbol algebra over F_3(s,t)(u), one specialization variable"},
      {"symbol5", "algebra", "degree-5 symbol algebra over F_5(s,t)"},
      {"mat2", "algebra", "2x2 matrix algebra over F_3(s,t), a tensor with zero divisors"},
      {"zassenhaus_3_1", "lie", "Zassenhaus algebra W(1,1) over F_3, dimension 3"},
      {"zassenhaus_3_2", "lie", "Zassenhaus algebra W(1,2) over F_3, dimension 9"},
      {"zassenhaus_5_1", "lie", "Zassenhaus algebra W(1,1) over F_5, dimension 5"},
      {"zassenhaus_7_1", "lie", "Zassenhaus algebra W(1,1) over F_7, dimension 7"},
      {"filiform5", "lie", "filiform f_5 over F_3 with its faithful embedding into gl_6"},
      {"onedim", "lie", "one-dimensional algebra spanned by [[0,1],[1,1]] inside gl_2 over F_3"},
      {"borel2", "lie", "the restricted algebra <h, e> with [h,e] = e over F_3"},
      {"gl2_f3", "lie", "gl_2 over F_3 with the matrix p-th power as p-mapping"},
      {"gl6_f3", "lie", "gl_6 over F_3 with the matrix p-th power as p-mapping"},
      {"gens_x", "gens", "toral generator x of the symbol algebra: the constant Galois field Z(X)(x)"},
      {"gens_x_moving", "gens", "toral generator x + u^3 - u: a moving family of Galois subfields"},
      {"gens_y", "gens", "generator y: purely inseparable subfield of exponent 1"},
      {"gens_y_moving", "gens", "generator y + u: a moving purely inseparable family"},
      {"gens_span_ux", "gens", "subspace spanned by u*x; its certificate vanishes at u = 0"},
      {"gens_span_unit_x_uy", "gens", "subspace spanned by 1 and x + u*y"},
  };
  return entries;
}

inline FieldSpecPtr corpus_field(fp_t p, bool with_ext) {
  return std::make_shared<FieldSpec>(p, std::vector<std::string>{"s", "t"},
                                     with_ext ? std::vector<std::string>{"u"}
                                              : std::vector<std::string>{});
}

inline StructureTensor corpus_symbol_algebra(fp_t p, bool with_ext) {
  FieldSpecPtr spec = corpus_field(p, with_ext);
  return symbol_algebra(spec, Scalar::variable(spec, "s"), Scalar::variable(spec, "t"));
}

inline json corpus_emit(const std::string& name) {
  if (name == "symbol3") return algebra_to_json(corpus_symbol_algebra(3, false));
  if (name == "symbol3u") return algebra_to_json(corpus_symbol_algebra(3, true));
  if (name == "symbol5") return algebra_to_json(corpus_symbol_algebra(5, false));
  if (name == "mat2") return algebra_to_json(matrix_algebra(corpus_field(3, false), 2));
  if (name == "zassenhaus_3_1") return lie_to_json(zassenhaus(3, 1));
  if (name == "zassenhaus_3_2") return lie_to_json(zassenhaus(3, 2));
  if (name == "zassenhaus_5_1") return lie_to_json(zassenhaus(5, 1));
  if (name == "zassenhaus_7_1") return lie_to_json(zassenhaus(7, 1));
  if (name == "filiform5") return lie_to_json(filiform(3, 5), filiform5_gl6_embedding());
  if (name == "onedim") return lie_to_json(LiePresentation(3, 1, {}), {FpVec{0, 1, 1, 1}});
  if (name == "borel2") return lie_to_json(borel2(3));
  if (name == "gl2_f3") return lie_to_json(gl_presentation(3, 2));
  if (name == "gl6_f3") return lie_to_json(gl_presentation(3, 6));
  if (name == "gens_x") return gens_to_json(GensFile{"toral", 0, {"x"}});
  if (name == "gens_x_moving") return gens_to_json(GensFile{"toral", 0, {"x + u^3 - u"}});
  if (name == "gens_y") return gens_to_json(GensFile{"inseparable", 1, {"y"}});
  if (name == "gens_y_moving") return gens_to_json(GensFile{"inseparable", 1, {"y + u"}});
  if (name == "gens_span_ux") return gens_to_json(GensFile{"subspace", 0, {"u*x"}});
  if (name == "gens_span_unit_x_uy") return gens_to_json(GensFile{"subspace", 0, {"1", "x + u*y"}});
  raise(errc::invalid_parameters, "unknown corpus instance '" + name + "'");
}

}  // namespace skewlab
