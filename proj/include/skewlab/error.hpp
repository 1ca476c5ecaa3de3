#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

enum class errc {
  division_by_zero,
  pole_at_point,
  dimension_mismatch,
  not_invertible,
  not_commutative,
  not_simultaneously_diagonalizable,
  not_elementary_abelian,
  no_generator,
  not_p_power_square_dimension,
  dependent_input,
  not_a_field,
  not_a_subalgebra,
  not_restricted,
  centrality_failure,
  degree_too_high,
  invalid_parameters,
  parse_error,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::pole_at_point: return "PoleAtPoint";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_invertible: return "NotInvertible";
    case errc::not_commutative: return "NotCommutative";
    case errc::not_simultaneously_diagonalizable: return "NotSimultaneouslyDiagonalizable";
    case errc::not_elementary_abelian: return "NotElementaryAbelian";
    case errc::no_generator: return "NoGenerator";
    case errc::not_p_power_square_dimension: return "NotPPowerSquareDimension";
    case errc::dependent_input: return "DependentInput";
    case errc::not_a_field: return "NotAField";
    case errc::not_a_subalgebra: return "NotASubalgebra";
    case errc::not_restricted: return "NotRestricted";
    case errc::centrality_failure: return "CentralityFailure";
    case errc::degree_too_high: return "DegreeTooHigh";
    case errc::invalid_parameters: return "InvalidParameters";
    case errc::parse_error: return "ParseError";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

/// Exception carrying one of the library's named error conditions.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) raise(code, what);
}

}  // namespace skewlab
