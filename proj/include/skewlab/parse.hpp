#pragma once

#include <cctype>
#include <string>
#include <variant>
#include <vector>

#include "skewlab/algebra.hpp"
#include "skewlab/error.hpp"
#include "skewlab/scalar.hpp"

namespace skewlab {

namespace detail {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
};

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, s.substr(i, j - i)});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i)});
      i = j;
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '(' || c == ')') {
      out.push_back({Token::Op, std::string(1, c)});
      ++i;
    } else {
      raise(errc::parse_error, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

/// Value in an expression: either a scalar or an algebra element. Scalars
/// coerce to scalar multiples of the unit when combined with elements.
struct ExprValue {
  std::variant<Scalar, AlgElement> v;
  bool is_scalar() const { return v.index() == 0; }
};

class ExprParser {
 public:
  ExprParser(const FieldSpecPtr& spec, const StructureTensor* algebra, const std::string& text)
      : spec_(spec), alg_(algebra), toks_(tokenize(text)) {}

  ExprValue parse() {
    ExprValue v = sum();
    require(cur().kind == Token::End, errc::parse_error, "trailing input after expression");
    return v;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }
  bool accept_op(const char* op) {
    if (cur().kind == Token::Op && cur().text == op) {
      advance();
      return true;
    }
    return false;
  }

  ExprValue sum() {
    ExprValue acc = product();
    for (;;) {
      if (accept_op("+"))
        acc = add(acc, product(), false);
      else if (accept_op("-"))
        acc = add(acc, product(), true);
      else
        return acc;
    }
  }

  ExprValue product() {
    ExprValue acc = unary();
    for (;;) {
      if (accept_op("*"))
        acc = mul(acc, unary());
      else if (accept_op("/"))
        acc = div(acc, unary());
      else
        return acc;
    }
  }

  ExprValue unary() {
    if (accept_op("-")) {
      ExprValue v = unary();
      return negate(v);
    }
    if (accept_op("+")) return unary();
    return power();
  }

  ExprValue power() {
    ExprValue base = atom();
    if (accept_op("^")) {
      bool neg = false;
      while (accept_op("-")) neg = !neg;
      require(cur().kind == Token::Number, errc::parse_error, "exponent must be an integer");
      long long e = std::stoll(cur().text);
      advance();
      if (neg) e = -e;
      return pow(base, e);
    }
    return base;
  }

  ExprValue atom() {
    if (accept_op("(")) {
      ExprValue v = sum();
      require(accept_op(")"), errc::parse_error, "missing ')'");
      return v;
    }
    if (cur().kind == Token::Number) {
      long long n = std::stoll(cur().text);
      advance();
      return ExprValue{Scalar::constant(spec_, n)};
    }
    if (cur().kind == Token::Ident) {
      std::string name = cur().text;
      advance();
      if (alg_) {
        const auto& labels = alg_->labels();
        for (std::size_t i = 0; i < labels.size(); ++i)
          if (labels[i] == name) return ExprValue{alg_->basis_element(i)};
      }
      if (spec_->var_index(name) != FieldSpec::npos)
        return ExprValue{Scalar::variable(spec_, name)};
      raise(errc::parse_error, "unknown identifier '" + name + "'");
    }
    raise(errc::parse_error, "expected a value");
  }

  AlgElement as_element(const ExprValue& v) const {
    require(alg_ != nullptr, errc::parse_error, "algebra elements not allowed here");
    if (v.is_scalar()) return alg_->scalar_element(std::get<Scalar>(v.v));
    return std::get<AlgElement>(v.v);
  }

  ExprValue add(const ExprValue& a, const ExprValue& b, bool subtract) {
    if (a.is_scalar() && b.is_scalar()) {
      const Scalar &x = std::get<Scalar>(a.v), &y = std::get<Scalar>(b.v);
      return ExprValue{subtract ? x - y : x + y};
    }
    AlgElement x = as_element(a), y = as_element(b);
    return ExprValue{subtract ? alg_sub(x, y) : alg_add(x, y)};
  }

  ExprValue negate(const ExprValue& a) {
    if (a.is_scalar()) return ExprValue{-std::get<Scalar>(a.v)};
    return ExprValue{alg_scale(-Scalar::one(spec_), std::get<AlgElement>(a.v))};
  }

  ExprValue mul(const ExprValue& a, const ExprValue& b) {
    if (a.is_scalar() && b.is_scalar()) return ExprValue{std::get<Scalar>(a.v) * std::get<Scalar>(b.v)};
    if (a.is_scalar()) return ExprValue{alg_scale(std::get<Scalar>(a.v), std::get<AlgElement>(b.v))};
    if (b.is_scalar()) return ExprValue{alg_scale(std::get<Scalar>(b.v), std::get<AlgElement>(a.v))};
    require(alg_ != nullptr, errc::parse_error, "algebra elements not allowed here");
    return ExprValue{alg_->mul(std::get<AlgElement>(a.v), std::get<AlgElement>(b.v))};
  }

  ExprValue div(const ExprValue& a, const ExprValue& b) {
    if (b.is_scalar()) {
      const Scalar& y = std::get<Scalar>(b.v);
      if (a.is_scalar()) return ExprValue{std::get<Scalar>(a.v) / y};
      require(!y.is_zero(), errc::division_by_zero, "division by zero");
      return ExprValue{alg_scale(y.inv(), std::get<AlgElement>(a.v))};
    }
    require(alg_ != nullptr, errc::parse_error, "algebra elements not allowed here");
    AlgElement inv = alg_inverse(*alg_, std::get<AlgElement>(b.v));
    return mul(a, ExprValue{inv});
  }

  ExprValue pow(const ExprValue& a, long long e) {
    if (a.is_scalar()) return ExprValue{std::get<Scalar>(a.v).pow(e)};
    require(alg_ != nullptr, errc::parse_error, "algebra elements not allowed here");
    AlgElement base = std::get<AlgElement>(a.v);
    if (e < 0) {
      base = alg_inverse(*alg_, base);
      e = -e;
    }
    return ExprValue{alg_pow(*alg_, base, static_cast<std::uint64_t>(e))};
  }

  FieldSpecPtr spec_;
  const StructureTensor* alg_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a scalar from the documented grammar, e.g. "(s^2*t + 2)/(s + 1)".
inline Scalar parse_scalar(const FieldSpecPtr& spec, const std::string& text) {
  detail::ExprParser p(spec, nullptr, text);
  detail::ExprValue v = p.parse();
  return std::get<Scalar>(v.v);
}

/// Parse an algebra element; basis labels act as identifiers, bare scalars
/// mean scalar multiples of the unit. Example: "x + u^3 - u".
inline AlgElement parse_element(const StructureTensor& A, const std::string& text) {
  detail::ExprParser p(A.spec(), &A, text);
  detail::ExprValue v = p.parse();
  if (v.is_scalar()) return A.scalar_element(std::get<Scalar>(v.v));
  return std::get<AlgElement>(v.v);
}

}  // namespace skewlab
