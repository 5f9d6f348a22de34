#pragma once

// Arithmetic expressions shared by the scenario language and the tests:
// integers, names, + - * / ^ and parentheses. Shifted variables may be
// written s^j(x), sj(x) or s(x); they resolve to the canonical name "sj(x)"
// ("x" for j = 0).

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sigchev/poly.hpp"

namespace sigchev {

struct Expr {
  enum class Kind { Number, Name, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind = Kind::Number;
  Integer number;  // Number, and the exponent of Pow
  std::string name;
  std::vector<std::shared_ptr<const Expr>> args;
};
using ExprPtr = std::shared_ptr<const Expr>;

/// Canonical name of the j-th shift of a variable.
std::string shifted_name(const std::string& var, unsigned j);
/// Inverse of shifted_name: (base variable, shift). Plain names give shift 0.
std::pair<std::string, unsigned> split_shifted_name(const std::string& name);

/// Throws SyntaxError. `offset` is added to reported columns.
ExprPtr parse_expr(std::string_view text, std::size_t offset = 0);
std::vector<std::string> expr_names(const ExprPtr& e);

/// Names resolve to ring variables first, then to generators of the
/// coefficient field. Division is allowed by constants only.
Poly eval_poly(const PolyRing& r, const ExprPtr& e);
Elem eval_elem(const Field& f, const ExprPtr& e);

Poly parse_poly(const PolyRing& r, std::string_view text);
Elem parse_elem(const Field& f, std::string_view text);
/// Univariate polynomial over f in the variable `var`.
UPoly parse_upoly(const Field& f, std::string_view text, const std::string& var);

}  // namespace sigchev
