#pragma once

// Integer expressions in the script language: "n^3", "7*2^24", "2n - 1",
// and Laurent polynomials in t such as "n t - (2n - 1) + n t^-1".

#include "surgery/integer.hpp"
#include "surgery/text.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace surgery {

struct Expr {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Pow };
  Kind kind = Kind::Number;
  Integer value;             // Number
  std::string name;          // Var
  std::vector<Expr> args;    // operands; Pow stores (base, exponent)

  static Expr number(Integer v);
  static Expr var(std::string name);

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// expr := term {('+'|'-') term}; term := unary {['*'] unary};
/// unary := '-' unary | power; power := atom ['^' ['-'] NUMBER];
/// atom := NUMBER | VAR | '(' expr ')'.
/// Juxtaposition multiplies ("2n", "n t"). Only names in `vars` are variables;
/// parsing stops before any other token it cannot continue with.
Expr parse_expr(TokenCursor& cursor, const std::set<std::string>& vars);

/// Canonical text; parse_expr(print_expr(e)) == e.
std::string print_expr(const Expr& e);

/// Exponent -> coefficient, zero coefficients dropped.
using Laurent = std::map<int, Integer>;

/// Evaluates with `bindings` for the integer variables and `laurent_var` as
/// the polynomial variable. Throws std::invalid_argument on unbound names,
/// exponents that do not fit, or negative powers of non-monomials.
Laurent evaluate_laurent(const Expr& e, const std::map<std::string, Integer>& bindings, const std::string& laurent_var);
/// Throws std::invalid_argument unless the value is a constant.
Integer evaluate_int(const Expr& e, const std::map<std::string, Integer>& bindings);

/// Names of the variables an expression mentions.
std::set<std::string> expr_vars(const Expr& e);

}  // namespace surgery
