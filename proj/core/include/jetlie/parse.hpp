#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "jetlie/jet_expr.hpp"

namespace jetlie {

/// Identifiers known to the parser besides x, y and the jet coordinates.
struct ParseContext {
  std::set<std::string, std::less<>> parameters;
  /// Declared function symbols with their arity.
  std::map<std::string, int, std::less<>> functions;

  /// alpha, a, C, C1..C8, eps, t and the function symbols
  /// zeta, eta, phi (3), H1, H2 (4), H3 (2), H4, F1, psi, h, sqrt, exp (1), f (5).
  static const ParseContext& standard();

  ParseContext& add_parameter(std::string name);
  ParseContext& add_function(std::string name, int arity);
};

/// Parse expression text. Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' ['-'] integer)?
///   base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
/// Numbers are integers or decimals (read exactly). A function identifier may
/// carry a derivative suffix of 1-based slot digits, e.g. zeta_13(x, y, u).
/// Throws ParseError (with position) or OrderOverflow for u_xxxxx.
JetExpr parse(std::string_view text, const ParseContext& ctx = ParseContext::standard());

}  // namespace jetlie
