#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jetlie/polynomial.hpp"
#include "jetlie/rational.hpp"
#include "jetlie/variable.hpp"

namespace jetlie {

/// Exact rational function over jet coordinates, parameters and opaque
/// function-derivative symbols.
///
/// Canonical form: gcd(numerator, denominator) = 1, the denominator is a
/// primitive integer polynomial with positive leading coefficient, and zero
/// is 0/1. Two JetExprs denote the same rational function iff they compare
/// equal.
class JetExpr {
 public:
  JetExpr() : den_(1) {}
  JetExpr(long c) : num_(c), den_(1) {}                  // NOLINT(google-explicit-constructor)
  JetExpr(const Rational& c) : num_(c), den_(1) {}       // NOLINT(google-explicit-constructor)
  JetExpr(const Variable& v) : num_(v), den_(1) {}       // NOLINT(google-explicit-constructor)
  JetExpr(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// n / d in canonical form. Throws DivisionByZero if d is zero.
  static JetExpr fraction(Polynomial n, Polynomial d);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return is_polynomial() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }

  JetExpr operator-() const;
  friend JetExpr operator+(const JetExpr& a, const JetExpr& b);
  friend JetExpr operator-(const JetExpr& a, const JetExpr& b);
  friend JetExpr operator*(const JetExpr& a, const JetExpr& b);
  /// Throws DivisionByZero when b is identically zero.
  friend JetExpr operator/(const JetExpr& a, const JetExpr& b);
  JetExpr& operator+=(const JetExpr& o) { return *this = *this + o; }
  JetExpr& operator-=(const JetExpr& o) { return *this = *this - o; }
  JetExpr& operator*=(const JetExpr& o) { return *this = *this * o; }
  JetExpr& operator/=(const JetExpr& o) { return *this = *this / o; }
  /// Integer power; negative exponents invert (zero base then throws).
  JetExpr pow(int n) const;

  friend bool operator==(const JetExpr& a, const JetExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Deterministic text in the parser's grammar.
  std::string str() const;

 private:
  JetExpr(Polynomial n, Polynomial d, bool /*canonical*/) : num_(std::move(n)), den_(std::move(d)) {}
  Polynomial num_;
  Polynomial den_;
};

/// An opaque function symbol applied to argument expressions, e.g. H3(y, s).
/// Interned: identical (name, args) pairs share one record for the process lifetime.
struct Application {
  std::string name;
  std::vector<JetExpr> args;
  /// Canonical text "name(arg1,...)" used for ordering and interning.
  std::string key;
};

const Application* intern_application(std::string_view name, std::vector<JetExpr> args);

/// Variable for the value of `name(args)` itself (zero derivative index).
Variable apply_function(std::string_view name, std::vector<JetExpr> args);
/// Variable for a partial derivative of `name(args)`; `slots` lists 0-based
/// argument slots, repeated for higher derivatives.
Variable apply_function_deriv(std::string_view name, std::vector<JetExpr> args,
                              std::initializer_list<int> slots);

// ---------------------------------------------------------------------------
// Structural queries

/// Variables occurring in e. With `through_args`, variables inside opaque
/// function arguments are included as well. Sorted, duplicate-free.
std::vector<Variable> variables(const JetExpr& e, bool through_args = true);
/// Highest jet order of any variable in e (through function arguments); -1 if none.
int jet_order(const JetExpr& e);
bool depends_on(const JetExpr& e, const Variable& v);

// ---------------------------------------------------------------------------
// Calculus and rewriting

/// Partial derivative with all other variables independent; applied opaque
/// functions differentiate by the chain rule.
JetExpr differentiate(const JetExpr& e, const Variable& v);

/// Formal definition of a function symbol used when substituting it away.
struct FunctionBinding {
  std::vector<Variable> formals;
  JetExpr body;
};

/// Simultaneous replacement of variables and function symbols.
struct Substitution {
  std::map<Variable, JetExpr> variables;
  std::map<std::string, FunctionBinding, std::less<>> functions;

  Substitution& bind(const Variable& v, JetExpr e) {
    variables.insert_or_assign(v, std::move(e));
    return *this;
  }
  Substitution& bind_function(std::string name, std::vector<Variable> formals, JetExpr body) {
    functions.insert_or_assign(std::move(name), FunctionBinding{std::move(formals), std::move(body)});
    return *this;
  }
  bool empty() const noexcept { return variables.empty() && functions.empty(); }
};

JetExpr substitute(const JetExpr& e, const Substitution& s);

/// Coefficients of e as a polynomial in `vars`. Keys are monomials in `vars`
/// only (the empty monomial collects the vars-free part); coefficients are free
/// of `vars`. Throws PreconditionError when e is not polynomial in `vars`.
std::map<Monomial, JetExpr> collect(const JetExpr& e, std::span<const Variable> vars);

// ---------------------------------------------------------------------------
// Numerics

/// Numeric model of an opaque function: value of the partial derivative given
/// by `deriv` (counts per slot) at `args`.
using NumericFunction = std::function<double(std::span<const double> args, std::span<const int> deriv)>;
using NumericAssignment = std::unordered_map<Variable, double, VariableHash>;
using FunctionTable = std::map<std::string, NumericFunction, std::less<>>;

/// Standard numeric models: sqrt and exp (all derivative orders).
const FunctionTable& standard_functions();

/// IEEE double value of e. Throws EvaluationError on a missing binding or
/// when the denominator underflows.
double eval_numeric(const JetExpr& e, const NumericAssignment& assignment,
                    const FunctionTable& funcs = standard_functions());

}  // namespace jetlie
