#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "jetlie/rational.hpp"
#include "jetlie/variable.hpp"

namespace jetlie {

/// Power product of variables, stored sorted by the global variable order.
class Monomial {
 public:
  using Factor = std::pair<Variable, int>;

  Monomial() = default;
  explicit Monomial(const Variable& v, int exponent = 1);
  /// Factors need not be sorted; zero exponents are dropped, repeats merged.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return f_; }
  bool is_one() const noexcept { return f_.empty(); }
  int degree() const noexcept;
  int exponent(const Variable& v) const noexcept;
  bool contains(const Variable& v) const noexcept { return exponent(v) > 0; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  /// Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const;
  /// Componentwise minimum of exponents.
  static Monomial gcd(const Monomial& a, const Monomial& b);
  /// The monomial with v removed, and v's exponent.
  std::pair<Monomial, int> split(const Variable& v) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  /// Graded lexicographic order; x is the most significant variable.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> f_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are sorted by decreasing monomial; no zero coefficients are stored.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
  };

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const Variable& v, int exponent = 1);
  Polynomial(const Monomial& m, const Rational& c);
  /// Terms in any order; combined and sorted.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Constant term value when is_constant().
  Rational constant_value() const;
  const Term& leading_term() const { return terms_.front(); }
  int total_degree() const noexcept;
  int degree_in(const Variable& v) const noexcept;
  bool contains(const Variable& v) const noexcept { return degree_in(v) > 0; }
  /// Sorted, duplicate-free variables occurring in the polynomial.
  std::vector<Variable> variables() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial operator*(const Monomial& m) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial pow(int n) const;

  /// q with a == q*b if such polynomial q exists.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

  /// Coefficients of p viewed as a univariate polynomial in v; index = degree.
  std::vector<Polynomial> coefficients_in(const Variable& v) const;
  static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, const Variable& v);

  /// Gcd of all monomials of the polynomial (1 for zero).
  Monomial monomial_content() const;
  /// Positive rational r such that p / r has coprime integer coefficients,
  /// with the sign chosen so that the leading coefficient of p / r is positive.
  Rational rational_content() const;
  /// p / rational_content(p).
  Polynomial primitive() const;

  std::size_t hash() const noexcept;
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor over Q, normalized to a primitive integer polynomial
/// with positive leading coefficient. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace jetlie
