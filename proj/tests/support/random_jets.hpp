#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "jetlie/jet_calculus.hpp"
#include "jetlie/jet_expr.hpp"

namespace jetlie::testing {

inline std::vector<Variable> point_vars() { return {Variable::x(), Variable::y(), Variable::u()}; }

inline std::vector<Variable> jet_vars(int max_order) {
  std::vector<Variable> v{Variable::x(), Variable::y(), Variable::u()};
  for (int n = 1; n <= max_order; ++n) {
    for (int i = n; i >= 0; --i) v.push_back(Variable::jet(i, n - i));
  }
  return v;
}

class RandomJets {
 public:
  explicit RandomJets(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Rational rational() {
    int n = 0;
    while (n == 0) n = integer(-5, 5);
    return make_rational(n, integer(1, 4));
  }

  /// Sum of `terms` monomials of total degree <= max_degree in vars.
  JetExpr polynomial(const std::vector<Variable>& vars, int terms, int max_degree) {
    JetExpr p;
    for (int t = 0; t < terms; ++t) {
      JetExpr m = rational();
      const int deg = integer(0, max_degree);
      for (int k = 0; k < deg; ++k) m *= JetExpr(vars[integer(0, static_cast<int>(vars.size()) - 1)]);
      p += m;
    }
    return p;
  }

  JetExpr nonzero_polynomial(const std::vector<Variable>& vars, int terms, int max_degree) {
    for (;;) {
      JetExpr p = polynomial(vars, terms, max_degree);
      if (!p.is_zero()) return p;
    }
  }

  JetExpr fraction(const std::vector<Variable>& vars) {
    return polynomial(vars, 3, 2) / nonzero_polynomial(vars, 2, 2);
  }

  VectorField field(int max_degree = 2) {
    return {polynomial(point_vars(), 3, max_degree), polynomial(point_vars(), 3, max_degree),
            polynomial(point_vars(), 3, max_degree)};
  }

  NumericAssignment point(const std::vector<Variable>& vars) {
    NumericAssignment a;
    for (const auto& v : vars) a[v] = real(0.5, 1.5);
    return a;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace jetlie::testing

namespace jetlie {

inline void PrintTo(const JetExpr& e, std::ostream* os) { *os << e.str(); }

}  // namespace jetlie
