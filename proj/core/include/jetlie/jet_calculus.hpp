#pragma once

#include "jetlie/jet_expr.hpp"

namespace jetlie {

enum class Direction { x = 0, y = 1 };

/// D_x or D_y on the jet space. Input jet order must be at most 3.
JetExpr total_derivative(const JetExpr& e, Direction dir);
/// D_x^i D_y^j.
JetExpr total_derivative(const JetExpr& e, int i, int j);
/// D_x p1 + D_y p2.
JetExpr divergence(const JetExpr& p1, const JetExpr& p2);

/// zeta d/dx + eta d/dy + phi d/du with coefficients depending on x, y, u
/// (parameters and opaque functions of those are allowed).
struct VectorField {
  JetExpr zeta;
  JetExpr eta;
  JetExpr phi;

  /// Throws PreconditionError if a coefficient involves a jet of order >= 1.
  void validate() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    return {a.zeta + b.zeta, a.eta + b.eta, a.phi + b.phi};
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) {
    return {a.zeta - b.zeta, a.eta - b.eta, a.phi - b.phi};
  }
  friend VectorField operator*(const JetExpr& c, const VectorField& v) { return {c * v.zeta, c * v.eta, c * v.phi}; }
  friend bool operator==(const VectorField& a, const VectorField& b) = default;
  bool is_zero() const { return zeta.is_zero() && eta.is_zero() && phi.is_zero(); }
};

/// phi - zeta u_x - eta u_y.
JetExpr characteristic(const VectorField& X);

struct Prolongation {
  VectorField base;
  JetExpr phi_x, phi_y, phi_xx, phi_xy, phi_yy;

  friend bool operator==(const Prolongation& a, const Prolongation& b) = default;
};

enum class ProlongationMode {
  explicit_formula,  // closed formulas in the partials of zeta, eta, phi
  characteristic,    // D_J(Q) + zeta u_{Jx} + eta u_{Jy}
};

Prolongation prolong2(const VectorField& X, ProlongationMode mode = ProlongationMode::characteristic);

/// pr^(2) X applied to e (jet order of e at most 2).
JetExpr apply_prolongation(const Prolongation& P, const JetExpr& e);

}  // namespace jetlie
