#pragma once

#include <vector>

#include "jetlie/jet_calculus.hpp"

namespace jetlie {

/// u (u_xy^2 - u_xx u_yy) / (xu_x + yu_y - u)^4 - alpha u
JetExpr titeica_lagrangian();

/// Euler-Lagrange operator of a Lagrangian of order at most two.
JetExpr euler_lagrange(const JetExpr& L);

/// Higher Euler operators E^(x), E^(y), E^(xx), E^(xy), E^(yy).
struct HigherEuler {
  JetExpr ex, ey, exx, exy, eyy;
};

/// E^(y) uses the form symmetric to E^(x):
///   dL/du_y - D_x(dL/du_xy) - 2 D_y(dL/du_yy).
/// `mirror_typo` instead builds dL/du_y - D_x(dL/du_xx) - 2 D_y(dL/du_xy),
/// kept only to show that variant breaks the Noether identity.
HigherEuler higher_euler_ops(const JetExpr& L, bool mirror_typo = false);

struct HelmholtzReport {
  JetExpr residual1;
  JetExpr residual2;
  bool is_variational = false;
};

/// Integrability conditions for an operator T(x, y, u, ..., u_yy):
///   dT/du_x - D_x(dT/du_xx) - D_y(1/2 dT/du_xy),
///   dT/du_y - D_x(1/2 dT/du_xy) - D_y(dT/du_yy).
HelmholtzReport helmholtz_residuals(const JetExpr& T);

/// Conditions on an opaque multiplier f(x, y, u, u_x, u_y) making f T satisfy
/// the integrability conditions: coefficients of the second-order jet
/// monomials, scaled to be primitive and deduplicated.
std::vector<JetExpr> integrating_factor_system(const JetExpr& T);

/// Substitution giving f(x, y, u, u_x, u_y) the body `f`.
Substitution multiplier_binding(const JetExpr& f);

/// pr^(2) X (L) + L (D_x zeta + D_y eta).
JetExpr variational_residual(const VectorField& X, const JetExpr& L);

struct ConservationLaw {
  JetExpr Q;
  JetExpr P1;
  JetExpr P2;
  JetExpr xi1, xi2;
  /// Sign with Div P = kappa Q E(L) identically.
  int kappa = 0;
};

/// P = -(A + L xi) with
///   A^1 = Q E^(x) + D_x(Q E^(xx)) + 1/2 D_y(Q E^(xy)),
///   A^2 = Q E^(y) + 1/2 D_x(Q E^(xy)) + D_y(Q E^(yy)).
/// kappa is found by testing both signs; throws PreconditionError when neither holds.
ConservationLaw noether_flux(const JetExpr& Q, const JetExpr& L, const JetExpr& xi1, const JetExpr& xi2,
                             bool mirror_typo = false);

/// Div P - kappa Q E(L); identically zero for a valid law.
JetExpr conservation_defect(const ConservationLaw& cl, const JetExpr& L);

}  // namespace jetlie
