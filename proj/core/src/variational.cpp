#include "jetlie/variational.hpp"

#include <algorithm>

#include "jetlie/errors.hpp"
#include "jetlie/symmetry.hpp"

namespace jetlie {

namespace {

JetExpr partial(const JetExpr& e, int i, int j) { return differentiate(e, Variable::jet(i, j)); }

const Rational kHalf(1, 2);

}  // namespace

JetExpr titeica_lagrangian() {
  const JetExpr u = Variable::u();
  const JetExpr mixed = JetExpr(Variable::jet(1, 1)).pow(2) - JetExpr(Variable::jet(2, 0)) * JetExpr(Variable::jet(0, 2));
  return u * mixed / support_function().pow(4) - JetExpr(Variable::parameter("alpha")) * u;
}

JetExpr euler_lagrange(const JetExpr& L) {
  if (jet_order(L) > 2) throw PreconditionError("Lagrangian of order above two");
  JetExpr out = partial(L, 0, 0);
  out -= total_derivative(partial(L, 1, 0), Direction::x);
  out -= total_derivative(partial(L, 0, 1), Direction::y);
  out += total_derivative(partial(L, 2, 0), 2, 0);
  out += total_derivative(partial(L, 1, 1), 1, 1);
  out += total_derivative(partial(L, 0, 2), 0, 2);
  return out;
}

HigherEuler higher_euler_ops(const JetExpr& L, bool mirror_typo) {
  HigherEuler h;
  h.exx = partial(L, 2, 0);
  h.exy = partial(L, 1, 1);
  h.eyy = partial(L, 0, 2);
  h.ex = partial(L, 1, 0) - 2 * total_derivative(h.exx, Direction::x) - total_derivative(h.exy, Direction::y);
  if (mirror_typo) {
    h.ey = partial(L, 0, 1) - total_derivative(h.exx, Direction::x) - 2 * total_derivative(h.exy, Direction::y);
  } else {
    h.ey = partial(L, 0, 1) - total_derivative(h.exy, Direction::x) - 2 * total_derivative(h.eyy, Direction::y);
  }
  return h;
}

HelmholtzReport helmholtz_residuals(const JetExpr& T) {
  if (jet_order(T) > 2) throw PreconditionError("operator of order above two");
  const JetExpr half_mixed = JetExpr(kHalf) * partial(T, 1, 1);
  HelmholtzReport r;
  r.residual1 = partial(T, 1, 0) - total_derivative(partial(T, 2, 0), Direction::x) -
                total_derivative(half_mixed, Direction::y);
  r.residual2 = partial(T, 0, 1) - total_derivative(half_mixed, Direction::x) -
                total_derivative(partial(T, 0, 2), Direction::y);
  r.is_variational = r.residual1.is_zero() && r.residual2.is_zero();
  return r;
}

namespace {

std::vector<JetExpr> multiplier_args() {
  return {Variable::x(), Variable::y(), Variable::u(), Variable::jet(1, 0), Variable::jet(0, 1)};
}

Polynomial primitive_linear_form(const Polynomial& p) {
  std::vector<Variable> fvars;
  for (const auto& v : p.variables()) {
    if (v.is_func_deriv()) fvars.push_back(v);
  }
  Polynomial g;
  for (const auto& [m, c] : collect(JetExpr(p), fvars)) g = gcd(g, c.numerator());
  if (g.is_zero()) return p.primitive();
  return Polynomial::divide_exact(p, g).value_or(p).primitive();
}

}  // namespace

std::vector<JetExpr> integrating_factor_system(const JetExpr& T) {
  const JetExpr f = apply_function("f", multiplier_args());
  const HelmholtzReport r = helmholtz_residuals(f * T);
  const std::vector<Variable> second{Variable::jet(2, 0), Variable::jet(1, 1), Variable::jet(0, 2)};
  std::vector<JetExpr> eqs;
  for (const JetExpr* res : {&r.residual1, &r.residual2}) {
    for (const auto& [m, c] : collect(JetExpr(res->numerator()), second)) {
      if (c.is_zero()) continue;
      JetExpr e(primitive_linear_form(c.numerator()));
      if (std::find(eqs.begin(), eqs.end(), e) == eqs.end()) eqs.push_back(std::move(e));
    }
  }
  return eqs;
}

Substitution multiplier_binding(const JetExpr& f) {
  Substitution s;
  s.bind_function("f", {Variable::x(), Variable::y(), Variable::u(), Variable::jet(1, 0), Variable::jet(0, 1)}, f);
  return s;
}

JetExpr variational_residual(const VectorField& X, const JetExpr& L) {
  const JetExpr div_xi = total_derivative(X.zeta, Direction::x) + total_derivative(X.eta, Direction::y);
  return apply_prolongation(prolong2(X), L) + L * div_xi;
}

ConservationLaw noether_flux(const JetExpr& Q, const JetExpr& L, const JetExpr& xi1, const JetExpr& xi2,
                             bool mirror_typo) {
  if (jet_order(Q) > 1) throw PreconditionError("characteristic of order above one");
  const HigherEuler h = higher_euler_ops(L, mirror_typo);
  const JetExpr half(kHalf);
  const JetExpr A1 = Q * h.ex + total_derivative(Q * h.exx, Direction::x) + half * total_derivative(Q * h.exy, Direction::y);
  const JetExpr A2 = Q * h.ey + half * total_derivative(Q * h.exy, Direction::x) + total_derivative(Q * h.eyy, Direction::y);
  ConservationLaw cl{Q, -(A1 + L * xi1), -(A2 + L * xi2), xi1, xi2, 0};
  const JetExpr div = divergence(cl.P1, cl.P2);
  const JetExpr qe = Q * euler_lagrange(L);
  if ((div - qe).is_zero()) {
    cl.kappa = 1;
  } else if ((div + qe).is_zero()) {
    cl.kappa = -1;
  } else {
    throw PreconditionError("Div P equals neither +Q E(L) nor -Q E(L)");
  }
  return cl;
}

JetExpr conservation_defect(const ConservationLaw& cl, const JetExpr& L) {
  return divergence(cl.P1, cl.P2) - JetExpr(static_cast<long>(cl.kappa)) * cl.Q * euler_lagrange(L);
}

}  // namespace jetlie
