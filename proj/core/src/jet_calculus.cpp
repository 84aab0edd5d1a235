#include "jetlie/jet_calculus.hpp"

#include "jetlie/errors.hpp"

namespace jetlie {

JetExpr total_derivative(const JetExpr& e, Direction dir) {
  if (jet_order(e) > kMaxJetOrder - 1) {
    throw OrderOverflow("total derivative of an expression of jet order " + std::to_string(jet_order(e)));
  }
  const int d = static_cast<int>(dir);
  JetExpr out = differentiate(e, d == 0 ? Variable::x() : Variable::y());
  for (const auto& v : variables(e, true)) {
    if (!v.is_jet()) continue;
    JetExpr p = differentiate(e, v);
    if (!p.is_zero()) out += JetExpr(v.jet_shifted(d)) * p;
  }
  return out;
}

JetExpr total_derivative(const JetExpr& e, int i, int j) {
  JetExpr out = e;
  for (int k = 0; k < i; ++k) out = total_derivative(out, Direction::x);
  for (int k = 0; k < j; ++k) out = total_derivative(out, Direction::y);
  return out;
}

JetExpr divergence(const JetExpr& p1, const JetExpr& p2) {
  return total_derivative(p1, Direction::x) + total_derivative(p2, Direction::y);
}

void VectorField::validate() const {
  for (const JetExpr* c : {&zeta, &eta, &phi}) {
    if (jet_order(*c) >= 1) throw PreconditionError("vector field coefficient depends on derivatives of u");
  }
}

JetExpr characteristic(const VectorField& X) {
  return X.phi - X.zeta * JetExpr(Variable::jet(1, 0)) - X.eta * JetExpr(Variable::jet(0, 1));
}

namespace {

Prolongation by_characteristic(const VectorField& X) {
  const JetExpr Q = characteristic(X);
  auto coeff = [&](int i, int j) {
    return total_derivative(Q, i, j) + X.zeta * JetExpr(Variable::jet(i + 1, j)) +
           X.eta * JetExpr(Variable::jet(i, j + 1));
  };
  return {X, coeff(1, 0), coeff(0, 1), coeff(2, 0), coeff(1, 1), coeff(0, 2)};
}

Prolongation by_formula(const VectorField& X) {
  const Variable vx = Variable::x(), vy = Variable::y(), vu = Variable::u();
  auto d = [](const JetExpr& f, std::initializer_list<Variable> vs) {
    JetExpr r = f;
    for (const auto& v : vs) r = differentiate(r, v);
    return r;
  };
  const JetExpr& z = X.zeta;
  const JetExpr& e = X.eta;
  const JetExpr& p = X.phi;
  const JetExpr ux = Variable::jet(1, 0), uy = Variable::jet(0, 1);
  const JetExpr uxx = Variable::jet(2, 0), uxy = Variable::jet(1, 1), uyy = Variable::jet(0, 2);

  Prolongation P{X, {}, {}, {}, {}, {}};
  P.phi_x = d(p, {vx}) + (d(p, {vu}) - d(z, {vx})) * ux - d(e, {vx}) * uy - d(z, {vu}) * ux * ux -
            d(e, {vu}) * ux * uy;
  P.phi_y = d(p, {vy}) - d(z, {vy}) * ux + (d(p, {vu}) - d(e, {vy})) * uy - d(z, {vu}) * ux * uy -
            d(e, {vu}) * uy * uy;
  P.phi_xx = d(p, {vx, vx}) + (2 * d(p, {vx, vu}) - d(z, {vx, vx})) * ux - d(e, {vx, vx}) * uy +
             (d(p, {vu, vu}) - 2 * d(z, {vx, vu})) * ux * ux - 2 * d(e, {vx, vu}) * ux * uy -
             d(z, {vu, vu}) * ux.pow(3) - d(e, {vu, vu}) * ux * ux * uy + (d(p, {vu}) - 2 * d(z, {vx})) * uxx -
             2 * d(e, {vx}) * uxy - 3 * d(z, {vu}) * ux * uxx - d(e, {vu}) * uy * uxx -
             2 * d(e, {vu}) * ux * uxy;
  P.phi_xy = d(p, {vx, vy}) + (d(p, {vu, vy}) - d(z, {vx, vy})) * ux + (d(p, {vu, vx}) - d(e, {vx, vy})) * uy -
             d(z, {vu, vy}) * ux * ux + (d(p, {vu, vu}) - d(z, {vu, vx}) - d(e, {vu, vy})) * ux * uy -
             d(e, {vu, vx}) * uy * uy - d(z, {vy}) * uxx + (d(p, {vu}) - d(z, {vx}) - d(e, {vy})) * uxy -
             d(e, {vx}) * uyy - d(z, {vu}) * uy * uxx - 2 * d(e, {vu}) * uy * uxy -
             2 * d(z, {vu}) * ux * uxy - d(e, {vu}) * ux * uyy - d(z, {vu, vu}) * ux * ux * uy -
             d(e, {vu, vu}) * ux * uy * uy;
  P.phi_yy = d(p, {vy, vy}) + (2 * d(p, {vu, vy}) - d(e, {vy, vy})) * uy - d(z, {vy, vy}) * ux +
             (d(p, {vu, vu}) - 2 * d(e, {vu, vy})) * uy * uy - 2 * d(z, {vu, vy}) * ux * uy -
             d(e, {vu, vu}) * uy.pow(3) - d(z, {vu, vu}) * ux * uy * uy + (d(p, {vu}) - 2 * d(e, {vy})) * uyy -
             2 * d(z, {vy}) * uxy - 3 * d(e, {vu}) * uy * uyy - d(z, {vu}) * ux * uyy -
             2 * d(z, {vu}) * uy * uxy;
  return P;
}

}  // namespace

Prolongation prolong2(const VectorField& X, ProlongationMode mode) {
  X.validate();
  return mode == ProlongationMode::characteristic ? by_characteristic(X) : by_formula(X);
}

JetExpr apply_prolongation(const Prolongation& P, const JetExpr& e) {
  if (jet_order(e) > 2) throw PreconditionError("second prolongation applied to an expression of order above 2");
  const std::pair<Variable, const JetExpr*> slots[] = {
      {Variable::x(), &P.base.zeta},      {Variable::y(), &P.base.eta},       {Variable::u(), &P.base.phi},
      {Variable::jet(1, 0), &P.phi_x},    {Variable::jet(0, 1), &P.phi_y},    {Variable::jet(2, 0), &P.phi_xx},
      {Variable::jet(1, 1), &P.phi_xy},   {Variable::jet(0, 2), &P.phi_yy},
  };
  JetExpr out;
  for (const auto& [v, c] : slots) {
    if (c->is_zero()) continue;
    JetExpr p = differentiate(e, v);
    if (!p.is_zero()) out += *c * p;
  }
  return out;
}

}  // namespace jetlie
