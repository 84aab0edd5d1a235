#include <gtest/gtest.h>

#include "jetlie/parse.hpp"
#include "jetlie/symmetry.hpp"
#include "random_jets.hpp"

namespace jetlie {
namespace {

using testing::RandomJets;

TEST(TotalDerivative, Examples) {
  EXPECT_EQ(total_derivative(JetExpr(Variable::u()), Direction::x), JetExpr(Variable::jet(1, 0)));
  EXPECT_EQ(total_derivative(support_function(), Direction::y), parse("x*u_xy + y*u_yy"));
  const JetExpr T = parse("u_xx*u_yy - u_xy^2 - alpha*(x*u_x + y*u_y - u)^4");
  EXPECT_EQ(total_derivative(differentiate(T, Variable::jet(2, 0)), Direction::x), parse("u_xyy"));
  EXPECT_EQ(total_derivative(parse("x*y*u"), 1, 1), total_derivative(total_derivative(parse("x*y*u"), Direction::x),
                                                                     Direction::y));
}

TEST(TotalDerivative, Divergence) {
  const JetExpr u = Variable::u();
  EXPECT_EQ(divergence(u, -u), parse("u_x - u_y"));
  EXPECT_TRUE(divergence(parse("-y*7"), 0).is_zero());
}

TEST(TotalDerivative, CommuteAndLeibniz) {
  RandomJets r(21);
  const auto vars = testing::jet_vars(2);
  for (int k = 0; k < 40; ++k) {
    const JetExpr a = r.fraction(vars), b = r.fraction(vars);
    EXPECT_EQ(total_derivative(total_derivative(a, Direction::x), Direction::y),
              total_derivative(total_derivative(a, Direction::y), Direction::x));
    EXPECT_EQ(total_derivative(a * b, Direction::x),
              total_derivative(a, Direction::x) * b + a * total_derivative(b, Direction::x));
  }
}

TEST(Prolongation, ScalingField) {
  const VectorField X1{parse("x"), 0, parse("-u")};
  for (auto mode : {ProlongationMode::explicit_formula, ProlongationMode::characteristic}) {
    const Prolongation P = prolong2(X1, mode);
    EXPECT_EQ(P.phi_x, parse("-2*u_x"));
    EXPECT_EQ(P.phi_y, parse("-u_y"));
    EXPECT_EQ(P.phi_xx, parse("-3*u_xx"));
    EXPECT_EQ(P.phi_xy, parse("-2*u_xy"));
    EXPECT_EQ(P.phi_yy, parse("-u_yy"));
  }
}

TEST(Prolongation, LiftField) {
  const Prolongation P = prolong2(VectorField{0, 0, parse("y")});
  EXPECT_TRUE(P.phi_x.is_zero());
  EXPECT_EQ(P.phi_y, JetExpr(1));
  EXPECT_TRUE(P.phi_xx.is_zero() && P.phi_xy.is_zero() && P.phi_yy.is_zero());
}

TEST(Prolongation, GeneralFamilyFirstOrder) {
  const VectorField X{parse("C1*x + C3*y + C4*u"), parse("C5*x + C2*y + C6*u"), parse("C7*x + C8*y - (C1 + C2)*u")};
  const Prolongation P = prolong2(X);
  EXPECT_EQ(P.phi_x, parse("C7 - (2*C1 + C2)*u_x - C5*u_y - C4*u_x^2 - C6*u_x*u_y"));
  EXPECT_EQ(P.phi_y, parse("C8 - C3*u_x - (C1 + 2*C2)*u_y - C4*u_x*u_y - C6*u_y^2"));
}

TEST(Prolongation, ModesAgreeOnRandomFields) {
  RandomJets r(22);
  for (int k = 0; k < 50; ++k) {
    const VectorField X = r.field(2);
    EXPECT_EQ(prolong2(X, ProlongationMode::explicit_formula), prolong2(X, ProlongationMode::characteristic));
  }
  // Opaque coefficients exercise every term of the closed formulas.
  const VectorField G{parse("zeta(x, y, u)"), parse("eta(x, y, u)"), parse("phi(x, y, u)")};
  EXPECT_EQ(prolong2(G, ProlongationMode::explicit_formula), prolong2(G, ProlongationMode::characteristic));
}

TEST(Prolongation, ApplyExamples) {
  const LieAlgebra g = titeica_symmetry_algebra();
  const JetExpr F = titeica_operator();
  EXPECT_TRUE(apply_prolongation(prolong2(g.basis()[7]), F).is_zero());
  EXPECT_EQ(apply_prolongation(prolong2(g.basis()[0]), parse("x")), parse("x"));
  EXPECT_EQ(apply_prolongation(prolong2(g.basis()[6]), parse("u_x")), JetExpr(1));
}

TEST(Prolongation, ApplyIsDerivation) {
  RandomJets r(23);
  const auto vars = testing::jet_vars(2);
  for (int k = 0; k < 20; ++k) {
    const Prolongation P = prolong2(r.field(2));
    const JetExpr a = r.fraction(vars), b = r.fraction(vars);
    const Rational c = r.rational();
    EXPECT_EQ(apply_prolongation(P, JetExpr(c) * a + b),
              JetExpr(c) * apply_prolongation(P, a) + apply_prolongation(P, b));
    EXPECT_EQ(apply_prolongation(P, a * b), apply_prolongation(P, a) * b + a * apply_prolongation(P, b));
  }
}

TEST(VectorFieldTest, RejectsJetCoefficients) {
  EXPECT_THROW((VectorField{parse("u_x"), 0, 0}.validate()), PreconditionError);
  EXPECT_EQ(characteristic(VectorField{parse("-y"), 0, 0}), parse("y*u_x"));
}

}  // namespace
}  // namespace jetlie
