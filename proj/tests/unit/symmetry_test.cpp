#include <gtest/gtest.h>

#include <cmath>

#include "jetlie/parse.hpp"
#include "jetlie/symmetry.hpp"
#include "random_jets.hpp"

namespace jetlie {
namespace {

using testing::RandomJets;

const LieAlgebra& algebra() {
  static const LieAlgebra g = titeica_symmetry_algebra();
  return g;
}

TEST(Invariance, AllGeneratorsOnSurface) {
  const JetExpr F = titeica_operator();
  for (const auto& X : algebra().basis()) EXPECT_TRUE(symmetry_residual(X, F, true).is_zero());
  EXPECT_TRUE(symmetry_residual(algebra().basis()[7], F, false).is_zero());
  EXPECT_FALSE(symmetry_residual(VectorField{parse("x"), 0, 0}, F, true).is_zero());
}

TEST(Invariance, OnSurfaceReduceExamples) {
  const JetExpr F = titeica_operator();
  EXPECT_TRUE(on_surface_reduce(F, F).is_zero());
  EXPECT_EQ(on_surface_reduce(parse("u_xx*u_yy"), F), parse("u_xy^2 + alpha*(x*u_x + y*u_y - u)^4"));
  const JetExpr free = parse("x*u_xy + u");
  EXPECT_EQ(on_surface_reduce(free, F), free);
  EXPECT_THROW(on_surface_reduce(free, parse("u_yy^2 - 1")), PreconditionError);
}

TEST(Invariance, OnSurfaceReduceIgnoresMultiplesOfF) {
  RandomJets r(31);
  const JetExpr F = titeica_operator();
  const auto vars = testing::jet_vars(2);
  const JetExpr c = Variable::jet(2, 0);
  for (int k = 0; k < 20; ++k) {
    const JetExpr e = r.polynomial(vars, 3, 2), rem = r.polynomial(vars, 3, 2);
    const JetExpr a = on_surface_reduce(e * F + rem, F);
    const JetExpr b = on_surface_reduce(rem, F);
    if (b.is_zero()) {
      EXPECT_TRUE(a.is_zero());
      continue;
    }
    // a / b is a power of u_xx.
    const JetExpr q = a / b;
    bool power = false;
    for (int n = -4; n <= 4 && !power; ++n) power = q == c.pow(n);
    EXPECT_TRUE(power) << q.str();
  }
}

TEST(Determining, GeneralFamilyAndControls) {
  const auto system = determining_system(titeica_operator());
  EXPECT_FALSE(system.empty());
  const VectorField family{parse("C1*x + C3*y + C4*u"), parse("C5*x + C2*y + C6*u"),
                           parse("C7*x + C8*y - (C1 + C2)*u")};
  EXPECT_TRUE(unsatisfied_equations(system, family).empty());
  for (const auto& X : algebra().basis()) EXPECT_TRUE(unsatisfied_equations(system, X).empty());
  EXPECT_FALSE(unsatisfied_equations(system, VectorField{parse("x^2"), 0, 0}).empty());
}

TEST(Brackets, Examples) {
  const auto& b = algebra().basis();
  EXPECT_EQ(lie_bracket(b[0], b[2]), -1 * b[2]);
  EXPECT_EQ(lie_bracket(b[3], b[6]), -1 * b[0]);
  EXPECT_TRUE(lie_bracket(b[4], b[4]).is_zero());
}

TEST(Brackets, AntisymmetryAndJacobiOnBasis) {
  const auto& b = algebra().basis();
  for (const auto& X : b) {
    for (const auto& Y : b) {
      EXPECT_EQ(lie_bracket(X, Y), -1 * lie_bracket(Y, X));
      for (const auto& Z : b) {
        const VectorField j = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                              lie_bracket(Z, lie_bracket(X, Y));
        EXPECT_TRUE(j.is_zero());
      }
    }
  }
}

TEST(Brackets, JacobiOnRandomFields) {
  RandomJets r(32);
  for (int k = 0; k < 50; ++k) {
    const VectorField X = r.field(2), Y = r.field(2), Z = r.field(2);
    EXPECT_EQ(lie_bracket(X, Y), -1 * lie_bracket(Y, X));
    const VectorField j =
        lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y));
    EXPECT_TRUE(j.is_zero());
  }
}

TEST(StructureTableTest, SmallCases) {
  const LieAlgebra one = algebra().subalgebra({0});
  const StructureTable t1 = structure_table(one);
  ASSERT_EQ(t1.entries.size(), 1u);
  ASSERT_TRUE(t1.entries[0][0]);
  EXPECT_EQ(format_combination(*t1.entries[0][0], one.names()), "0");

  const LieAlgebra open = algebra().subalgebra({0, 1, 2, 6});
  const StructureTable t = structure_table(open);
  EXPECT_FALSE(t.entries[2][3].has_value());
  EXPECT_TRUE(t.entries[0][2].has_value());
}

TEST(StructureTableTest, FormatCombination) {
  const auto& names = algebra().names();
  std::vector<Rational> c(8, 0);
  c[0] = -1;
  c[1] = 1;
  EXPECT_EQ(format_combination(c, names), "-X1 + X2");
  c = std::vector<Rational>(8, 0);
  c[3] = -2;
  EXPECT_EQ(format_combination(c, names), "-2*X4");
}

TEST(DerivedSeries, Examples) {
  EXPECT_EQ(derived_series(algebra().subalgebra({0, 1, 2, 6, 7})), (std::vector<std::size_t>{5, 3, 1, 0}));
  EXPECT_EQ(derived_series(algebra()), (std::vector<std::size_t>{8, 8}));
  try {
    derived_series(algebra().subalgebra({0, 1, 2, 6}));
    FAIL() << "expected NotClosedError";
  } catch (const NotClosedError& e) {
    EXPECT_EQ(e.pair(), (std::pair<std::size_t, std::size_t>{2, 3}));
  }
}

TEST(LieAlgebraTest, RejectsDependentBasis) {
  const auto& b = algebra().basis();
  EXPECT_THROW(LieAlgebra({b[0], b[1], b[0] + b[1]}, {"A", "B", "C"}), PreconditionError);
  EXPECT_FALSE(algebra().coordinates(VectorField{parse("x^2"), 0, 0}).has_value());
}

TEST(InvariantForms, Stages) {
  EXPECT_TRUE(verify_invariant_form(1).invariant);
  EXPECT_TRUE(verify_invariant_form(3).invariant);
  EXPECT_TRUE(verify_invariant_form(4).invariant);
  EXPECT_TRUE(verify_invariant_form(5).invariant);
  const JetExpr wrong = parse("u_xx*u_yy - u_xy^2 - H3(x, x*u_x + y*u_y - u)");
  EXPECT_FALSE(verify_invariant_form(3, wrong).invariant);
  EXPECT_THROW(verify_invariant_form(6), PreconditionError);
}

TEST(InvariantForms, StageTwoArguments) {
  // u is not invariant under X3 = y d/dx; the joint invariants of X3, X8 are y, u_x and s.
  EXPECT_FALSE(verify_invariant_form(2).invariant);
  ParseContext ctx = ParseContext::standard();
  ctx.add_function("G", 3);
  const JetExpr joint = parse("u_xx*u_yy - u_xy^2 - G(y, u_x, x*u_x + y*u_y - u)", ctx);
  EXPECT_TRUE(verify_invariant_form(2, joint).invariant);
}

TEST(Adjoint, Examples) {
  const double eps = 0.3;
  const AdjointResult a = adjoint_series(algebra(), 0, 2, eps);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(a.coordinates[k], k == 2 ? std::exp(eps) : 0.0, 1e-14);
  const AdjointResult b = adjoint_series(algebra(), 2, 0, eps);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(b.coordinates[k], k == 0 ? 1.0 : k == 2 ? -eps : 0.0, 1e-14);
  for (std::size_t i = 0; i < 8; ++i) {
    const AdjointResult c = adjoint_series(algebra(), i, i, eps);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_DOUBLE_EQ(c.coordinates[k], k == i ? 1.0 : 0.0);
  }
  EXPECT_THROW(adjoint_series(algebra(), 8, 0, eps), PreconditionError);
}

TEST(Adjoint, IdentityAndGroupLaw) {
  const auto& g = algebra();
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const AdjointResult zero = adjoint_series(g, i, j, 0.0);
      for (std::size_t k = 0; k < 8; ++k) EXPECT_DOUBLE_EQ(zero.coordinates[k], k == j ? 1.0 : 0.0);

      // Ad(e1) applied to the image of Ad(e2), using linearity in the target.
      const double e1 = 0.21, e2 = -0.37;
      const AdjointResult inner = adjoint_series(g, i, j, e2);
      std::vector<double> composed(8, 0.0);
      for (std::size_t m = 0; m < 8; ++m) {
        if (inner.coordinates[m] == 0.0) continue;
        const AdjointResult outer = adjoint_series(g, i, m, e1);
        for (std::size_t k = 0; k < 8; ++k) composed[k] += inner.coordinates[m] * outer.coordinates[k];
      }
      const AdjointResult direct = adjoint_series(g, i, j, e1 + e2);
      for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(composed[k], direct.coordinates[k], 1e-10);
    }
  }
}

}  // namespace
}  // namespace jetlie
