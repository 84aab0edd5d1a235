#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "jetlie/parse.hpp"
#include "jetlie/solutions.hpp"
#include "jetlie/symmetry.hpp"
#include "random_jets.hpp"

namespace jetlie {
namespace {

using testing::RandomJets;

ClosedForm explicit_form(const std::string& text) { return ClosedForm::explicit_solution(parse(text)); }

Rational alpha_of(const std::string& text) { return parse(text).constant_value(); }

TEST(PdeResidual, Examples) {
  const ResidualReport a = pde_residual(explicit_form("1/(x*y)"), alpha_of("1/27"), ResidualMode::symbolic);
  ASSERT_TRUE(a.residual);
  EXPECT_TRUE(a.residual->is_zero());
  EXPECT_TRUE(a.passed);

  const ClosedForm root = ClosedForm::explicit_solution(parse("sqrt(1 + a*x*y)"), {{"a", 2}});
  const ResidualReport b = pde_residual(root, -1, ResidualMode::numeric, GridSpec{});
  EXPECT_TRUE(b.passed);
  EXPECT_LT(b.max_abs, 1e-9);
  EXPECT_EQ(b.evaluated + b.skipped, 256);

  const ResidualReport c = pde_residual(explicit_form("x*y"), 2, ResidualMode::symbolic);
  EXPECT_EQ(*c.residual, parse("-1 - 2*x^4*y^4"));
  EXPECT_FALSE(c.passed);
  EXPECT_THROW(pde_residual(root, -1, ResidualMode::symbolic), PreconditionError);
}

TEST(PdeResidual, SymbolicZeroImpliesNumericZero) {
  for (const auto& e : builtin_catalog()) {
    if (!e.form.is_rational()) continue;
    const ResidualReport s = pde_residual(e.form, e.alpha_value(), ResidualMode::symbolic);
    if (!s.residual->is_zero()) continue;
    const ResidualReport n = pde_residual(e.form, e.alpha_value(), ResidualMode::numeric,
                                             e.grid.value_or(GridSpec{}));
    EXPECT_TRUE(n.passed) << e.name;
    EXPECT_LT(n.max_abs, 1e-9) << e.name;
  }
}

TEST(GridSpecTest, ParseAndEnvironment) {
  const GridSpec g = GridSpec::parse("0,1,2,4,3,5");
  EXPECT_EQ(g.nx, 3);
  EXPECT_EQ(g.ny, 5);
  EXPECT_DOUBLE_EQ(g.x_at(1), 0.5);
  EXPECT_DOUBLE_EQ(g.y_at(4), 4.0);
  EXPECT_THROW(GridSpec::parse("0,1,2"), PreconditionError);
  EXPECT_THROW(GridSpec::parse("0,1,2,3,0,4"), PreconditionError);

  setenv("JETLIE_GRID", "1,2,1,2,4,4", 1);
  EXPECT_EQ(GridSpec::from_environment().nx, 4);
  unsetenv("JETLIE_GRID");
  EXPECT_EQ(GridSpec::from_environment().nx, 16);
}

TEST(Geometry, Examples) {
  const GeometryReport g = geometry_eval(explicit_form("1/(x*y)"), 1, 1);
  // At (1, 1): u_x = u_y = -1, u_xx = u_yy = 2, u_xy = 1, s = -3.
  const double w = 1 + 1 + 1;
  EXPECT_NEAR(g.K, (2.0 * 2.0 - 1.0) / (w * w), 1e-14);
  EXPECT_NEAR(g.d, 3.0 / std::sqrt(w), 1e-14);
  EXPECT_NEAR(g.I, 1.0 / 27, 1e-14);

  const GeometryReport r = geometry_eval(explicit_form("1/(x^2 + y^2)"), 0.8, 1.7);
  EXPECT_NEAR(r.I, -4.0 / 27, 1e-12);
  EXPECT_THROW(geometry_eval(explicit_form("x + y"), 1, 1), EvaluationError);
}

TEST(Geometry, InvariantEqualsAlphaAcrossCatalog) {
  RandomJets r(51);
  for (const auto& e : builtin_catalog()) {
    const GridSpec grid = e.grid.value_or(GridSpec{});
    const double alpha = e.alpha_value().get_d();
    int checked = 0;
    for (int attempt = 0; attempt < 200 && checked < 25; ++attempt) {
      const double x = r.real(grid.x0, grid.x1), y = r.real(grid.y0, grid.y1);
      GeometryReport g;
      try {
        g = geometry_eval(e.form, x, y);
      } catch (const EvaluationError&) {
        continue;
      }
      if (std::abs(g.d) < grid.guard.min_support) continue;
      EXPECT_NEAR(g.I, alpha, 1e-10 * std::max(1.0, std::abs(alpha))) << e.name << " at " << x << ", " << y;
      ++checked;
    }
    EXPECT_EQ(checked, 25) << e.name;
  }
}

TEST(Orbits, Examples) {
  const ClosedForm base = explicit_form("1/(x*y)");
  const Rational eps = make_rational(1, 5);
  const ClosedForm t7 = orbit_transform(base, 7, eps);
  EXPECT_EQ(t7.bind(t7.expr), parse("1/(x*y) + x/5"));
  EXPECT_TRUE(pde_residual(t7, alpha_of("1/27"), ResidualMode::symbolic).passed);
  const ClosedForm t3 = orbit_transform(base, 3, eps);
  EXPECT_EQ(t3.bind(t3.expr), parse("1/((x - y/5)*y)"));
  EXPECT_TRUE(pde_residual(t3, alpha_of("1/27"), ResidualMode::symbolic).passed);
  const ClosedForm t0 = orbit_transform(base, 4, 0);
  EXPECT_EQ(t0.expr, base.expr);
  EXPECT_EQ(t0.kind, base.kind);
  EXPECT_THROW(orbit_transform(base, 9, eps), PreconditionError);
  EXPECT_EQ(orbit_transform(base, 6, eps).kind, ClosedForm::Kind::implicit_form);
}

TEST(Orbits, FlowsPreserveCatalogSolutions) {
  const GridSpec grid = GridSpec::parse("0.5,2,0.5,2,8,8");
  for (const auto& e : builtin_catalog()) {
    if (e.form.kind != ClosedForm::Kind::explicit_form) continue;
    for (int gen = 1; gen <= 8; ++gen) {
      for (const Rational& eps : {make_rational(1, 5), make_rational(-1, 5)}) {
        const ClosedForm moved = orbit_transform(e.form, gen, eps);
        const ResidualReport rep = pde_residual(moved, e.alpha_value(), ResidualMode::numeric, grid);
        EXPECT_TRUE(rep.passed) << e.name << " X" << gen << " eps " << eps.get_str() << " scaled "
                                << rep.max_scaled;
      }
    }
  }
}

TEST(Reduction, Examples) {
  const JetExpr F = titeica_operator();
  const JetExpr product = reduce_ansatz(parse("x*y"), F);
  EXPECT_EQ(product, -parse("2*t*psi_1(t)*psi_11(t) + psi_1(t)^2 + alpha*(2*t*psi_1(t) - psi(t))^4"));
  const JetExpr radial = reduce_ansatz(parse("x^2 + y^2"), F);
  EXPECT_EQ(radial, parse("4*psi_1(t)^2 + 8*t*psi_1(t)*psi_11(t) - alpha*(2*t*psi_1(t) - psi(t))^4"));
  EXPECT_THROW(reduce_ansatz(parse("x"), F), PreconditionError);
  EXPECT_THROW(reduce_ansatz(parse("1/x"), F), PreconditionError);
  EXPECT_EQ(ansatz_value(1), parse("psi_1(t)"));
}

TEST(Reduction, OdeResiduals) {
  const JetExpr F = titeica_operator();
  const JetExpr product = reduce_ansatz(parse("x*y"), F);
  const JetExpr radial = reduce_ansatz(parse("x^2 + y^2"), F);
  const OdeResidual a = ode_residual(parse("1/t"), product, {{"alpha", make_rational(1, 27)}});
  EXPECT_TRUE(a.symbolic_zero);
  EXPECT_TRUE(ode_residual(parse("1/t"), radial, {{"alpha", make_rational(-4, 27)}}).symbolic_zero);
  const OdeResidual c = ode_residual(parse("sqrt(1 + a*t)"), radial, {{"alpha", 4}, {"a", 2}});
  EXPECT_FALSE(c.symbolic_zero);
  EXPECT_TRUE(c.passed);
  EXPECT_LT(c.max_abs, 1e-9);
  EXPECT_FALSE(ode_residual(parse("t^2"), product, {{"alpha", 1}}).passed);
}

TEST(Reduction, MatchesDirectResidual) {
  RandomJets r(52);
  const JetExpr F = titeica_operator();
  const JetExpr ode = reduce_ansatz(parse("x*y"), F);
  const Variable t = Variable::parameter("t");
  for (int k = 0; k < 10; ++k) {
    const JetExpr psi = r.nonzero_polynomial({t}, 3, 3);
    const Rational alpha = r.rational();
    Substitution as_xy;
    as_xy.bind(t, parse("x*y"));
    const JetExpr direct = symbolic_pde_residual(ClosedForm::explicit_solution(substitute(psi, as_xy)), alpha);
    const JetExpr reduced = ode_residual(psi, ode, {{"alpha", alpha}}).residual;
    for (int p = 0; p < 5; ++p) {
      const double x = r.real(0.5, 2), y = r.real(0.5, 2);
      const double lhs = eval_numeric(direct, {{Variable::x(), x}, {Variable::y(), y}});
      const double rhs = eval_numeric(reduced, {{t, x * y}});
      EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs))) << psi.str();
    }
  }
}

TEST(Catalog, AllEntriesPass) {
  const auto& entries = builtin_catalog();
  EXPECT_EQ(entries.size(), 16u);
  for (const auto& res : verify_catalog(entries)) {
    EXPECT_TRUE(res.passed) << res.entry->name << ": " << res.error;
  }
}

TEST(Catalog, ParsesOptionsAndRejectsMalformedLines) {
  const auto entries = parse_catalog(
      "# comment\n\n"
      "c | implicit | u^2 + a*x^2 - 1 | a=1/4 | a^2 | guess=1; branch=u; grid=0.1,0.5,0.1,0.5,3,3; mode=numeric; note=n\n");
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].alpha_value(), make_rational(1, 16));
  EXPECT_EQ(entries[0].mode, ResidualMode::numeric);
  ASSERT_TRUE(entries[0].grid);
  EXPECT_EQ(entries[0].grid->nx, 3);
  EXPECT_EQ(entries[0].note, "n");
  EXPECT_THROW(parse_catalog("a | explicit | x"), PreconditionError);
  EXPECT_THROW(parse_catalog("a | sideways | x | | 1 |"), PreconditionError);
  EXPECT_THROW(parse_catalog("a | implicit | u - x | | 1 |"), PreconditionError);
  EXPECT_THROW(parse_catalog("a | explicit | x | | 1 | colour=red"), PreconditionError);
}

TEST(JetEvaluatorTest, ImplicitJetsMatchExplicitBranch) {
  const ClosedForm imp =
      ClosedForm::implicit_solution(parse("u^2 + (x^2 + y^2)/4 - 1"), parse("1"), parse("u"));
  const ClosedForm exp = explicit_form("sqrt(1 - (x^2 + y^2)/4)");
  const JetEvaluator a(imp, 3), b(exp, 3);
  const NumericAssignment va = a.at(0.6, 0.9), vb = b.at(0.6, 0.9);
  for (int n = 0; n <= 3; ++n) {
    for (int i = 0; i <= n; ++i) {
      const Variable v = n == 0 ? Variable::u() : Variable::jet(i, n - i);
      EXPECT_NEAR(va.at(v), vb.at(v), 1e-11) << v.str();
    }
  }
}

}  // namespace
}  // namespace jetlie
