#include <gtest/gtest.h>

#include <cmath>

#include "jetlie/errors.hpp"
#include "jetlie/parse.hpp"
#include "random_jets.hpp"

namespace jetlie {
namespace {

using testing::RandomJets;

const JetExpr kS = parse("x*u_x + y*u_y - u");

TEST(Parse, HessianIsTwoTerms) {
  const JetExpr h = parse("u_xx*u_yy - u_xy^2");
  ASSERT_TRUE(h.is_polynomial());
  EXPECT_EQ(h.numerator().size(), 2u);
  EXPECT_EQ(h.str(), "u_xx*u_yy - u_xy^2");
}

TEST(Parse, SupportPowerExpands) {
  const JetExpr s4 = parse("(x*u_x + y*u_y - u)^4");
  ASSERT_TRUE(s4.is_polynomial());
  EXPECT_EQ(s4, kS * kS * kS * kS);
  // Multinomial count for three terms at degree four.
  EXPECT_EQ(s4.numerator().size(), 15u);
}

TEST(Parse, JetOrderFiveOverflows) { EXPECT_THROW(parse("u_xxxxx"), OrderOverflow); }

TEST(Parse, MalformedTextReportsPosition) {
  try {
    parse("x + * y");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse("foo(x)"), ParseError);
  EXPECT_THROW(parse("(x + y"), ParseError);
}

TEST(Parse, PrintedTextReparses) {
  RandomJets r(11);
  const auto vars = testing::jet_vars(2);
  for (int k = 0; k < 40; ++k) {
    const JetExpr e = r.fraction(vars);
    EXPECT_EQ(parse(e.str()), e) << e.str();
  }
  const JetExpr f = parse("H3_2(y, x*u_x + y*u_y - u) + sqrt(1 + 2*x*y)/zeta_13(x, y, u)");
  EXPECT_EQ(parse(f.str()), f);
}

TEST(Arithmetic, Examples) {
  EXPECT_TRUE((kS + (-kS)).is_zero());
  EXPECT_EQ(kS.pow(4), kS.pow(2) * kS.pow(2));
  const JetExpr q = parse("u_xx*u_yy - u_xy^2") / kS.pow(4);
  EXPECT_EQ(q.denominator(), kS.pow(4).numerator());
  EXPECT_THROW(kS / (kS - kS), DivisionByZero);
  EXPECT_THROW((kS - kS).pow(-1), DivisionByZero);
}

TEST(Arithmetic, CanonicalUniqueness) {
  RandomJets r(1);
  const auto vars = testing::jet_vars(2);
  for (int k = 0; k < 60; ++k) {
    const JetExpr a = r.nonzero_polynomial(vars, 3, 2);
    const JetExpr b = r.polynomial(vars, 3, 2);
    const JetExpr c = r.polynomial(vars, 3, 2);
    const JetExpr d = r.nonzero_polynomial(vars, 2, 2);
    // Expanded versus factored forms of the same rational function.
    const JetExpr expanded = (a * b + a * c) / (a * d);
    const JetExpr factored = (b + c) / d;
    EXPECT_EQ(expanded, factored);
    EXPECT_EQ(expanded.str(), factored.str());
    EXPECT_TRUE((expanded - factored).is_zero());
    // Sum of fractions two ways.
    EXPECT_EQ(b / d + c / a, (b * a + c * d) / (a * d));
  }
}

TEST(Arithmetic, FieldAxioms) {
  RandomJets r(2);
  const auto vars = testing::jet_vars(1);
  for (int k = 0; k < 40; ++k) {
    const JetExpr a = r.fraction(vars), b = r.fraction(vars), c = r.fraction(vars);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) EXPECT_EQ(a * (JetExpr(1) / a), JetExpr(1));
  }
}

TEST(Differentiate, SupportFourthPowerInUx) {
  const Variable ux = Variable::jet(1, 0);
  const JetExpr d = differentiate(kS.pow(4), ux);
  EXPECT_EQ(d, JetExpr(4) * JetExpr(Variable::x()) * kS.pow(3));

  // Central difference in u_x at a fixed point.
  NumericAssignment at{{Variable::x(), 0.7}, {Variable::y(), 1.3}, {Variable::u(), -0.4},
                       {ux, 0.9},           {Variable::jet(0, 1), -1.1}};
  const double h = 1e-5;
  auto f = [&](double v) {
    auto a = at;
    a[ux] = v;
    return eval_numeric(kS.pow(4), a);
  };
  const double fd = (f(0.9 + h) - f(0.9 - h)) / (2 * h);
  EXPECT_NEAR(eval_numeric(d, at), fd, 1e-6 * std::abs(fd));
}

TEST(Differentiate, OpaqueSymbols) {
  const JetExpr zeta = parse("zeta(x, y, u)");
  EXPECT_EQ(differentiate(zeta, Variable::u()), parse("zeta_3(x, y, u)"));
  const JetExpr h3 = parse("H3(y, x*u_x + y*u_y - u)");
  EXPECT_EQ(differentiate(h3, Variable::x()), parse("u_x*H3_2(y, x*u_x + y*u_y - u)"));
  EXPECT_EQ(differentiate(parse("sqrt(1 + 2*x*y)"), Variable::x()), parse("2*y*sqrt_1(1 + 2*x*y)"));
}

TEST(Differentiate, LinearLeibnizAndCommuting) {
  RandomJets r(3);
  const auto vars = testing::jet_vars(2);
  for (int k = 0; k < 30; ++k) {
    const JetExpr a = r.fraction(vars), b = r.fraction(vars);
    const Variable v = vars[r.integer(0, static_cast<int>(vars.size()) - 1)];
    const Variable w = vars[r.integer(0, static_cast<int>(vars.size()) - 1)];
    const Rational c = r.rational();
    EXPECT_EQ(differentiate(JetExpr(c) * a + b, v), JetExpr(c) * differentiate(a, v) + differentiate(b, v));
    EXPECT_EQ(differentiate(a * b, v), differentiate(a, v) * b + a * differentiate(b, v));
    EXPECT_EQ(differentiate(differentiate(a, v), w), differentiate(differentiate(a, w), v));
  }
}

TEST(Substitute, Examples) {
  Substitution s;
  s.bind_function("zeta", {Variable::x(), Variable::y(), Variable::u()}, parse("C1*x + C3*y + C4*u"));
  EXPECT_EQ(substitute(parse("zeta_3(x, y, u)"), s), parse("C4"));

  const JetExpr e = parse("x*u_xy/(1 + zeta(x, y, u))");
  EXPECT_EQ(substitute(e, Substitution{}), e);

  const JetExpr F = parse("u_xx*u_yy - u_xy^2 - alpha*(x*u_x + y*u_y - u)^4");
  Substitution solve;
  solve.bind(Variable::jet(0, 2), parse("(u_xy^2 + alpha*(x*u_x + y*u_y - u)^4)/u_xx"));
  EXPECT_TRUE(substitute(F, solve).is_zero());
}

TEST(Substitute, AgreesWithComposedEvaluation) {
  RandomJets r(4);
  const auto vars = testing::jet_vars(1);
  const JetExpr e = parse("(x*u_x + y*u_y - u)^2/(1 + x^2 + u^2) + u_y*y");
  Substitution s;
  s.bind(Variable::u(), parse("x*y + 1/2"));
  s.bind(Variable::jet(1, 0), parse("y"));
  s.bind(Variable::jet(0, 1), parse("x - y^2"));
  const JetExpr composed = substitute(e, s);
  for (int k = 0; k < 100; ++k) {
    const Rational xr = make_rational(r.integer(1, 40), r.integer(1, 20));
    const Rational yr = make_rational(r.integer(-40, 40), r.integer(1, 20));
    const NumericAssignment at{{Variable::x(), xr.get_d()}, {Variable::y(), yr.get_d()}};
    NumericAssignment inner = at;
    for (const auto& [v, img] : s.variables) inner[v] = eval_numeric(img, at);
    const double lhs = eval_numeric(composed, at);
    const double rhs = eval_numeric(e, inner);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Collect, Examples) {
  const Variable ux = Variable::jet(1, 0);
  const auto c = collect(parse("u_x^2*zeta_3(x, y, u) + u_x"), std::vector<Variable>{ux});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at(Monomial(ux, 2)), parse("zeta_3(x, y, u)"));
  EXPECT_EQ(c.at(Monomial(ux)), JetExpr(1));
  EXPECT_TRUE(collect(JetExpr(), std::vector<Variable>{ux}).empty());
  EXPECT_THROW(collect(parse("1/u_x"), std::vector<Variable>{ux}), PreconditionError);
}

TEST(EvalNumeric, Examples) {
  const NumericAssignment at{{Variable::x(), 1},         {Variable::y(), 1},          {Variable::u(), 1},
                             {Variable::jet(1, 0), -1}, {Variable::jet(0, 1), -1}};
  EXPECT_DOUBLE_EQ(eval_numeric(kS, at), -3.0);
  EXPECT_DOUBLE_EQ(eval_numeric(JetExpr(), {}), 0.0);

  // 2-jet of 1/(xy) at (1, 1).
  const NumericAssignment jet{{Variable::x(), 1},         {Variable::y(), 1},         {Variable::u(), 1},
                              {Variable::jet(1, 0), -1}, {Variable::jet(0, 1), -1}, {Variable::jet(2, 0), 2},
                              {Variable::jet(1, 1), 1},  {Variable::jet(0, 2), 2},  {Variable::parameter("alpha"), 1.0 / 27}};
  EXPECT_NEAR(eval_numeric(parse("u_xx*u_yy - u_xy^2 - alpha*(x*u_x + y*u_y - u)^4"), jet), 0.0, 1e-14);
  EXPECT_THROW(eval_numeric(kS, {{Variable::x(), 1}}), EvaluationError);
}

}  // namespace
}  // namespace jetlie
