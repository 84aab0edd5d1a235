#include "jetlie/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "jetlie/errors.hpp"
#include "jetlie/parse.hpp"
#include "jetlie/symmetry.hpp"
#include "jetlie_catalog_data.hpp"

namespace jetlie {

namespace {

const Variable kX = Variable::x();
const Variable kY = Variable::y();
const Variable kU = Variable::u();

Substitution parameter_substitution(const std::map<std::string, Rational, std::less<>>& params) {
  Substitution s;
  for (const auto& [name, value] : params) s.bind(Variable::parameter(name), JetExpr(value));
  return s;
}

bool depends_on_point(const JetExpr& e) {
  for (const auto& v : variables(e, true)) {
    if (v.is_independent() || v.is_jet()) return true;
  }
  return false;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string(what) + " is not finite");
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClosedForm

ClosedForm ClosedForm::explicit_solution(JetExpr u, std::map<std::string, Rational, std::less<>> params) {
  ClosedForm cf;
  cf.expr = std::move(u);
  cf.params = std::move(params);
  return cf;
}

ClosedForm ClosedForm::implicit_solution(JetExpr relation, JetExpr guess, std::optional<JetExpr> branch,
                                         std::map<std::string, Rational, std::less<>> params) {
  ClosedForm cf;
  cf.kind = Kind::implicit_form;
  cf.expr = std::move(relation);
  cf.guess = std::move(guess);
  cf.branch = std::move(branch);
  cf.params = std::move(params);
  return cf;
}

JetExpr ClosedForm::bind(const JetExpr& e) const {
  if (params.empty()) return e;
  return substitute(e, parameter_substitution(params));
}

ClosedForm ClosedForm::bound() const {
  ClosedForm out = *this;
  out.expr = bind(expr);
  if (guess) out.guess = bind(*guess);
  if (branch) out.branch = bind(*branch);
  if (fixed_point) out.fixed_point = bind(*fixed_point);
  out.params.clear();
  return out;
}

bool ClosedForm::is_rational() const {
  if (kind != Kind::explicit_form) return false;
  for (const auto& v : variables(bind(expr), false)) {
    if (v.is_jet() || v.is_parameter()) return false;
    if (v.is_func_deriv()) {
      for (const auto& arg : v.application()->args) {
        if (depends_on_point(arg)) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Grids

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 6) throw PreconditionError("grid needs x0,x1,y0,y1,nx,ny");
  GridSpec g;
  try {
    g.x0 = std::stod(parts[0]);
    g.x1 = std::stod(parts[1]);
    g.y0 = std::stod(parts[2]);
    g.y1 = std::stod(parts[3]);
    g.nx = std::stoi(parts[4]);
    g.ny = std::stoi(parts[5]);
  } catch (const std::exception&) {
    throw PreconditionError("malformed grid '" + std::string(text) + "'");
  }
  if (g.nx < 1 || g.ny < 1) throw PreconditionError("grid node counts must be positive");
  return g;
}

GridSpec GridSpec::from_environment() {
  if (const char* env = std::getenv("JETLIE_GRID"); env && *env) return parse(env);
  return {};
}

// ---------------------------------------------------------------------------
// Jets of a closed form

JetEvaluator::JetEvaluator(const ClosedForm& cf, int order) : cf_(cf.bound()), order_(order) {
  if (order < 0 || order > 3) throw PreconditionError("jet order of a closed form must be 0..3");
  if (cf_.kind == ClosedForm::Kind::explicit_form) {
    for (const auto& v : variables(cf_.expr, true)) {
      if (v.is_jet()) throw PreconditionError("explicit closed form depends on u or its jets");
      if (v.is_parameter()) throw PreconditionError("unbound parameter " + v.str());
    }
    jets_[{0, 0}] = cf_.expr;
    for (int k = 1; k <= order; ++k) {
      for (int i = k; i >= 0; --i) {
        const int j = k - i;
        jets_[{i, j}] = i > 0 ? differentiate(jets_[{i - 1, j}], kX) : differentiate(jets_[{i, j - 1}], kY);
      }
    }
    return;
  }
  if (!cf_.guess) throw PreconditionError("implicit closed form needs a starting guess");
  for (const auto& v : variables(cf_.expr, true)) {
    if (v.is_jet() && v != kU) throw PreconditionError("implicit relation depends on jets of u");
    if (v.is_parameter()) throw PreconditionError("unbound parameter " + v.str());
  }
  relation_u_ = differentiate(cf_.expr, kU);
  if (relation_u_.is_zero()) throw PreconditionError("implicit relation does not involve u");
  jets_[{0, 0}] = JetExpr(kU);
  if (order == 0) return;
  jets_[{1, 0}] = -differentiate(cf_.expr, kX) / relation_u_;
  jets_[{0, 1}] = -differentiate(cf_.expr, kY) / relation_u_;
  // Total derivatives along the solution: d/dx = d_x + u_x d_u.
  auto along = [&](const JetExpr& e, bool in_x) {
    const Variable& v = in_x ? kX : kY;
    return differentiate(e, v) + jets_[{in_x ? 1 : 0, in_x ? 0 : 1}] * differentiate(e, kU);
  };
  for (int k = 2; k <= order; ++k) {
    for (int i = k; i >= 0; --i) {
      const int j = k - i;
      jets_[{i, j}] = i > 0 ? along(jets_[{i - 1, j}], true) : along(jets_[{i, j - 1}], false);
    }
  }
  // The symbolic jets above grow quickly and lose digits when evaluated, so at()
  // works from the partials of R instead.
  partials_[{0, 0, 0}] = cf_.expr;
  for (int n = 1; n <= order; ++n) {
    for (int a = n; a >= 0; --a) {
      for (int b = n - a; b >= 0; --b) {
        const int c = n - a - b;
        if (a > 0) partials_[{a, b, c}] = differentiate(partials_.at({a - 1, b, c}), kX);
        else if (b > 0) partials_[{a, b, c}] = differentiate(partials_.at({a, b - 1, c}), kY);
        else partials_[{a, b, c}] = differentiate(partials_.at({a, b, c - 1}), kU);
      }
    }
  }
}

const JetExpr& JetEvaluator::jet(int i, int j) const {
  auto it = jets_.find({i, j});
  if (it == jets_.end()) throw PreconditionError("jet above the prepared order");
  return it->second;
}

double JetEvaluator::solve(double x, double y) const {
  NumericAssignment a{{kX, x}, {kY, y}};
  double u = checked(eval_numeric(*cf_.guess, a), "starting guess");
  constexpr int kMaxIterations = 100;
  constexpr double kTol = 1e-12;
  bool converged = false;
  if (cf_.fixed_point) {
    double damping = 1.0;
    double last_step = INFINITY;
    for (int it = 0; it < kMaxIterations; ++it) {
      a[kU] = u;
      const double target = checked(eval_numeric(*cf_.fixed_point, a), "fixed-point map");
      const double step = target - u;
      if (std::abs(step) > std::abs(last_step)) damping = 0.5;
      last_step = step;
      u += damping * step;
      if (std::abs(step) <= kTol * std::max(1.0, std::abs(u))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw EvaluationError("fixed-point iteration did not converge");
    // Two Newton steps on R = u - G take the iterate to working precision.
    for (int it = 0; it < 2; ++it) {
      a[kU] = u;
      const double ru = eval_numeric(relation_u_, a);
      if (ru == 0.0) break;
      u = checked(u - eval_numeric(cf_.expr, a) / ru, "Newton iterate");
    }
  } else {
    for (int it = 0; it < kMaxIterations; ++it) {
      a[kU] = u;
      const double r = eval_numeric(cf_.expr, a);
      const double ru = eval_numeric(relation_u_, a);
      if (ru == 0.0) throw EvaluationError("implicit relation is singular in u");
      const double step = r / ru;
      u = checked(u - step, "Newton iterate");
      if (std::abs(step) <= kTol * std::max(1.0, std::abs(u))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw EvaluationError("Newton iteration did not converge");
  }
  if (cf_.branch) {
    a[kU] = u;
    if (!(eval_numeric(*cf_.branch, a) > 0)) throw EvaluationError("solution is off the selected branch");
  }
  return u;
}

NumericAssignment JetEvaluator::at(double x, double y) const {
  NumericAssignment a{{kX, x}, {kY, y}};
  if (cf_.kind == ClosedForm::Kind::explicit_form) {
    a[kU] = checked(eval_numeric(cf_.expr, a), "u");
    for (const auto& [ij, e] : jets_) {
      if (ij.first + ij.second == 0) continue;
      a[Variable::jet(ij.first, ij.second)] = checked(eval_numeric(e, a), "jet");
    }
    return a;
  }
  a[kU] = solve(x, y);

  // Taylor coefficients of u about (x, y) from R(x + dx, y + dy, u + du) = 0,
  // one total degree at a time. Series are indexed [i][j] for dx^i dy^j.
  constexpr int N = 4;
  using Series = std::array<std::array<double, N>, N>;
  const int order = order_;
  auto multiply = [&](const Series& p, const Series& q) {
    Series r{};
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j)
        for (int k = 0; i + k <= order; ++k)
          for (int l = 0; i + j + k + l <= order; ++l) r[i + k][j + l] += p[i][j] * q[k][l];
    return r;
  };
  std::map<std::array<int, 3>, double> d;
  for (const auto& [abc, e] : partials_) d[abc] = checked(eval_numeric(e, a), "partial of the relation");
  const double ru = d.at({0, 0, 1});
  if (ru == 0.0) throw EvaluationError("implicit relation is singular in u");
  const double factorial[] = {1, 1, 2, 6};

  Series du{};
  for (int n = 1; n <= order; ++n) {
    Series total{};
    Series du_pow{};
    du_pow[0][0] = 1;
    for (int c = 0; c <= n; ++c) {
      if (c > 0) du_pow = multiply(du_pow, du);
      for (int aa = 0; aa + c <= n; ++aa) {
        for (int bb = 0; aa + bb + c <= n; ++bb) {
          if (aa + bb + c == 0) continue;
          const double coeff = d.at({aa, bb, c}) / (factorial[aa] * factorial[bb] * factorial[c]);
          for (int i = 0; i + aa <= n; ++i)
            for (int j = 0; i + j + aa + bb <= n; ++j) total[i + aa][j + bb] += coeff * du_pow[i][j];
        }
      }
    }
    for (int i = 0; i <= n; ++i) du[i][n - i] = -total[i][n - i] / ru;
  }
  for (int n = 1; n <= order; ++n) {
    for (int i = 0; i <= n; ++i) {
      a[Variable::jet(i, n - i)] = checked(du[i][n - i] * factorial[i] * factorial[n - i], "jet");
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Residuals and geometry

namespace {

struct PointValues {
  double p, q, s, hess;
};

PointValues point_values(const NumericAssignment& a) {
  const double x = a.at(kX), y = a.at(kY), u = a.at(kU);
  const double p = a.at(Variable::jet(1, 0)), q = a.at(Variable::jet(0, 1));
  const double r = a.at(Variable::jet(2, 0)), m = a.at(Variable::jet(1, 1)), t = a.at(Variable::jet(0, 2));
  return {p, q, x * p + y * q - u, r * t - m * m};
}

bool guarded(const PointValues& v, const Guard& g) {
  return std::abs(v.s) > g.min_support && std::abs(v.hess) > g.min_hessian;
}

}  // namespace

JetExpr symbolic_pde_residual(const ClosedForm& cf, const Rational& alpha) {
  if (!cf.is_rational()) throw PreconditionError("symbolic residual needs an explicit rational closed form");
  JetEvaluator ev(cf, 2);
  Substitution s;
  s.bind(Variable::parameter("alpha"), JetExpr(alpha));
  s.bind(kU, ev.jet(0, 0));
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; i + j <= 2; ++j) {
      if (i + j > 0) s.bind(Variable::jet(i, j), ev.jet(i, j));
    }
  }
  return substitute(titeica_operator(), s);
}

ResidualReport pde_residual(const ClosedForm& cf, const Rational& alpha, ResidualMode mode, const GridSpec& grid) {
  ResidualReport rep;
  rep.mode = mode;
  if (mode == ResidualMode::symbolic) {
    rep.residual = symbolic_pde_residual(cf, alpha);
    rep.passed = rep.residual->is_zero();
    return rep;
  }
  const JetEvaluator ev(cf, 2);
  const double a = alpha.get_d();
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      PointValues v;
      try {
        v = point_values(ev.at(grid.x_at(i), grid.y_at(j)));
      } catch (const EvaluationError&) {
        ++rep.skipped;
        continue;
      }
      if (!guarded(v, grid.guard)) {
        ++rep.skipped;
        continue;
      }
      const double rhs = a * std::pow(v.s, 4);
      const double res = std::abs(v.hess - rhs);
      rep.max_abs = std::max(rep.max_abs, res);
      rep.max_scaled = std::max(rep.max_scaled, res / std::max({1.0, std::abs(v.hess), std::abs(rhs)}));
      ++rep.evaluated;
    }
  }
  if (rep.evaluated == 0) throw EvaluationError("the guard excludes every grid node");
  rep.passed = rep.max_scaled < grid.tolerance;
  return rep;
}

GeometryReport geometry_eval(const ClosedForm& cf, double x, double y) {
  const PointValues v = point_values(JetEvaluator(cf, 2).at(x, y));
  const double w = 1 + v.p * v.p + v.q * v.q;
  GeometryReport g;
  g.K = v.hess / (w * w);
  g.d = std::abs(v.s) / std::sqrt(w);
  if (g.d == 0.0) throw EvaluationError("tangent plane passes through the origin (d = 0)");
  g.I = g.K / std::pow(g.d, 4);
  return g;
}

// ---------------------------------------------------------------------------
// Orbits

namespace {

/// The map g_{-eps} pulled back onto (x, y, u), and the inverse action on values.
struct Flow {
  Substitution pullback;
  JetExpr scale = 1;  // u_new = scale * f(pulled back) + shift
  JetExpr shift;
  bool moves_u_argument = false;
};

Flow make_flow(int generator, const Rational& eps) {
  const JetExpr x = kX, y = kY, u = kU, e = eps;
  const JetExpr E = apply_function("exp", {e});
  Flow f;
  switch (generator) {
    case 1:
      f.pullback.bind(kX, x / E).bind(kU, E * u);
      f.scale = JetExpr(1) / E;
      break;
    case 2:
      f.pullback.bind(kY, y / E).bind(kU, E * u);
      f.scale = JetExpr(1) / E;
      break;
    case 3:
      f.pullback.bind(kX, x - e * y);
      break;
    case 4:
      f.pullback.bind(kX, x - e * u);
      f.moves_u_argument = true;
      break;
    case 5:
      f.pullback.bind(kY, y - e * x);
      break;
    case 6:
      f.pullback.bind(kY, y - e * u);
      f.moves_u_argument = true;
      break;
    case 7:
      f.pullback.bind(kU, u - e * x);
      f.shift = e * x;
      break;
    case 8:
      f.pullback.bind(kU, u - e * y);
      f.shift = e * y;
      break;
    default:
      throw PreconditionError("generator index must be 1..8");
  }
  return f;
}

/// Substitution restricted to x and y.
Substitution planar_part(const Substitution& s) {
  Substitution out;
  for (const auto& [v, img] : s.variables) {
    if (v != kU) out.bind(v, img);
  }
  return out;
}

}  // namespace

ClosedForm orbit_transform(const ClosedForm& cf, int generator, const Rational& eps) {
  const Flow flow = make_flow(generator, eps);
  if (eps == 0) return cf;
  const ClosedForm b = cf.bound();
  auto carry_value = [&](const JetExpr& g) {
    // Value transform of an explicit u(x, y) under a flow that leaves u out of the arguments.
    return flow.scale * substitute(g, planar_part(flow.pullback)) + flow.shift;
  };
  if (b.kind == ClosedForm::Kind::explicit_form) {
    if (!flow.moves_u_argument) return ClosedForm::explicit_solution(carry_value(b.expr));
    ClosedForm out;
    out.kind = ClosedForm::Kind::implicit_form;
    out.fixed_point = substitute(b.expr, flow.pullback);
    out.expr = JetExpr(kU) - *out.fixed_point;
    out.guess = b.expr;
    return out;
  }
  ClosedForm out;
  out.kind = ClosedForm::Kind::implicit_form;
  out.expr = substitute(b.expr, flow.pullback);
  if (b.branch) out.branch = substitute(*b.branch, flow.pullback);
  if (b.guess) {
    if (flow.moves_u_argument) {
      Substitution s;
      for (const auto& [v, img] : flow.pullback.variables) s.bind(v, substitute(img, Substitution().bind(kU, *b.guess)));
      out.guess = substitute(*b.guess, s);
    } else {
      out.guess = carry_value(*b.guess);
    }
  }
  if (b.fixed_point) {
    const JetExpr g = substitute(*b.fixed_point, flow.pullback);
    out.fixed_point = flow.moves_u_argument ? g : flow.scale * g + flow.shift;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ansatz reduction

namespace {

Variable ansatz_symbol(int derivative_order) {
  const std::vector<JetExpr> arg{JetExpr(Variable::parameter("t"))};
  switch (derivative_order) {
    case 0:
      return apply_function("psi", arg);
    case 1:
      return apply_function_deriv("psi", arg, {0});
    case 2:
      return apply_function_deriv("psi", arg, {0, 0});
    default:
      throw PreconditionError("ansatz derivatives are available up to order two");
  }
}

}  // namespace

JetExpr ansatz_value(int derivative_order) { return ansatz_symbol(derivative_order); }

namespace {

/// q(t) with q(t_expr) = c, for c polynomial in x and y.
JetExpr express_in(const JetExpr& c, const Polynomial& t_expr) {
  const Variable xy[] = {kX, kY};
  const JetExpr t = Variable::parameter("t");
  const Monomial t_lead = t_expr.leading_term().monomial;
  const Rational t_lc = t_expr.leading_term().coeff;
  const int t_deg = t_lead.degree();
  JetExpr rest = c, q;
  while (!rest.is_zero()) {
    const auto coeffs = collect(rest, xy);
    Polynomial shape;
    for (const auto& [m, coef] : coeffs) shape += Polynomial(m, 1);
    const Monomial lead = shape.leading_term().monomial;
    if (lead.is_one()) return q + rest;
    if (lead.degree() % t_deg != 0) throw PreconditionError("reduced equation is not a function of the ansatz variable");
    const int k = lead.degree() / t_deg;
    const Polynomial tk = t_expr.pow(k);
    if (tk.leading_term().monomial != lead) {
      throw PreconditionError("reduced equation is not a function of the ansatz variable");
    }
    Rational lc_k = 1;
    for (int n = 0; n < k; ++n) lc_k *= t_lc;
    const JetExpr factor = coeffs.at(lead) / JetExpr(lc_k);
    q += factor * t.pow(k);
    rest -= factor * JetExpr(tk);
  }
  return q;
}

}  // namespace

JetExpr reduce_ansatz(const JetExpr& t_expr, const JetExpr& F) {
  if (!t_expr.is_polynomial()) throw PreconditionError("ansatz variable must be polynomial in x, y");
  for (const auto& v : variables(t_expr, true)) {
    if (v != kX && v != kY) throw PreconditionError("ansatz variable must be polynomial in x, y");
  }
  if (t_expr.is_constant()) throw PreconditionError("ansatz variable is constant");
  if (jet_order(F) > 2) throw PreconditionError("equation of order above two");

  const JetExpr tx = differentiate(t_expr, kX), ty = differentiate(t_expr, kY);
  const JetExpr txx = differentiate(tx, kX), txy = differentiate(tx, kY), tyy = differentiate(ty, kY);
  const JetExpr p0 = ansatz_value(0), p1 = ansatz_value(1), p2 = ansatz_value(2);
  Substitution s;
  s.bind(kU, p0)
      .bind(Variable::jet(1, 0), p1 * tx)
      .bind(Variable::jet(0, 1), p1 * ty)
      .bind(Variable::jet(2, 0), p2 * tx * tx + p1 * txx)
      .bind(Variable::jet(1, 1), p2 * tx * ty + p1 * txy)
      .bind(Variable::jet(0, 2), p2 * ty * ty + p1 * tyy);
  const JetExpr reduced = substitute(F, s);

  const Variable symbols[] = {ansatz_symbol(0), ansatz_symbol(1), ansatz_symbol(2)};
  auto rewrite = [&](const Polynomial& poly) {
    JetExpr out;
    for (const auto& [m, c] : collect(JetExpr(poly), symbols)) {
      out += express_in(c, t_expr.numerator()) * JetExpr(Polynomial(m, 1));
    }
    return out;
  };
  const JetExpr ode = rewrite(reduced.numerator()) / rewrite(reduced.denominator());
  if (!depends_on(ode, symbols[2])) {
    throw PreconditionError("degenerate ansatz: the reduced equation does not involve psi''");
  }
  return ode;
}

OdeResidual ode_residual(const JetExpr& psi, const JetExpr& ode,
                         const std::map<std::string, Rational, std::less<>>& params, const TRange& range) {
  const Variable t = Variable::parameter("t");
  Substitution fs;
  fs.bind_function("psi", {t}, psi);
  OdeResidual out;
  out.residual = substitute(substitute(ode, fs), parameter_substitution(params));
  if (out.residual.is_zero()) {
    out.symbolic_zero = out.passed = true;
    return out;
  }
  for (int k = 0; k < range.n; ++k) {
    const double tv = range.n == 1 ? range.t0 : range.t0 + (range.t1 - range.t0) * k / (range.n - 1);
    try {
      const double r = checked(eval_numeric(out.residual, {{t, tv}}), "ODE residual");
      out.max_abs = std::max(out.max_abs, std::abs(r));
      ++out.evaluated;
    } catch (const EvaluationError&) {
      ++out.skipped;
    }
  }
  out.passed = out.evaluated > 0 && out.max_abs < range.tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Rational constant_of(const JetExpr& e, const std::string& what) {
  if (!e.is_constant()) throw PreconditionError(what + " is not a constant: " + e.str());
  return e.constant_value();
}

}  // namespace

Rational CatalogEntry::alpha_value() const { return constant_of(form.bind(alpha), "alpha of " + name); }

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '|');
    if (fields.size() < 5 || fields.size() > 6) {
      throw PreconditionError("catalog line " + std::to_string(line_no) + ": expected 5 or 6 fields");
    }
    CatalogEntry entry;
    entry.name = std::string(fields[0]);
    ParseContext ctx = ParseContext::standard();
    std::map<std::string, Rational, std::less<>> params;
    if (!fields[3].empty()) {
      std::vector<std::pair<std::string, std::string_view>> raw;
      for (auto binding : split(fields[3], ',')) {
        const auto eq = binding.find('=');
        if (eq == std::string_view::npos) {
          throw PreconditionError("catalog line " + std::to_string(line_no) + ": parameter needs name=value");
        }
        raw.emplace_back(std::string(trim(binding.substr(0, eq))), trim(binding.substr(eq + 1)));
        ctx.add_parameter(raw.back().first);
      }
      for (const auto& [name, value] : raw) params[name] = constant_of(parse(value, ctx), "parameter " + name);
    }
    const JetExpr expr = parse(fields[2], ctx);
    entry.alpha = parse(fields[4], ctx);

    std::optional<JetExpr> guess, branch;
    std::optional<ResidualMode> mode;
    if (fields.size() == 6 && !fields[5].empty()) {
      for (auto opt : split(fields[5], ';')) {
        if (opt.empty()) continue;
        const auto eq = opt.find('=');
        if (eq == std::string_view::npos) {
          throw PreconditionError("catalog line " + std::to_string(line_no) + ": option needs key=value");
        }
        const auto key = trim(opt.substr(0, eq));
        const auto value = trim(opt.substr(eq + 1));
        if (key == "guess") {
          guess = parse(value, ctx);
        } else if (key == "branch") {
          branch = parse(value, ctx);
        } else if (key == "grid") {
          entry.grid = GridSpec::parse(value);
        } else if (key == "mode") {
          if (value == "symbolic") mode = ResidualMode::symbolic;
          else if (value == "numeric") mode = ResidualMode::numeric;
          else throw PreconditionError("catalog line " + std::to_string(line_no) + ": unknown mode");
        } else if (key == "note") {
          entry.note = std::string(value);
        } else {
          throw PreconditionError("catalog line " + std::to_string(line_no) + ": unknown option " + std::string(key));
        }
      }
    }
    if (fields[1] == "explicit") {
      entry.form = ClosedForm::explicit_solution(expr, params);
    } else if (fields[1] == "implicit") {
      if (!guess) throw PreconditionError("catalog line " + std::to_string(line_no) + ": implicit entry needs guess=");
      entry.form = ClosedForm::implicit_solution(expr, *guess, branch, params);
    } else {
      throw PreconditionError("catalog line " + std::to_string(line_no) + ": kind must be explicit or implicit");
    }
    entry.mode = mode.value_or(entry.form.is_rational() ? ResidualMode::symbolic : ResidualMode::numeric);
    out.push_back(std::move(entry));
  }
  return out;
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries = parse_catalog(detail::kCatalogText);
  return entries;
}

std::vector<CatalogResult> verify_catalog(const std::vector<CatalogEntry>& entries, const GridSpec& grid) {
  std::vector<CatalogResult> out;
  for (const auto& entry : entries) {
    CatalogResult r;
    r.entry = &entry;
    try {
      r.report = pde_residual(entry.form, entry.alpha_value(), entry.mode, entry.grid.value_or(grid));
      r.passed = r.report.passed;
    } catch (const Error& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conservation laws

ConservationCheck conservation_check(const ConservationLaw& cl, const JetExpr& L, const GridSpec& grid,
                                     const ClosedForm& cf, const Rational& alpha) {
  ConservationCheck out;
  out.defect = conservation_defect(cl, L);
  out.symbolic_ok = out.defect.is_zero();
  Substitution s;
  s.bind(Variable::parameter("alpha"), JetExpr(alpha));
  const JetExpr div = substitute(divergence(cl.P1, cl.P2), s);
  const JetEvaluator ev(cf, 3);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      double value;
      try {
        const NumericAssignment a = ev.at(grid.x_at(i), grid.y_at(j));
        if (!guarded(point_values(a), grid.guard)) {
          ++out.skipped;
          continue;
        }
        value = eval_numeric(div, a);
      } catch (const EvaluationError&) {
        ++out.skipped;
        continue;
      }
      out.max_abs_divergence = std::max(out.max_abs_divergence, std::abs(value));
      ++out.evaluated;
    }
  }
  out.numeric_ok = out.evaluated > 0 && out.max_abs_divergence < grid.tolerance;
  return out;
}

}  // namespace jetlie
