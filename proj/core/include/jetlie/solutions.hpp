#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetlie/errors.hpp"
#include "jetlie/jet_expr.hpp"
#include "jetlie/variational.hpp"

namespace jetlie {

/// Candidate solution of the Titeica equation.
struct ClosedForm {
  enum class Kind { explicit_form, implicit_form };

  Kind kind = Kind::explicit_form;
  /// u(x, y) for explicit forms, R(x, y, u) with R = 0 for implicit ones.
  JetExpr expr;
  /// Values of the parameters occurring in the expressions.
  std::map<std::string, Rational, std::less<>> params;
  /// Implicit only: starting value u0(x, y) for the pointwise solve.
  std::optional<JetExpr> guess;
  /// Implicit only: the solution branch is where B(x, y, u) > 0.
  std::optional<JetExpr> branch;
  /// Implicit only: G(x, y, u) with u = G(x, y, u) on the solution; when set the
  /// pointwise solve is a damped fixed-point iteration instead of Newton.
  std::optional<JetExpr> fixed_point;

  static ClosedForm explicit_solution(JetExpr u, std::map<std::string, Rational, std::less<>> params = {});
  static ClosedForm implicit_solution(JetExpr relation, JetExpr guess, std::optional<JetExpr> branch = std::nullopt,
                                      std::map<std::string, Rational, std::less<>> params = {});

  /// e with the parameter values substituted.
  JetExpr bind(const JetExpr& e) const;
  /// Copy with every parameter substituted and `params` emptied.
  ClosedForm bound() const;
  /// Explicit and free of opaque functions of x, y: the residual can be decided exactly.
  bool is_rational() const;
};

struct Guard {
  double min_support = 1e-6;  // |x u_x + y u_y - u|
  double min_hessian = 1e-9;  // |u_xx u_yy - u_xy^2|
};

struct GridSpec {
  double x0 = 0.5, x1 = 2.0;
  double y0 = 0.5, y1 = 2.0;
  int nx = 16, ny = 16;
  double tolerance = 1e-9;
  Guard guard;

  /// Parses "x0,x1,y0,y1,nx,ny". Throws PreconditionError on malformed text.
  static GridSpec parse(std::string_view text);
  /// Default grid, overridden by JETLIE_GRID when set.
  static GridSpec from_environment();

  double x_at(int i) const { return nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1); }
  double y_at(int j) const { return ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1); }
};

/// Numeric jets of a closed form.
class JetEvaluator {
 public:
  /// Prepares symbolic jets up to `order` (at most 3).
  explicit JetEvaluator(const ClosedForm& cf, int order = 2);

  /// x, y, u and every jet up to the order at (x, y). Throws EvaluationError
  /// when the point is outside the domain or the implicit solve fails.
  NumericAssignment at(double x, double y) const;
  /// Symbolic jet u_{x^i y^j}: in x, y for explicit forms, in x, y, u for implicit ones.
  const JetExpr& jet(int i, int j) const;
  int order() const noexcept { return order_; }

 private:
  double solve(double x, double y) const;

  ClosedForm cf_;
  int order_;
  std::map<std::pair<int, int>, JetExpr> jets_;
  JetExpr relation_u_;  // dR/du for the Newton solve
  /// Implicit only: partials of R keyed by derivative counts in (x, y, u).
  std::map<std::array<int, 3>, JetExpr> partials_;
};

enum class ResidualMode { symbolic, numeric };

struct ResidualReport {
  ResidualMode mode = ResidualMode::symbolic;
  /// Exact residual (symbolic mode).
  std::optional<JetExpr> residual;
  double max_abs = 0.0;
  /// max of |residual| / max(1, |u_xx u_yy - u_xy^2|, |alpha s^4|); the pass test.
  double max_scaled = 0.0;
  int evaluated = 0;
  int skipped = 0;
  bool passed = false;
};

/// u_xx u_yy - u_xy^2 - alpha (x u_x + y u_y - u)^4 on the closed form. Symbolic
/// mode needs a rational explicit form; numeric mode evaluates at the grid
/// nodes that pass the guard and throws EvaluationError if none does. Numeric
/// residuals are compared with the tolerance after scaling by the size of the
/// two sides, which only matters where they exceed 1.
ResidualReport pde_residual(const ClosedForm& cf, const Rational& alpha, ResidualMode mode,
                            const GridSpec& grid = GridSpec::from_environment());

/// The exact residual expression for a rational explicit form.
JetExpr symbolic_pde_residual(const ClosedForm& cf, const Rational& alpha);

struct GeometryReport {
  double K = 0.0;  // Gauss curvature
  double d = 0.0;  // distance from the origin to the tangent plane
  double I = 0.0;  // K / d^4
};

/// Throws EvaluationError when d vanishes at the point.
GeometryReport geometry_eval(const ClosedForm& cf, double x, double y);

/// Image of the solution under the flow of X_generator (1..8) at parameter eps.
/// Generators 4 and 6 turn explicit forms into implicit fixed-point forms.
ClosedForm orbit_transform(const ClosedForm& cf, int generator, const Rational& eps);

/// Reduced ODE for u = psi(t) with t = t_expr(x, y), written in t (a parameter)
/// and the symbols psi(t), psi_1(t), psi_11(t). Throws PreconditionError when a
/// coefficient is not a polynomial in t_expr, or when the reduction loses
/// psi'' (degenerate ansatz).
JetExpr reduce_ansatz(const JetExpr& t_expr, const JetExpr& F);

/// psi(t), psi'(t), psi''(t) symbols used by reduce_ansatz.
JetExpr ansatz_value(int derivative_order);

struct OdeResidual {
  JetExpr residual;
  bool symbolic_zero = false;
  double max_abs = 0.0;
  int evaluated = 0;
  int skipped = 0;
  bool passed = false;
};

struct TRange {
  double t0 = 0.5, t1 = 4.0;
  int n = 33;
  double tolerance = 1e-9;
};

/// Substitutes psi (an expression in the parameter t) and the parameter values
/// into the ODE. When the result is not exactly zero it is sampled on `range`.
OdeResidual ode_residual(const JetExpr& psi, const JetExpr& ode,
                         const std::map<std::string, Rational, std::less<>>& params, const TRange& range = {});

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  std::string name;
  ClosedForm form;
  /// alpha as an expression in the entry's parameters.
  JetExpr alpha;
  ResidualMode mode = ResidualMode::symbolic;
  std::optional<GridSpec> grid;
  std::string note;

  Rational alpha_value() const;
};

/// One entry per line: name | kind | expression | params | alpha | options.
/// kind is explicit or implicit; params "a=2, C=3"; options separated by ';':
/// guess=<expr>, branch=<expr>, grid=x0,x1,y0,y1,nx,ny, mode=symbolic|numeric,
/// note=<text>. Blank lines and lines starting with '#' are ignored.
std::vector<CatalogEntry> parse_catalog(std::string_view text);

/// The built-in list of known solutions.
const std::vector<CatalogEntry>& builtin_catalog();

struct CatalogResult {
  const CatalogEntry* entry = nullptr;
  ResidualReport report;
  std::string error;
  bool passed = false;
};

std::vector<CatalogResult> verify_catalog(const std::vector<CatalogEntry>& entries,
                                          const GridSpec& grid = GridSpec::from_environment());

// ---------------------------------------------------------------------------
// Conservation laws on solutions

struct ConservationCheck {
  JetExpr defect;  // Div P - kappa Q E(L)
  bool symbolic_ok = false;
  double max_abs_divergence = 0.0;
  int evaluated = 0;
  int skipped = 0;
  bool numeric_ok = false;
};

/// Exact identity check plus |Div P| on the 3-jet of the closed form.
ConservationCheck conservation_check(const ConservationLaw& cl, const JetExpr& L, const GridSpec& grid,
                                     const ClosedForm& cf, const Rational& alpha);

}  // namespace jetlie
