#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetlie/errors.hpp"
#include "jetlie/jet_calculus.hpp"

namespace jetlie {

/// xu_x + yu_y - u
JetExpr support_function();
/// u_xx u_yy - u_xy^2 - alpha (xu_x + yu_y - u)^4 with alpha a symbolic parameter.
JetExpr titeica_operator();

// ---------------------------------------------------------------------------
// Invariance

/// pr^(2) X (F), optionally reduced modulo F = 0.
JetExpr symmetry_residual(const VectorField& X, const JetExpr& F, bool reduce);

/// Eliminate `pivot` from e using F = c*pivot + r = 0. The result is c^k e with
/// pivot replaced by -r/c and k >= 0 minimal. Throws PreconditionError when F
/// is not of degree one in pivot.
JetExpr on_surface_reduce(const JetExpr& e, const JetExpr& F, const Variable& pivot = Variable::jet(0, 2));

/// Linear homogeneous equations for opaque zeta, eta, phi of (x, y, u) whose
/// solutions are the infinitesimal point symmetries of F = 0. Equations are
/// scaled to be primitive and deduplicated.
std::vector<JetExpr> determining_system(const JetExpr& F);

/// Substitution replacing zeta, eta, phi by the coefficients of X, viewed as
/// functions of their formal arguments x, y, u.
Substitution coefficient_binding(const VectorField& X);

/// Equations of the system that do not vanish under `coefficient_binding(X)`.
std::vector<JetExpr> unsatisfied_equations(const std::vector<JetExpr>& system, const VectorField& X);

// ---------------------------------------------------------------------------
// Lie algebras

/// [X, Y] with components X(coeff_Y) - Y(coeff_X).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

class NotClosedError : public PreconditionError {
 public:
  NotClosedError(std::size_t i, std::size_t j, const std::string& what)
      : PreconditionError(what), i_(i), j_(j) {}
  std::pair<std::size_t, std::size_t> pair() const noexcept { return {i_, j_}; }

 private:
  std::size_t i_, j_;
};

class LieAlgebra {
 public:
  /// Throws PreconditionError if the fields are linearly dependent or have
  /// coefficients that are not polynomial with constant rational coefficients.
  LieAlgebra(std::vector<VectorField> basis, std::vector<std::string> names);

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<VectorField>& basis() const noexcept { return basis_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Sub-basis by 0-based indices, keeping names.
  LieAlgebra subalgebra(const std::vector<std::size_t>& indices) const;

  /// Coordinates of X in the basis, or nullopt if X is outside the span.
  std::optional<std::vector<Rational>> coordinates(const VectorField& X) const;
  VectorField combination(const std::vector<Rational>& coords) const;

 private:
  std::vector<VectorField> basis_;
  std::vector<std::string> names_;
};

/// X1..X8 of the symmetry algebra of the Titeica equation.
LieAlgebra titeica_symmetry_algebra();
/// Y1..Y4 (= X1, X2, X3, X5): the variational symmetries.
LieAlgebra titeica_variational_algebra();

/// entries[i][j] holds the coordinates of [X_i, X_j], nullopt when outside the span.
struct StructureTable {
  std::vector<std::vector<std::optional<std::vector<Rational>>>> entries;
};

StructureTable structure_table(const LieAlgebra& A);

/// Render coordinates as a combination of basis names, e.g. "X2 - X1" or "0".
std::string format_combination(const std::vector<Rational>& coords, const std::vector<std::string>& names);

/// Dimensions of the derived series g, [g,g], ... until it stabilizes. Throws
/// NotClosedError naming the first pair whose bracket leaves the span.
std::vector<std::size_t> derived_series(const LieAlgebra& A);

// ---------------------------------------------------------------------------
// Invariant forms along the subalgebra chain X8 < {X3,X8} < {X3,X7} < {X1,X3,X7} < {X1,X2,X3,X7}

struct InvariantFormCheck {
  int stage = 0;
  JetExpr F;
  std::vector<std::string> generators;
  /// Residual of each generator, reduced modulo F = 0.
  std::vector<JetExpr> residuals;
  bool invariant = false;
};

/// Monge-Ampere form u_xx u_yy - u_xy^2 - H claimed for the stage (1..5).
JetExpr stage_form(int stage);
/// 0-based indices of the stage's generators in titeica_symmetry_algebra().
std::vector<std::size_t> stage_generators(int stage);
/// Check stage_form(stage), or `form` when given, against the stage's generators.
InvariantFormCheck verify_invariant_form(int stage, const std::optional<JetExpr>& form = std::nullopt);

// ---------------------------------------------------------------------------
// Adjoint representation

struct AdjointResult {
  std::size_t source = 0;
  std::size_t target = 0;
  double epsilon = 0.0;
  std::vector<double> coordinates;
  int terms = 0;
};

/// Coordinates of sum_n (-eps)^n / n! (ad X_i)^n X_j, truncated once a term's
/// max-norm drops below tol.
AdjointResult adjoint_series(const LieAlgebra& A, std::size_t i, std::size_t j, double eps, double tol = 1e-15);

}  // namespace jetlie
