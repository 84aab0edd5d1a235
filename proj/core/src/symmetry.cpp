#include "jetlie/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace jetlie {

namespace {

const JetExpr kX = Variable::x();
const JetExpr kY = Variable::y();
const JetExpr kU = Variable::u();

JetExpr hessian() {
  return JetExpr(Variable::jet(2, 0)) * JetExpr(Variable::jet(0, 2)) - JetExpr(Variable::jet(1, 1)).pow(2);
}

}  // namespace

JetExpr support_function() {
  return kX * JetExpr(Variable::jet(1, 0)) + kY * JetExpr(Variable::jet(0, 1)) - kU;
}

JetExpr titeica_operator() {
  return hessian() - JetExpr(Variable::parameter("alpha")) * support_function().pow(4);
}

// ---------------------------------------------------------------------------
// Invariance

JetExpr on_surface_reduce(const JetExpr& e, const JetExpr& F, const Variable& pivot) {
  const Polynomial& f = F.numerator();
  if (f.degree_in(pivot) != 1 || F.denominator().contains(pivot)) {
    throw PreconditionError("equation is not of degree one in " + pivot.str());
  }
  const auto fc = f.coefficients_in(pivot);
  const Polynomial& c = fc[1];
  const Polynomial minus_r = -fc[0];

  auto reduce = [&](const Polynomial& p) {
    const int K = p.degree_in(pivot);
    if (K == 0) return p;
    const auto pc = p.coefficients_in(pivot);
    Polynomial out;
    Polynomial rk(1);
    for (int k = 0; k <= K; ++k) {
      if (!pc[static_cast<std::size_t>(k)].is_zero()) out += pc[static_cast<std::size_t>(k)] * rk * c.pow(K - k);
      rk = rk * minus_r;
    }
    for (int k = 0; k < K && !out.is_zero(); ++k) {
      auto q = Polynomial::divide_exact(out, c);
      if (!q) break;
      out = std::move(*q);
    }
    return out;
  };

  if (e.denominator().contains(pivot)) {
    Polynomial d = reduce(e.denominator());
    if (d.is_zero()) throw DivisionByZero("denominator vanishes on the equation");
    return JetExpr::fraction(reduce(e.numerator()), std::move(d));
  }
  return JetExpr::fraction(reduce(e.numerator()), e.denominator());
}

JetExpr symmetry_residual(const VectorField& X, const JetExpr& F, bool reduce) {
  JetExpr r = apply_prolongation(prolong2(X), F);
  return reduce ? on_surface_reduce(r, F) : r;
}

namespace {

/// Scale a linear form in function-derivative symbols to be primitive.
Polynomial normalize_linear(const Polynomial& p) {
  std::vector<Variable> fvars;
  for (const auto& v : p.variables()) {
    if (v.is_func_deriv()) fvars.push_back(v);
  }
  JetExpr e(p);
  Polynomial g;
  for (const auto& [mono, coeff] : collect(e, fvars)) g = gcd(g, coeff.numerator());
  if (g.is_zero()) return p.primitive();
  return Polynomial::divide_exact(p, g).value_or(p).primitive();
}

void push_unique(std::vector<JetExpr>& eqs, const Polynomial& p) {
  if (p.is_zero()) return;
  JetExpr e(normalize_linear(p));
  if (std::find(eqs.begin(), eqs.end(), e) == eqs.end()) eqs.push_back(std::move(e));
}

}  // namespace

std::vector<JetExpr> determining_system(const JetExpr& F) {
  const std::vector<JetExpr> xyu{kX, kY, kU};
  VectorField X{JetExpr(apply_function("zeta", xyu)), JetExpr(apply_function("eta", xyu)),
                JetExpr(apply_function("phi", xyu))};
  JetExpr r = symmetry_residual(X, F, true);
  std::vector<Variable> jets;
  for (const auto& v : variables(r, false)) {
    if (v.is_jet() && v.order() >= 1) jets.push_back(v);
  }
  std::vector<JetExpr> eqs;
  for (const auto& [mono, coeff] : collect(JetExpr(r.numerator()), jets)) push_unique(eqs, coeff.numerator());
  return eqs;
}

Substitution coefficient_binding(const VectorField& X) {
  const std::vector<Variable> formals{Variable::x(), Variable::y(), Variable::u()};
  Substitution s;
  s.bind_function("zeta", formals, X.zeta);
  s.bind_function("eta", formals, X.eta);
  s.bind_function("phi", formals, X.phi);
  return s;
}

std::vector<JetExpr> unsatisfied_equations(const std::vector<JetExpr>& system, const VectorField& X) {
  const Substitution s = coefficient_binding(X);
  std::vector<JetExpr> out;
  for (const auto& eq : system) {
    JetExpr r = substitute(eq, s);
    if (!r.is_zero()) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lie algebras

namespace {

JetExpr apply_field(const VectorField& X, const JetExpr& f) {
  JetExpr out;
  const std::pair<Variable, const JetExpr*> parts[] = {
      {Variable::x(), &X.zeta}, {Variable::y(), &X.eta}, {Variable::u(), &X.phi}};
  for (const auto& [v, c] : parts) {
    if (!c->is_zero()) out += *c * differentiate(f, v);
  }
  return out;
}

using Key = std::pair<int, Monomial>;
using SparseVector = std::map<Key, Rational>;

std::optional<SparseVector> flatten(const VectorField& X) {
  SparseVector out;
  const std::vector<Variable> xyu{Variable::x(), Variable::y(), Variable::u()};
  int slot = 0;
  for (const JetExpr* c : {&X.zeta, &X.eta, &X.phi}) {
    if (!c->is_polynomial()) return std::nullopt;
    for (const auto& t : c->numerator().terms()) {
      for (const auto& [v, e] : t.monomial.factors()) {
        if (std::find(xyu.begin(), xyu.end(), v) == xyu.end()) return std::nullopt;
      }
      out[{slot, t.monomial}] = t.coeff;
    }
    ++slot;
  }
  return out;
}

/// Row-reduced echelon data for expressing targets in a fixed set of columns.
class SpanSolver {
 public:
  explicit SpanSolver(const std::vector<SparseVector>& columns) : n_(columns.size()) {
    std::map<Key, std::size_t> index;
    for (const auto& col : columns) {
      for (const auto& [k, v] : col) index.emplace(k, 0);
    }
    std::size_t r = 0;
    for (auto& [k, idx] : index) idx = r++;
    keys_ = std::move(index);
    rows_.assign(keys_.size(), std::vector<Rational>(n_, Rational(0)));
    for (std::size_t j = 0; j < n_; ++j) {
      for (const auto& [k, v] : columns[j]) rows_[keys_.at(k)][j] = v;
    }
  }

  /// Solve sum_j c_j col_j = target exactly; nullopt if inconsistent.
  std::optional<std::vector<Rational>> solve(const SparseVector& target) const {
    std::vector<std::vector<Rational>> m = rows_;
    std::vector<Rational> rhs(m.size(), Rational(0));
    for (const auto& [k, v] : target) {
      auto it = keys_.find(k);
      if (it == keys_.end()) return std::nullopt;
      rhs[it->second] = v;
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n_ && row < m.size(); ++col) {
      std::size_t p = row;
      while (p < m.size() && m[p][col] == 0) ++p;
      if (p == m.size()) continue;
      std::swap(m[p], m[row]);
      std::swap(rhs[p], rhs[row]);
      for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
        if (r2 == row || m[r2][col] == 0) continue;
        const Rational f = m[r2][col] / m[row][col];
        for (std::size_t c = col; c < n_; ++c) m[r2][c] -= f * m[row][c];
        rhs[r2] -= f * rhs[row];
      }
      pivot_col.push_back(col);
      ++row;
    }
    for (std::size_t r2 = row; r2 < m.size(); ++r2) {
      if (rhs[r2] != 0) return std::nullopt;
    }
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = rhs[k] / m[k][pivot_col[k]];
    return x;
  }

 private:
  std::size_t n_;
  std::map<Key, std::size_t> keys_;
  std::vector<std::vector<Rational>> rows_;
};

/// Rank and a maximal independent subset of the given coordinate vectors.
std::vector<std::vector<Rational>> independent_subset(const std::vector<std::vector<Rational>>& vs) {
  std::vector<std::vector<Rational>> echelon, chosen;
  for (const auto& v : vs) {
    std::vector<Rational> w = v;
    for (const auto& e : echelon) {
      std::size_t lead = 0;
      while (e[lead] == 0) ++lead;
      if (w[lead] != 0) {
        const Rational f = w[lead] / e[lead];
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= f * e[k];
      }
    }
    if (std::all_of(w.begin(), w.end(), [](const Rational& q) { return q == 0; })) continue;
    echelon.push_back(w);
    chosen.push_back(v);
    // Keep leading positions distinct: eliminate the new lead from earlier rows.
    std::size_t lead = 0;
    while (w[lead] == 0) ++lead;
    for (std::size_t r = 0; r + 1 < echelon.size(); ++r) {
      if (echelon[r][lead] != 0) {
        const Rational f = echelon[r][lead] / w[lead];
        for (std::size_t k = 0; k < w.size(); ++k) echelon[r][k] -= f * w[k];
      }
    }
  }
  return chosen;
}

}  // namespace

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  return {apply_field(X, Y.zeta) - apply_field(Y, X.zeta), apply_field(X, Y.eta) - apply_field(Y, X.eta),
          apply_field(X, Y.phi) - apply_field(Y, X.phi)};
}

LieAlgebra::LieAlgebra(std::vector<VectorField> basis, std::vector<std::string> names)
    : basis_(std::move(basis)), names_(std::move(names)) {
  if (names_.size() != basis_.size()) throw PreconditionError("basis and names differ in length");
  std::vector<SparseVector> cols;
  for (const auto& X : basis_) {
    auto f = flatten(X);
    if (!f) throw PreconditionError("basis field is not polynomial in x, y, u with rational coefficients");
    cols.push_back(std::move(*f));
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<SparseVector> prefix(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(k));
    if (SpanSolver(prefix).solve(cols[k]) && !cols[k].empty()) {
      throw PreconditionError("basis fields are linearly dependent");
    }
    if (cols[k].empty()) throw PreconditionError("zero field in basis");
  }
}

LieAlgebra LieAlgebra::subalgebra(const std::vector<std::size_t>& indices) const {
  std::vector<VectorField> b;
  std::vector<std::string> n;
  for (auto i : indices) {
    b.push_back(basis_.at(i));
    n.push_back(names_.at(i));
  }
  return LieAlgebra(std::move(b), std::move(n));
}

std::optional<std::vector<Rational>> LieAlgebra::coordinates(const VectorField& X) const {
  auto target = flatten(X);
  if (!target) return std::nullopt;
  std::vector<SparseVector> cols;
  for (const auto& B : basis_) cols.push_back(*flatten(B));
  return SpanSolver(cols).solve(*target);
}

VectorField LieAlgebra::combination(const std::vector<Rational>& coords) const {
  VectorField out;
  for (std::size_t k = 0; k < basis_.size() && k < coords.size(); ++k) {
    if (coords[k] != 0) out = out + JetExpr(coords[k]) * basis_[k];
  }
  return out;
}

LieAlgebra titeica_symmetry_algebra() {
  const JetExpr z;
  return LieAlgebra(
      {
          {kX, z, -kU},  // x d/dx - u d/du
          {z, kY, -kU},  // y d/dy - u d/du
          {kY, z, z},    // y d/dx
          {kU, z, z},    // u d/dx
          {z, kX, z},    // x d/dy
          {z, kU, z},    // u d/dy
          {z, z, kX},    // x d/du
          {z, z, kY},    // y d/du
      },
      {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8"});
}

LieAlgebra titeica_variational_algebra() {
  LieAlgebra g = titeica_symmetry_algebra();
  return LieAlgebra({g.basis()[0], g.basis()[1], g.basis()[2], g.basis()[4]}, {"Y1", "Y2", "Y3", "Y4"});
}

StructureTable structure_table(const LieAlgebra& A) {
  StructureTable t;
  const auto& b = A.basis();
  t.entries.assign(b.size(), std::vector<std::optional<std::vector<Rational>>>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) t.entries[i][j] = A.coordinates(lie_bracket(b[i], b[j]));
  }
  return t;
}

std::string format_combination(const std::vector<Rational>& coords, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const Rational& c = coords[k];
    if (c == 0) continue;
    const bool neg = sgn(c) < 0;
    if (out.empty()) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (mag != 1) out += mag.get_str() + "*";
    out += names[k];
  }
  return out.empty() ? "0" : out;
}

std::vector<std::size_t> derived_series(const LieAlgebra& A) {
  const auto& b = A.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (!A.coordinates(lie_bracket(b[i], b[j]))) {
        throw NotClosedError(i, j, "bracket [" + A.names()[i] + ", " + A.names()[j] + "] leaves the span");
      }
    }
  }
  std::vector<std::size_t> dims{b.size()};
  std::vector<VectorField> current = b;
  while (!current.empty()) {
    std::vector<std::vector<Rational>> brackets;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        brackets.push_back(*A.coordinates(lie_bracket(current[i], current[j])));
      }
    }
    auto next = independent_subset(brackets);
    dims.push_back(next.size());
    if (next.size() == current.size()) break;
    current.clear();
    for (const auto& c : next) current.push_back(A.combination(c));
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Invariant forms

JetExpr stage_form(int stage) {
  const JetExpr s = support_function();
  const JetExpr ux = Variable::jet(1, 0);
  const JetExpr uy = Variable::jet(0, 1);
  switch (stage) {
    case 1:
      return hessian() - JetExpr(apply_function("H1", {kX, kY, ux, kY * uy - kU}));
    case 2:
      return hessian() - JetExpr(apply_function("H2", {kY, kU, ux, s}));
    case 3:
      return hessian() - JetExpr(apply_function("H3", {kY, s}));
    case 4:
      return hessian() - s.pow(4) * JetExpr(apply_function("H4", {kY}));
    case 5:
      return titeica_operator();
    default:
      throw PreconditionError("stage must be between 1 and 5");
  }
}

std::vector<std::size_t> stage_generators(int stage) {
  switch (stage) {
    case 1: return {7};
    case 2: return {2, 7};
    case 3: return {2, 6};
    case 4: return {0, 2, 6};
    case 5: return {0, 1, 2, 6};
    default: throw PreconditionError("stage must be between 1 and 5");
  }
}

InvariantFormCheck verify_invariant_form(int stage, const std::optional<JetExpr>& form) {
  InvariantFormCheck c;
  c.stage = stage;
  c.F = form ? *form : stage_form(stage);
  const LieAlgebra g = titeica_symmetry_algebra();
  c.invariant = true;
  for (auto k : stage_generators(stage)) {
    c.generators.push_back(g.names()[k]);
    c.residuals.push_back(symmetry_residual(g.basis()[k], c.F, true));
    if (!c.residuals.back().is_zero()) c.invariant = false;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Adjoint representation

AdjointResult adjoint_series(const LieAlgebra& A, std::size_t i, std::size_t j, double eps, double tol) {
  const std::size_t n = A.dim();
  if (i >= n || j >= n) throw PreconditionError("generator index out of range");
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  // ad matrix of X_i: column k holds the coordinates of [X_i, X_k].
  std::vector<std::vector<double>> ad(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    auto c = A.coordinates(lie_bracket(A.basis()[i], A.basis()[k]));
    if (!c) throw NotClosedError(i, k, "bracket [" + A.names()[i] + ", " + A.names()[k] + "] leaves the span");
    for (std::size_t r = 0; r < n; ++r) ad[r][k] = (*c)[r].get_d();
  }
  AdjointResult res{i, j, eps, std::vector<double>(n, 0.0), 0};
  std::vector<double> term(n, 0.0);
  term[j] = 1.0;
  for (int m = 0; m < 200; ++m) {
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      res.coordinates[r] += term[r];
      norm = std::max(norm, std::fabs(term[r]));
    }
    res.terms = m + 1;
    if (norm < tol) break;
    std::vector<double> next(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) next[r] += ad[r][k] * term[k];
    }
    for (auto& v : next) v *= -eps / (m + 1);
    term = std::move(next);
  }
  return res;
}

}  // namespace jetlie
