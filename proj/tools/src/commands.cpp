#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "jetlie/errors.hpp"
#include "jetlie/parse.hpp"
#include "jetlie/solutions.hpp"
#include "jetlie/symmetry.hpp"
#include "jetlie/variational.hpp"
#include "jetlie_tables_data.hpp"

namespace jetlie::cli {

namespace {

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits at separators outside parentheses.
std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    else if (s[k] == ')') --depth;
    else if (s[k] == sep && depth == 0) {
      out.push_back(trimmed(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  out.push_back(trimmed(s.substr(start)));
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (!line.empty() && line.front() != '#') out.push_back(line);
  }
  return out;
}

struct Bindings {
  ParseContext ctx = ParseContext::standard();
  std::map<std::string, Rational, std::less<>> values;
};

Bindings bindings_from(const ParamList& params) {
  Bindings b;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw ParseError("parameter binding needs name=value", 0);
    const std::string name = trimmed(std::string_view(p).substr(0, eq));
    b.ctx.add_parameter(name);
    const JetExpr v = parse(std::string_view(p).substr(eq + 1));
    if (!v.is_constant()) throw ParseError("parameter value must be a number", eq + 1);
    b.values[name] = v.constant_value();
  }
  return b;
}

Rational constant_after(const JetExpr& e, const std::map<std::string, Rational, std::less<>>& values,
                        const std::string& what) {
  Substitution s;
  for (const auto& [name, v] : values) s.bind(Variable::parameter(name), JetExpr(v));
  const JetExpr c = substitute(e, s);
  if (!c.is_constant()) throw PreconditionError(what + " does not reduce to a number: " + c.str());
  return c.constant_value();
}

std::string zero_or(const JetExpr& e) { return e.is_zero() ? "0" : e.str(); }

std::vector<std::string> basis_header(const LieAlgebra& A, std::string corner) {
  std::vector<std::string> row{std::move(corner)};
  for (const auto& n : A.names()) row.push_back(n);
  return row;
}

/// Coordinates of an expected table entry written as a combination of X1..X8.
std::vector<JetExpr> expected_coordinates(const std::string& text, const LieAlgebra& A) {
  ParseContext ctx = ParseContext::standard();
  std::vector<Variable> basis;
  for (const auto& n : A.names()) {
    ctx.add_parameter(n);
    basis.push_back(Variable::parameter(n));
  }
  const JetExpr e = parse(text, ctx);
  const auto coeffs = collect(e, basis);
  std::vector<JetExpr> out(A.dim());
  for (const auto& [m, c] : coeffs) {
    if (m.is_one() || m.degree() != 1) throw PreconditionError("table entry is not linear in the basis: " + text);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (m.contains(basis[k])) out[k] = c;
    }
  }
  return out;
}

std::vector<std::vector<std::string>> table_cells(std::string_view data) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines_of(data)) rows.push_back(split_top_level(line, '|'));
  return rows;
}

std::string numeric_combination(const std::vector<double>& c, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k]) < 1e-14) continue;
    if (!out.empty()) out += c[k] < 0 ? " - " : " + ";
    else if (c[k] < 0) out += "-";
    const double a = std::abs(c[k]);
    if (std::abs(a - 1) > 1e-14) out += format_double(a) + "*";
    out += names[k];
  }
  return out.empty() ? "0" : out;
}

Report structure_tables() {
  Report r;
  r.command = "tables";
  const LieAlgebra A = titeica_symmetry_algebra();
  const StructureTable T = structure_table(A);
  const auto expected = table_cells(detail::kStructureTable);
  std::vector<std::vector<std::string>> rows{basis_header(A, "[.,.]")};
  int matches = 0;
  std::vector<std::string> mismatches;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    std::vector<std::string> row{A.names()[i]};
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const auto& entry = T.entries[i][j];
      const std::string computed = entry ? format_combination(*entry, A.names()) : "outside span";
      row.push_back(computed);
      bool same = false;
      if (entry) {
        const auto want = expected_coordinates(expected.at(i).at(j + 1), A);
        same = true;
        for (std::size_t k = 0; k < A.dim(); ++k) same = same && JetExpr((*entry)[k]) == want[k];
      }
      if (same) {
        ++matches;
      } else {
        mismatches.push_back("[" + A.names()[i] + ", " + A.names()[j] + "] = " + computed + ", table has " +
                             expected.at(i).at(j + 1));
      }
    }
    rows.push_back(std::move(row));
  }
  const bool ok = mismatches.empty();
  r.sections.push_back(Section::table("Brackets [Xi, Xj] of the symmetry algebra", "commutator table", rows));
  r.sections.push_back(Section::scalar("Entries matching the printed table", "commutator table",
                                       std::to_string(matches) + "/64", ok));
  if (!ok) {
    std::string text;
    for (const auto& m : mismatches) text += m + "\n";
    r.sections.push_back(Section::note("Mismatches", "commutator table", text, false));
  }
  return r;
}

Report adjoint_tables(double eps) {
  Report r;
  r.command = "tables";
  const LieAlgebra A = titeica_symmetry_algebra();
  const auto expected = table_cells(detail::kAdjointTable);
  const NumericAssignment at_eps{{Variable::parameter("eps"), eps}};
  std::vector<std::vector<std::string>> rows{basis_header(A, "Ad")};
  double worst = 0.0;
  int matches = 0;
  std::string mismatches;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    std::vector<std::string> row{A.names()[i]};
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const AdjointResult res = adjoint_series(A, i, j, eps);
      const auto want = expected_coordinates(expected.at(i).at(j + 1), A);
      double dev = 0.0;
      for (std::size_t k = 0; k < A.dim(); ++k) {
        const double w = want[k].is_zero() ? 0.0 : eval_numeric(want[k], at_eps);
        dev = std::max(dev, std::abs(res.coordinates[k] - w));
      }
      worst = std::max(worst, dev);
      row.push_back(numeric_combination(res.coordinates, A.names()));
      if (dev <= 1e-10) {
        ++matches;
      } else {
        mismatches += "Ad(" + A.names()[i] + ") " + A.names()[j] + " = " + row.back() + ", table has " +
                      expected.at(i).at(j + 1) + "\n";
      }
    }
    rows.push_back(std::move(row));
  }
  r.sections.push_back(Section::table("Ad(exp(eps Xi)) Xj at eps = " + format_double(eps), "adjoint table", rows));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", worst);
  r.sections.push_back(Section::scalar("Entries within 1e-10 of the printed closed forms", "adjoint table",
                                       std::to_string(matches) + "/64", matches == 64));
  r.sections.push_back(Section::scalar("Largest deviation", "adjoint table", buf, worst <= 1e-10));
  if (!mismatches.empty()) r.sections.push_back(Section::note("Mismatches", "adjoint table", mismatches, false));
  return r;
}

Report derived_tables() {
  Report r;
  r.command = "tables";
  const LieAlgebra g = titeica_symmetry_algebra();
  auto dims = [](const std::vector<std::size_t>& d) {
    std::string s;
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? ", " : "") + std::to_string(d[k]);
    return s;
  };
  std::vector<std::vector<std::string>> rows{{"subalgebra", "derived series dimensions"}};
  bool ok = true;
  const auto solvable = derived_series(g.subalgebra({0, 1, 2, 6, 7}));
  rows.push_back({"X1, X2, X3, X7, X8", dims(solvable)});
  ok = ok && solvable == std::vector<std::size_t>{5, 3, 1, 0};
  const auto full = derived_series(g);
  rows.push_back({"X1 .. X8", dims(full)});
  ok = ok && full == std::vector<std::size_t>{8, 8};
  try {
    derived_series(g.subalgebra({0, 1, 2, 6}));
    rows.push_back({"X1, X2, X3, X7", "closed"});
    ok = false;
  } catch (const NotClosedError& e) {
    rows.push_back({"X1, X2, X3, X7", std::string("not closed: ") + e.what()});
  }
  r.sections.push_back(Section::table("Derived series", "solvable subalgebra", rows, ok));
  return r;
}

VectorField parse_field(const std::string& text) {
  const auto parts = split_top_level(text, ';');
  if (parts.size() != 3) throw ParseError("a vector field is written zeta; eta; phi", 0);
  VectorField X{parse(parts[0]), parse(parts[1]), parse(parts[2])};
  X.validate();
  return X;
}

}  // namespace

Report tables_command(const std::string& which, double eps) {
  if (which == "structure") return structure_tables();
  if (which == "adjoint") return adjoint_tables(eps);
  if (which == "derived") return derived_tables();
  throw ParseError("unknown table '" + which + "'", 0);
}

Report determine_command(const std::string& pde, const std::optional<std::string>& solution_file) {
  if (pde != "titeica") throw ParseError("unknown equation '" + pde + "'", 0);
  Report r;
  r.command = "determine";
  const auto system = determining_system(titeica_operator());
  std::vector<std::vector<std::string>> rows{{"#", "equation"}};
  for (std::size_t k = 0; k < system.size(); ++k) rows.push_back({std::to_string(k + 1), system[k].str() + " = 0"});
  r.sections.push_back(Section::table("Determining equations for zeta, eta, phi", "determining system", rows));
  if (!solution_file) return r;

  std::ifstream in(*solution_file);
  if (!in) throw ParseError("cannot read " + *solution_file, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  VectorField X;
  for (const auto& line : lines_of(buf.str())) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected name = expression in " + *solution_file, 0);
    const std::string name = trimmed(std::string_view(line).substr(0, eq));
    const JetExpr e = parse(std::string_view(line).substr(eq + 1));
    if (name == "zeta") X.zeta = e;
    else if (name == "eta") X.eta = e;
    else if (name == "phi") X.phi = e;
    else throw ParseError("unknown coefficient '" + name + "'", 0);
  }
  X.validate();
  const auto bad = unsatisfied_equations(system, X);
  r.sections.push_back(Section::note("Candidate field", "general solution",
                                     "zeta = " + X.zeta.str() + "\neta = " + X.eta.str() + "\nphi = " + X.phi.str()));
  r.sections.push_back(Section::scalar("Equations left nonzero by the candidate", "general solution",
                                       std::to_string(bad.size()) + " of " + std::to_string(system.size()),
                                       bad.empty()));
  return r;
}

Report invariance_command(bool reduce, const std::optional<std::string>& field, bool stages) {
  Report r;
  r.command = "invariance";
  const JetExpr F = titeica_operator();
  std::vector<std::vector<std::string>> rows{{"field", "residual"}};
  bool ok = true;
  if (field) {
    const VectorField X = parse_field(*field);
    const JetExpr res = symmetry_residual(X, F, reduce);
    rows.push_back({*field, zero_or(res)});
    ok = res.is_zero();
  } else {
    const LieAlgebra A = titeica_symmetry_algebra();
    for (std::size_t k = 0; k < A.dim(); ++k) {
      const JetExpr res = symmetry_residual(A.basis()[k], F, reduce);
      rows.push_back({A.names()[k], zero_or(res)});
      ok = ok && res.is_zero();
    }
  }
  const std::string title = reduce ? "pr2 X (F) reduced on F = 0" : "pr2 X (F)";
  r.sections.push_back(Section::table(title, "infinitesimal invariance criterion", rows, ok));
  if (!stages) return r;
  const LieAlgebra A = titeica_symmetry_algebra();
  for (int stage = 1; stage <= 5; ++stage) {
    const InvariantFormCheck c = verify_invariant_form(stage);
    std::vector<std::vector<std::string>> srows{{"generator", "residual"}};
    for (std::size_t k = 0; k < c.generators.size(); ++k) srows.push_back({c.generators[k], zero_or(c.residuals[k])});
    r.sections.push_back(Section::table("Stage " + std::to_string(stage) + ": F = " + c.F.str(),
                                        "invariant forms along the subalgebra chain", srows, c.invariant));
  }
  const JetExpr s = support_function();
  const JetExpr corrected = JetExpr(Variable::jet(2, 0)) * JetExpr(Variable::jet(0, 2)) -
                            JetExpr(Variable::jet(1, 1)).pow(2) -
                            JetExpr(apply_function("G2", {JetExpr(Variable::y()), JetExpr(Variable::jet(1, 0)), s}));
  const InvariantFormCheck c2 = verify_invariant_form(2, corrected);
  std::vector<std::vector<std::string>> crows{{"generator", "residual"}};
  for (std::size_t k = 0; k < c2.generators.size(); ++k) crows.push_back({c2.generators[k], zero_or(c2.residuals[k])});
  r.sections.push_back(Section::table("Stage 2 with the joint invariants y, u_x, s of X3, X8: F = " + c2.F.str(),
                                      "invariant forms along the subalgebra chain", crows, c2.invariant));
  return r;
}

Report helmholtz_command(const std::optional<std::string>& factor) {
  Report r;
  r.command = "helmholtz";
  const JetExpr T = titeica_operator();
  if (factor) {
    const JetExpr f = parse(*factor);
    const HelmholtzReport h = helmholtz_residuals(f * T);
    r.sections.push_back(Section::scalar("Multiplier", "Helmholtz conditions", f.str()));
    r.sections.push_back(Section::scalar("Residual 1", "Helmholtz conditions", zero_or(h.residual1)));
    r.sections.push_back(Section::scalar("Residual 2", "Helmholtz conditions", zero_or(h.residual2)));
    r.sections.push_back(Section::scalar("Multiplied operator is an Euler-Lagrange operator", "Helmholtz conditions",
                                         h.is_variational ? "yes" : "no", h.is_variational));
    return r;
  }
  const HelmholtzReport h = helmholtz_residuals(T);
  r.sections.push_back(Section::scalar("Residual 1", "Helmholtz conditions", zero_or(h.residual1)));
  r.sections.push_back(Section::scalar("Residual 2", "Helmholtz conditions", zero_or(h.residual2)));
  r.sections.push_back(Section::scalar("Operator is an Euler-Lagrange operator", "Helmholtz conditions",
                                       h.is_variational ? "yes" : "no"));
  const auto system = integrating_factor_system(T);
  std::vector<std::vector<std::string>> rows{{"#", "equation"}};
  for (std::size_t k = 0; k < system.size(); ++k) rows.push_back({std::to_string(k + 1), system[k].str() + " = 0"});
  r.sections.push_back(Section::table("Conditions on a multiplier f(x, y, u, u_x, u_y)", "integrating factor", rows));
  const JetExpr candidate = parse("C/(x*u_x + y*u_y - u)^4");
  const Substitution bind = multiplier_binding(candidate);
  std::vector<std::vector<std::string>> check{{"#", "value at f = " + candidate.str()}};
  bool ok = true;
  for (std::size_t k = 0; k < system.size(); ++k) {
    const JetExpr v = substitute(system[k], bind);
    check.push_back({std::to_string(k + 1), zero_or(v)});
    ok = ok && v.is_zero();
  }
  r.sections.push_back(Section::table("Multiplier C/s^4", "integrating factor", check, ok));
  return r;
}

Report euler_lagrange_command(const std::optional<std::string>& lagrangian) {
  Report r;
  r.command = "euler-lagrange";
  const JetExpr L = lagrangian ? parse(*lagrangian) : titeica_lagrangian();
  const JetExpr E = euler_lagrange(L);
  r.sections.push_back(Section::scalar("Lagrangian", "Euler-Lagrange operator", L.str()));
  r.sections.push_back(Section::scalar("E(L)", "Euler-Lagrange operator", zero_or(E)));
  r.sections.push_back(Section::scalar("Jet order of E(L)", "Euler-Lagrange operator", std::to_string(jet_order(E))));
  if (!lagrangian) {
    const JetExpr want = parse("(u_xx*u_yy - u_xy^2)/(x*u_x + y*u_y - u)^4 - alpha");
    r.sections.push_back(Section::scalar("E(L) equals (u_xx u_yy - u_xy^2)/s^4 - alpha", "Euler-Lagrange operator",
                                         E == want ? "yes" : "no", E == want));
  }
  return r;
}

Report variational_command() {
  Report r;
  r.command = "variational";
  const JetExpr L = titeica_lagrangian();
  const LieAlgebra A = titeica_symmetry_algebra();
  const std::vector<bool> expected{true, true, true, false, true, false, false, false};
  std::vector<std::vector<std::string>> rows{{"field", "pr2 X (L) + L Div xi", "variational"}};
  bool ok = true;
  for (std::size_t k = 0; k < A.dim(); ++k) {
    const JetExpr res = variational_residual(A.basis()[k], L);
    rows.push_back({A.names()[k], zero_or(res), res.is_zero() ? "yes" : "no"});
    ok = ok && res.is_zero() == expected[k];
  }
  r.sections.push_back(Section::table("Variational symmetry test", "variational symmetries", rows, ok));
  return r;
}

Report noether_command(const std::optional<std::string>& q, const std::string& xi,
                       const std::optional<std::string>& lagrangian) {
  Report r;
  r.command = "noether";
  const auto xi_parts = split_top_level(xi, ',');
  if (xi_parts.size() != 2) throw ParseError("--xi takes two comma-separated expressions", 0);
  const JetExpr xi1 = parse(xi_parts[0]), xi2 = parse(xi_parts[1]);
  const JetExpr L = lagrangian ? parse(*lagrangian) : titeica_lagrangian();
  const JetExpr Q = q ? parse(*q) : characteristic(VectorField{xi1, xi2, 0});
  r.sections.push_back(Section::scalar("Characteristic Q", "Noether conservation law", Q.str()));
  ConservationLaw cl;
  try {
    cl = noether_flux(Q, L, xi1, xi2);
  } catch (const PreconditionError& e) {
    r.sections.push_back(Section::note("Noether identity", "Noether conservation law", e.what(), false));
    return r;
  }
  r.sections.push_back(Section::scalar("kappa (Div P = kappa Q E(L))", "Noether conservation law",
                                       std::to_string(cl.kappa)));
  r.sections.push_back(Section::scalar("P1 (flow)", "Noether conservation law", zero_or(cl.P1)));
  r.sections.push_back(Section::scalar("P2 (conserved density)", "Noether conservation law", zero_or(cl.P2)));
  const JetExpr defect = conservation_defect(cl, L);
  r.sections.push_back(Section::scalar("Div P - kappa Q E(L)", "Noether conservation law", zero_or(defect),
                                       defect.is_zero()));
  if (lagrangian || xi1 != parse("-y") || !xi2.is_zero()) return r;

  const JetExpr p1 = parse("-alpha*y*u + u_x/(x*u_x + y*u_y - u)^4*(u_xy*(y*u_y - u) - y*u_x*u_yy)");
  const JetExpr p2 = parse("-u_x/(x*u_x + y*u_y - u)^4*(u_xx*(y*u_y - u) - y*u_x*u_xy)");
  const bool same = cl.P1 == p1 && cl.P2 == p2;
  r.sections.push_back(Section::scalar("Flux equals the printed flow and conserved density", "Noether conservation law",
                                       same ? "yes" : "no", same));
  const ClosedForm cf = ClosedForm::explicit_solution(parse("1/(x*y)"));
  const GridSpec grid = GridSpec::from_environment();
  const ConservationCheck check = conservation_check(cl, L, grid, cf, make_rational(1, 27));
  r.skipped_nodes += check.skipped;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e over %d nodes", check.max_abs_divergence, check.evaluated);
  r.sections.push_back(Section::scalar("max |Div P| on u = 1/(xy), alpha = 1/27", "Noether conservation law", buf,
                                       check.numeric_ok));
  return r;
}

Report reduce_command(const std::string& ansatz, const std::optional<std::string>& psi,
                      const std::optional<std::string>& alpha, const ParamList& params) {
  Report r;
  r.command = "reduce";
  Bindings b = bindings_from(params);
  const JetExpr t_expr = parse(ansatz, b.ctx);
  const JetExpr ode = reduce_ansatz(t_expr, titeica_operator());
  r.sections.push_back(Section::scalar("Reduced equation for u = psi(" + t_expr.str() + ")",
                                       "reduction by an invariant ansatz", ode.str() + " = 0"));
  if (!psi) return r;
  const JetExpr body = parse(*psi, b.ctx);
  auto values = b.values;
  if (alpha) values["alpha"] = constant_after(parse(*alpha, b.ctx), b.values, "alpha");
  const OdeResidual res = ode_residual(body, ode, values);
  r.sections.push_back(Section::scalar("Residual for psi(t) = " + body.str(), "reduction by an invariant ansatz",
                                       res.symbolic_zero ? "0 (exact)"
                                                         : format_double(res.max_abs) + " (max over " +
                                                               std::to_string(res.evaluated) + " samples of t)",
                                       res.passed));
  return r;
}

Report verify_solution_command(const SolutionOptions& o) {
  Report r;
  r.command = "verify-solution";
  Bindings b = bindings_from(o.params);
  const JetExpr expr = parse(o.expr, b.ctx);
  ClosedForm cf;
  if (o.implicit) {
    if (!o.guess) throw ParseError("implicit solutions need --guess", 0);
    std::optional<JetExpr> branch;
    if (o.branch) branch = parse(*o.branch, b.ctx);
    cf = ClosedForm::implicit_solution(expr, parse(*o.guess, b.ctx), branch, b.values);
  } else {
    cf = ClosedForm::explicit_solution(expr, b.values);
  }
  const Rational alpha = constant_after(parse(o.alpha, b.ctx), b.values, "alpha");
  ResidualMode mode = cf.is_rational() ? ResidualMode::symbolic : ResidualMode::numeric;
  if (o.mode == "symbolic") mode = ResidualMode::symbolic;
  else if (o.mode == "numeric") mode = ResidualMode::numeric;
  else if (o.mode) throw ParseError("mode must be symbolic or numeric", 0);

  const GridSpec grid = GridSpec::from_environment();
  const ResidualReport rep = pde_residual(cf, alpha, mode, grid);
  r.skipped_nodes = rep.skipped;
  r.sections.push_back(Section::scalar("Solution", "solutions of the Titeica equation", cf.bind(cf.expr).str() +
                                                                                            (o.implicit ? " = 0" : "")));
  r.sections.push_back(Section::scalar("alpha", "solutions of the Titeica equation", alpha.get_str()));
  if (mode == ResidualMode::symbolic) {
    r.sections.push_back(Section::scalar("Residual u_xx u_yy - u_xy^2 - alpha s^4", "solutions of the Titeica equation",
                                         zero_or(*rep.residual), rep.passed));
  } else {
    char buf[96];
    std::snprintf(buf, sizeof buf, "max %.3e (scaled %.3e) over %d nodes", rep.max_abs, rep.max_scaled, rep.evaluated);
    r.sections.push_back(
        Section::scalar("Residual u_xx u_yy - u_xy^2 - alpha s^4", "solutions of the Titeica equation", buf, rep.passed));
  }
  return r;
}

Report catalog_command() {
  Report r;
  r.command = "catalog";
  const auto& entries = builtin_catalog();
  const auto results = verify_catalog(entries, GridSpec::from_environment());
  std::vector<std::vector<std::string>> rows{{"name", "solution", "alpha", "mode", "residual", "result", "note"}};
  bool ok = true;
  for (const auto& res : results) {
    const CatalogEntry& e = *res.entry;
    std::string residual;
    if (!res.error.empty()) {
      residual = "error: " + res.error;
    } else if (res.report.mode == ResidualMode::symbolic) {
      residual = zero_or(*res.report.residual);
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e over %d nodes", res.report.max_abs, res.report.evaluated);
      residual = buf;
    }
    const bool implicit = e.form.kind == ClosedForm::Kind::implicit_form;
    rows.push_back({e.name, (implicit ? "" : "u = ") + e.form.bind(e.form.expr).str() + (implicit ? " = 0" : ""),
                    e.alpha_value().get_str(), res.report.mode == ResidualMode::symbolic ? "symbolic" : "numeric",
                    residual, res.passed ? "pass" : "fail", e.note});
    r.skipped_nodes += res.report.skipped;
    ok = ok && res.passed;
  }
  r.sections.push_back(Section::table("Known solutions", "solutions of the Titeica equation", rows, ok));
  return r;
}

Report geometry_command(const std::string& expr, const std::string& at, const ParamList& params) {
  Report r;
  r.command = "geometry";
  Bindings b = bindings_from(params);
  const auto xy = split_top_level(at, ',');
  if (xy.size() != 2) throw ParseError("--at takes x,y", 0);
  double x = 0, y = 0;
  try {
    x = std::stod(xy[0]);
    y = std::stod(xy[1]);
  } catch (const std::exception&) {
    throw ParseError("--at takes two numbers", 0);
  }
  const ClosedForm cf = ClosedForm::explicit_solution(parse(expr, b.ctx), b.values);
  const GeometryReport g = geometry_eval(cf, x, y);
  r.sections.push_back(Section::scalar("Surface", "centroaffine invariant", "u = " + cf.bind(cf.expr).str()));
  r.sections.push_back(Section::scalar("Gauss curvature K", "centroaffine invariant", format_double(g.K)));
  r.sections.push_back(Section::scalar("Distance d to the tangent plane", "centroaffine invariant", format_double(g.d)));
  r.sections.push_back(Section::scalar("I = K / d^4", "centroaffine invariant", format_double(g.I)));
  return r;
}

}  // namespace jetlie::cli
