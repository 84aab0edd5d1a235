#include <CLI11.hpp>

#include <functional>
#include <ostream>

#include "commands.hpp"
#include "jetlie/errors.hpp"
#include "report.hpp"

namespace jetlie::cli {

namespace {

struct Output {
  std::string format = "text";
};

void add_format(CLI::App* sub, Output& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry, variational and solution checks for the Titeica equation", "jetlie"};
  app.require_subcommand(1);
  Output o;
  std::function<Report()> action;

  std::string which = "structure";
  double eps = 0.3;
  auto* tables = app.add_subcommand("tables", "Commutator, adjoint and derived-series tables");
  tables->add_option("--which", which)->check(CLI::IsMember({"structure", "adjoint", "derived"}));
  tables->add_option("--eps", eps, "Flow parameter for the adjoint table");
  add_format(tables, o);
  tables->callback([&] { action = [&] { return tables_command(which, eps); }; });

  std::string pde = "titeica";
  std::optional<std::string> solution_file;
  auto* determine = app.add_subcommand("determine", "Emit the determining system, optionally checking a solution");
  determine->add_option("--pde", pde);
  determine->add_option("--solution", solution_file, "File with zeta = ..., eta = ..., phi = ... lines");
  add_format(determine, o);
  determine->callback([&] { action = [&] { return determine_command(pde, solution_file); }; });

  bool reduce = false, stages = false;
  std::optional<std::string> field;
  auto* invariance = app.add_subcommand("invariance", "pr2 X applied to the equation for each generator");
  invariance->add_flag("--reduce", reduce, "Reduce modulo the equation");
  invariance->add_option("--field", field, "zeta; eta; phi of a single field");
  invariance->add_flag("--stages", stages, "Check the invariant forms along the subalgebra chain");
  add_format(invariance, o);
  invariance->callback([&] { action = [&] { return invariance_command(reduce, field, stages); }; });

  std::optional<std::string> factor;
  auto* helmholtz = app.add_subcommand("helmholtz", "Integrability conditions of the operator");
  helmholtz->add_option("--factor", factor, "Multiplier applied before the test");
  add_format(helmholtz, o);
  helmholtz->callback([&] { action = [&] { return helmholtz_command(factor); }; });

  std::optional<std::string> lagrangian;
  auto* el = app.add_subcommand("euler-lagrange", "Euler-Lagrange operator of a Lagrangian");
  el->add_option("--lagrangian", lagrangian);
  add_format(el, o);
  el->callback([&] { action = [&] { return euler_lagrange_command(lagrangian); }; });

  auto* variational = app.add_subcommand("variational", "Variational symmetry test per generator");
  add_format(variational, o);
  variational->callback([&] { action = [] { return variational_command(); }; });

  std::optional<std::string> q;
  std::string xi = "-y,0";
  auto* noether = app.add_subcommand("noether", "Conservation law from a characteristic");
  noether->add_option("--q", q, "Characteristic; defaults to that of xi1 d/dx + xi2 d/dy");
  noether->add_option("--xi", xi, "xi1,xi2");
  noether->add_option("--lagrangian", lagrangian);
  add_format(noether, o);
  noether->callback([&] { action = [&] { return noether_command(q, xi, lagrangian); }; });

  std::string ansatz;
  std::optional<std::string> psi, ode_alpha;
  ParamList params;
  auto* red = app.add_subcommand("reduce", "Reduce the equation by u = psi(t)");
  red->add_option("--ansatz", ansatz, "Invariant t(x, y)")->required();
  red->add_option("--psi", psi, "psi(t) to check against the reduced equation");
  red->add_option("--alpha", ode_alpha);
  red->add_option("--param", params, "name=value");
  add_format(red, o);
  red->callback([&] { action = [&] { return reduce_command(ansatz, psi, ode_alpha, params); }; });

  SolutionOptions so;
  auto* verify = app.add_subcommand("verify-solution", "Residual of a closed-form solution");
  verify->add_option("--expr", so.expr, "u(x, y), or R(x, y, u) with --implicit")->required();
  verify->add_option("--alpha", so.alpha)->required();
  verify->add_option("--mode", so.mode)->check(CLI::IsMember({"symbolic", "numeric"}));
  verify->add_flag("--implicit", so.implicit, "Treat --expr as a relation R = 0");
  verify->add_option("--guess", so.guess, "Starting value for the implicit solve");
  verify->add_option("--branch", so.branch, "Branch where this expression is positive");
  verify->add_option("--param", so.params, "name=value");
  add_format(verify, o);
  verify->callback([&] { action = [&] { return verify_solution_command(so); }; });

  auto* catalog = app.add_subcommand("catalog", "Check every known solution");
  add_format(catalog, o);
  catalog->callback([&] { action = [] { return catalog_command(); }; });

  std::string expr = "1/(x*y)", at = "1,1";
  auto* geometry = app.add_subcommand("geometry", "Curvature, support distance and their invariant ratio");
  geometry->add_option("--expr", expr);
  geometry->add_option("--at", at, "x,y");
  geometry->add_option("--param", params, "name=value");
  add_format(geometry, o);
  geometry->callback([&] { action = [&] { return geometry_command(expr, at, params); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "jetlie: " << e.what() << "\n";
    return 2;
  }

  Report report;
  try {
    report = action();
  } catch (const ParseError& e) {
    err << "jetlie: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    report.command = app.get_subcommands().front()->get_name();
    report.error = e.what();
  }
  if (o.format == "json") {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << to_text(report);
  }
  return report.status() == Status::pass ? 0 : 1;
}

}  // namespace jetlie::cli
