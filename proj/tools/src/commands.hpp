#pragma once

#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace jetlie::cli {

/// "name=value" bindings given with --param.
using ParamList = std::vector<std::string>;

Report tables_command(const std::string& which, double eps);
Report determine_command(const std::string& pde, const std::optional<std::string>& solution_file);
Report invariance_command(bool reduce, const std::optional<std::string>& field, bool stages);
Report helmholtz_command(const std::optional<std::string>& factor);
Report euler_lagrange_command(const std::optional<std::string>& lagrangian);
Report variational_command();
Report noether_command(const std::optional<std::string>& q, const std::string& xi,
                       const std::optional<std::string>& lagrangian);
Report reduce_command(const std::string& ansatz, const std::optional<std::string>& psi,
                      const std::optional<std::string>& alpha, const ParamList& params);

struct SolutionOptions {
  std::string expr;
  std::string alpha;
  std::optional<std::string> mode;
  bool implicit = false;
  std::optional<std::string> guess;
  std::optional<std::string> branch;
  ParamList params;
};
Report verify_solution_command(const SolutionOptions& o);
Report catalog_command();
Report geometry_command(const std::string& expr, const std::string& at, const ParamList& params);

}  // namespace jetlie::cli
