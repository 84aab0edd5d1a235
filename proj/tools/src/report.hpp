#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace jetlie::cli {

enum class Status { pass, fail, error };

struct Section {
  enum class Kind { table, text, value };

  std::string title;
  Kind kind = Kind::text;
  std::vector<std::vector<std::string>> rows;
  std::string text;
  std::string value;
  std::string paper_ref;
  bool passed = true;

  static Section table(std::string title, std::string ref, std::vector<std::vector<std::string>> rows,
                       bool passed = true);
  static Section note(std::string title, std::string ref, std::string text, bool passed = true);
  static Section scalar(std::string title, std::string ref, std::string value, bool passed = true);
};

struct Report {
  std::string command;
  std::vector<Section> sections;
  int skipped_nodes = 0;
  /// Set when the command could not complete.
  std::optional<std::string> error;

  Status status() const;
};

const char* status_name(Status s);

nlohmann::ordered_json to_json(const Report& r);
std::string to_text(const Report& r);

/// Parses argv, runs the subcommand and writes the report to `out`.
/// Returns 0 on pass, 1 on a failed check or engine error, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string format_double(double v);

}  // namespace jetlie::cli
