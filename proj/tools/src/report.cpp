#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace jetlie::cli {

Section Section::table(std::string title, std::string ref, std::vector<std::vector<std::string>> rows, bool passed) {
  Section s;
  s.title = std::move(title);
  s.kind = Kind::table;
  s.rows = std::move(rows);
  s.paper_ref = std::move(ref);
  s.passed = passed;
  return s;
}

Section Section::note(std::string title, std::string ref, std::string text, bool passed) {
  Section s;
  s.title = std::move(title);
  s.kind = Kind::text;
  s.text = std::move(text);
  s.paper_ref = std::move(ref);
  s.passed = passed;
  return s;
}

Section Section::scalar(std::string title, std::string ref, std::string value, bool passed) {
  Section s;
  s.title = std::move(title);
  s.kind = Kind::value;
  s.value = std::move(value);
  s.paper_ref = std::move(ref);
  s.passed = passed;
  return s;
}

Status Report::status() const {
  if (error) return Status::error;
  for (const auto& s : sections) {
    if (!s.passed) return Status::fail;
  }
  return Status::pass;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::error:
      return "error";
  }
  return "error";
}

namespace {

std::string display_title(const Section& s) { return s.passed ? s.title : s.title + " (failed)"; }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["status"] = status_name(r.status());
  auto sections = nlohmann::ordered_json::array();
  for (const auto& s : r.sections) {
    nlohmann::ordered_json js;
    js["title"] = display_title(s);
    switch (s.kind) {
      case Section::Kind::table:
        js["kind"] = "table";
        js["rows"] = s.rows;
        break;
      case Section::Kind::text:
        js["kind"] = "text";
        js["text"] = s.text;
        break;
      case Section::Kind::value:
        js["kind"] = "value";
        js["value"] = s.value;
        break;
    }
    js["paper_ref"] = s.paper_ref;
    sections.push_back(std::move(js));
  }
  if (r.error) {
    sections.push_back({{"title", "error"}, {"kind", "text"}, {"text", *r.error}, {"paper_ref", ""}});
  }
  j["sections"] = std::move(sections);
  j["skipped_nodes"] = r.skipped_nodes;
  return j;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << r.command << ": " << status_name(r.status()) << "\n";
  for (const auto& s : r.sections) {
    out << "\n== " << display_title(s);
    if (!s.paper_ref.empty()) out << " [" << s.paper_ref << "]";
    out << " ==\n";
    switch (s.kind) {
      case Section::Kind::table: {
        std::vector<std::size_t> width;
        for (const auto& row : s.rows) {
          if (width.size() < row.size()) width.resize(row.size(), 0);
          for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
        }
        for (const auto& row : s.rows) {
          std::string line;
          for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
          }
          out << "  " << line << "\n";
        }
        break;
      }
      case Section::Kind::text:
        out << s.text << "\n";
        break;
      case Section::Kind::value:
        out << "  " << s.value << "\n";
        break;
    }
  }
  if (r.error) out << "\nerror: " << *r.error << "\n";
  out << "\nskipped nodes: " << r.skipped_nodes << "\n";
  return out.str();
}

}  // namespace jetlie::cli
