#include "txconflict/report.hpp"

#include "format.hpp"

#include <sstream>

namespace txconflict {

namespace {

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kTable = "border-collapse:collapse;margin:0.5em 0 1.5em 0";
constexpr const char* kCell = "border:1px solid #999;padding:3px 8px;text-align:left";
constexpr const char* kHead = "border:1px solid #999;padding:3px 8px;text-align:left;background:#e8e8e8";

class Table {
 public:
  Table(std::ostringstream& out, std::initializer_list<std::string_view> headers) : out_(out) {
    out_ << "<table style=\"" << kTable << "\">\n<tr>";
    for (const auto h : headers) out_ << "<th style=\"" << kHead << "\">" << escape(h) << "</th>";
    out_ << "</tr>\n";
  }
  ~Table() { out_ << "</table>\n"; }

  void row(std::initializer_list<std::string> cells) {
    out_ << "<tr>";
    for (const auto& c : cells) out_ << "<td style=\"" << kCell << "\">" << escape(c) << "</td>";
    out_ << "</tr>\n";
  }

 private:
  std::ostringstream& out_;
};

std::string severity_color(Severity s) {
  switch (s) {
    case Severity::High: return "#c62828";
    case Severity::Medium: return "#ef6c00";
    case Severity::Low: return "#2e7d32";
  }
  return "#000";
}

void conflict_table(std::ostringstream& out, const std::vector<Conflict>& conflicts) {
  out << "<table style=\"" << kTable << "\">\n<tr>";
  for (const char* h : {"Function A", "Function B", "Kind", "Severity", "Variables", "Description"})
    out << "<th style=\"" << kHead << "\">" << h << "</th>";
  out << "</tr>\n";
  for (const auto& c : conflicts) {
    out << "<tr><td style=\"" << kCell << "\">" << escape(c.first) << "</td><td style=\"" << kCell
        << "\">" << escape(c.second) << "</td><td style=\"" << kCell << "\">" << to_string(c.kind)
        << "</td><td style=\"" << kCell << ";color:" << severity_color(c.severity)
        << ";font-weight:bold\">" << to_string(c.severity) << "</td><td style=\"" << kCell << "\">"
        << escape(detail::join(c.variables, "; ")) << "</td><td style=\"" << kCell << "\">"
        << escape(c.description) << "</td></tr>\n";
  }
  out << "</table>\n";
}

void matrix_table(std::ostringstream& out, const ConflictMatrix& m) {
  if (m.size() < 2) {
    out << "<p>no transactional function pairs</p>\n";
    return;
  }
  out << "<table style=\"" << kTable << "\">\n<tr><th style=\"" << kHead << "\"></th>";
  for (const auto& f : m.functions()) out << "<th style=\"" << kHead << "\">" << escape(f) << "</th>";
  out << "</tr>\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "<tr><th style=\"" << kHead << "\">" << escape(m.functions()[i]) << "</th>";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) {
        out << "<td style=\"" << kCell << ";background:#ddd\"></td>";
      } else if (m.at(i, j)) {
        out << "<td style=\"" << kCell << ";background:#f4b6b6;text-align:center\">X</td>";
      } else {
        out << "<td style=\"" << kCell << "\"></td>";
      }
    }
    out << "</tr>\n";
  }
  out << "</table>\n";
}

std::string parameter_list(const std::vector<Parameter>& params) {
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += ", ";
    out += p.type_name;
    if (!p.name.empty()) out += " " + p.name;
  }
  return out;
}

}  // namespace

std::string html_report_name(const Contract& c) { return "report_" + c.name + ".html"; }

std::string render_html(const AnalysisResult& r) {
  const Contract& c = *r.contract;
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>"
      << escape(c.name) << " conflict report</title>\n</head>\n"
      << "<body style=\"font-family:sans-serif;margin:2em;color:#222\">\n";
  out << "<h1>" << escape(c.name) << "</h1>\n";

  out << "<h2>Contract</h2>\n";
  {
    Table t(out, {"Field", "Value"});
    t.row({"Name", c.name});
    t.row({"Source", r.unit ? r.unit->path : std::string(kSyntheticSourceName)});
    t.row({"State variables", std::to_string(c.state_variables.size())});
    t.row({"Functions", std::to_string(c.functions.size())});
    t.row({"Events", std::to_string(c.events.size())});
    t.row({"Transactional functions", std::to_string(r.transactional_functions())});
    t.row({"Analysis time (ms)", detail::fixed(r.analysis_ms, 3)});
  }

  out << "<h2>State variables</h2>\n";
  {
    Table t(out, {"Name", "Type", "Visibility", "Qualifier"});
    for (const auto& v : c.state_variables) {
      t.row({v.name, v.type_name, std::string(to_string(v.visibility)),
             v.is_constant ? "constant" : v.is_immutable ? "immutable" : ""});
    }
  }

  out << "<h2>Functions</h2>\n";
  {
    Table t(out, {"Function", "Parameters", "Visibility", "Mutability", "Transactional"});
    for (const auto& f : c.functions) {
      t.row({function_key(c, f), parameter_list(f.parameters), std::string(to_string(f.visibility)),
             std::string(to_string(f.mutability)), should_skip(f) ? "no" : "yes"});
    }
  }

  out << "<h2>Conflicts</h2>\n";
  if (r.conflicts.empty()) {
    out << "<p>No conflicts between functions of this contract.</p>\n";
  } else {
    conflict_table(out, r.conflicts);
  }
  if (!r.cross_contract.empty()) {
    out << "<h3>Conflicts with other contracts</h3>\n";
    conflict_table(out, r.cross_contract);
  }

  out << "<h2>Conflict matrix</h2>\n";
  matrix_table(out, r.matrix);

  out << "<h2>Statistics</h2>\n";
  {
    Table t(out, {"Metric", "Value"});
    auto kind_count = [&](ConflictKind k) {
      const auto it = r.counts_by_kind.find(k);
      return std::to_string(it == r.counts_by_kind.end() ? 0 : it->second);
    };
    t.row({"Total conflicts", std::to_string(r.total_conflicts())});
    t.row({"RWC", kind_count(ConflictKind::RWC)});
    t.row({"WWC", kind_count(ConflictKind::WWC)});
    t.row({"FCC", kind_count(ConflictKind::FCC)});
    t.row({"Conflicting pairs", std::to_string(r.matrix.conflicting_pairs())});
    t.row({"Conflict percentage", detail::fixed(100.0 * r.conflict_percentage, 2) + "%"});
  }
  out << "</body>\n</html>\n";
  return out.str();
}

std::filesystem::path write_html(const AnalysisResult& result, const std::filesystem::path& out_dir) {
  const auto path = out_dir / html_report_name(*result.contract);
  write_file(path, render_html(result));
  return path;
}

}  // namespace txconflict
