#include "txconflict/csv.hpp"
#include "txconflict/errors.hpp"
#include "txconflict/report.hpp"

#include "format.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace txconflict {

namespace csv {

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_row(const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) out += ',';
    out += escape(row[i]);
  }
  return out + "\r\n";
}

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
      field_started = true;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      ++i;
      end_row();
    } else if (c == '\n') {
      end_row();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

}  // namespace csv

namespace {

std::string contract_of(const std::string& key) { return key.substr(0, key.find('.')); }

}  // namespace

std::string conflicts_csv(std::span<const AnalysisResult> results) {
  std::vector<csv::Row> rows;
  for (const auto& r : results) {
    auto add = [&](const Conflict& c) {
      rows.push_back({r.contract->name, c.first, c.second, std::string(to_string(c.kind)),
                      std::string(to_string(c.severity)), detail::join(c.variables, ";")});
    };
    for (const auto& c : r.conflicts) add(c);
    // A cross-contract conflict is listed once, under the contract of its first function.
    for (const auto& c : r.cross_contract) {
      if (contract_of(c.first) == r.contract->name) add(c);
    }
  }
  std::sort(rows.begin(), rows.end());
  std::string out = csv::format_row(
      {"contract", "function_a", "function_b", "kind", "severity", "variables"});
  for (const auto& row : rows) out += csv::format_row(row);
  return out;
}

std::string contracts_csv(std::span<const AnalysisResult> results) {
  std::vector<csv::Row> rows;
  for (const auto& r : results) {
    rows.push_back({r.contract->name, std::to_string(r.contract->functions.size()),
                    std::to_string(r.contract->state_variables.size()),
                    std::to_string(r.total_conflicts()), detail::fixed(r.conflict_percentage, 6),
                    detail::fixed(r.analysis_ms, 3)});
  }
  std::sort(rows.begin(), rows.end());
  std::string out = csv::format_row(
      {"name", "functions", "state_vars", "conflicts", "conflict_percentage", "analysis_ms"});
  for (const auto& row : rows) out += csv::format_row(row);
  return out;
}

std::string summary_csv(const AggregateStats& s) {
  auto percent = [&](ConflictKind k) {
    const auto it = s.percent_by_kind.find(k);
    return it == s.percent_by_kind.end() ? std::string() : detail::fixed(it->second, 4);
  };
  auto count = [&](ConflictKind k) {
    const auto it = s.counts_by_kind.find(k);
    return std::to_string(it == s.counts_by_kind.end() ? 0 : it->second);
  };
  std::string out = csv::format_row(
      {"total_contracts", "total_conflicts", "rwc_count", "wwc_count", "fcc_count", "rwc_percent",
       "wwc_percent", "fcc_percent", "contracts_with_conflicts", "mean_conflicts_per_contract",
       "max_conflicts_per_contract", "min_conflict_percentage", "mean_conflict_percentage",
       "median_conflict_percentage", "max_conflict_percentage", "mean_analysis_ms",
       "min_analysis_ms", "max_analysis_ms"});
  if (s.total_contracts == 0) return out;
  out += csv::format_row({std::to_string(s.total_contracts), std::to_string(s.total_conflicts),
                          count(ConflictKind::RWC), count(ConflictKind::WWC),
                          count(ConflictKind::FCC), percent(ConflictKind::RWC),
                          percent(ConflictKind::WWC), percent(ConflictKind::FCC),
                          detail::fixed(s.contracts_with_conflicts, 6),
                          detail::fixed(s.mean_conflicts_per_contract, 4),
                          std::to_string(s.max_conflicts_per_contract),
                          detail::fixed(s.min_conflict_percentage, 6),
                          detail::fixed(s.mean_conflict_percentage, 6),
                          detail::fixed(s.median_conflict_percentage, 6),
                          detail::fixed(s.max_conflict_percentage, 6),
                          detail::fixed(s.mean_analysis_ms, 3), detail::fixed(s.min_analysis_ms, 3),
                          detail::fixed(s.max_analysis_ms, 3)});
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " into place");
  }
}

std::vector<std::filesystem::path> write_csv(std::span<const AnalysisResult> results,
                                             const std::filesystem::path& out_dir) {
  const std::vector<std::pair<const char*, std::string>> files = {
      {kConflictsCsv, conflicts_csv(results)},
      {kContractsCsv, contracts_csv(results)},
      {kSummaryCsv, summary_csv(aggregate(results))}};
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [name, content] : files) {
      const auto path = out_dir / name;
      write_file(path, content);
      written.push_back(path);
    }
  } catch (const IoError&) {
    std::error_code ignored;
    for (const auto& p : written) std::filesystem::remove(p, ignored);
    throw;
  }
  return written;
}

}  // namespace txconflict
