#pragma once

#include "txconflict/engine.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace txconflict {

/// Corpus-level figures behind summary.csv.
struct AggregateStats {
  std::size_t total_contracts = 0;
  /// Distinct conflicts; a cross-contract conflict counts once.
  std::size_t total_conflicts = 0;
  std::map<ConflictKind, std::size_t> counts_by_kind;
  /// Share of each kind in percent; empty when there are no conflicts.
  std::map<ConflictKind, double> percent_by_kind;
  double contracts_with_conflicts = 0.0;  // fraction in [0, 1]
  double mean_conflicts_per_contract = 0.0;
  std::size_t max_conflicts_per_contract = 0;
  double min_conflict_percentage = 0.0;
  double mean_conflict_percentage = 0.0;
  double median_conflict_percentage = 0.0;
  double max_conflict_percentage = 0.0;
  double mean_analysis_ms = 0.0;
  double min_analysis_ms = 0.0;
  double max_analysis_ms = 0.0;
};

AggregateStats aggregate(std::span<const AnalysisResult> results);

/// Self-contained HTML report for one contract. Byte-stable for equal input.
std::string render_html(const AnalysisResult& result);

std::string conflicts_csv(std::span<const AnalysisResult> results);
std::string contracts_csv(std::span<const AnalysisResult> results);
std::string summary_csv(const AggregateStats& stats);

inline constexpr const char* kConflictsCsv = "conflicts.csv";
inline constexpr const char* kContractsCsv = "contracts.csv";
inline constexpr const char* kSummaryCsv = "summary.csv";

std::string html_report_name(const Contract& c);

/// Writes `content` to `path` through a temporary sibling and a rename.
/// Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Writes conflicts.csv, contracts.csv and summary.csv into `out_dir`.
/// On failure, files written by this call are removed and IoError is thrown.
std::vector<std::filesystem::path> write_csv(std::span<const AnalysisResult> results,
                                             const std::filesystem::path& out_dir);

/// Writes report_<contract>.html; throws IoError.
std::filesystem::path write_html(const AnalysisResult& result, const std::filesystem::path& out_dir);

}  // namespace txconflict
