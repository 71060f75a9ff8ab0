#include "txconflict/driver.hpp"

#include "txconflict/access.hpp"
#include "txconflict/csv.hpp"
#include "txconflict/engine.hpp"
#include "txconflict/errors.hpp"
#include "txconflict/parallel.hpp"
#include "txconflict/parser.hpp"
#include "txconflict/report.hpp"

#include "format.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace txconflict {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct ParsedFile {
  std::optional<SourceUnit> unit;
  std::string error;
  double ms = 0.0;
};

ParsedFile parse_file(const fs::path& path) {
  ParsedFile out;
  const auto start = Clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.error = "cannot read file";
    return out;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    out.unit = parse(text.str(), path.generic_string());
  } catch (const SourceError& e) {
    out.error = e.what();
  }
  out.ms = ms_since(start);
  return out;
}

fs::path resolve_out_dir(const RunConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv("TXCONFLICT_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

std::string skipped_csv(const std::vector<SkippedFile>& skipped) {
  std::string out = csv::format_row({"path", "reason"});
  for (const auto& s : skipped) out += csv::format_row({s.path, s.reason});
  return out;
}

void remove_all(const std::vector<fs::path>& paths) {
  std::error_code ignored;
  for (const auto& p : paths) fs::remove(p, ignored);
}

}  // namespace

std::vector<fs::path> discover(const std::vector<fs::path>& inputs) {
  std::set<fs::path> found;
  for (const auto& input : inputs) {
    std::error_code ec;
    const auto status = fs::symlink_status(input, ec);
    if (ec || !fs::exists(status)) throw IoError("input not found: " + input.string());
    if (fs::is_directory(status)) {
      fs::recursive_directory_iterator it(input, fs::directory_options::none, ec);
      if (ec) throw IoError("cannot read directory " + input.string());
      for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) throw IoError("cannot read directory " + input.string());
        if (it->is_symlink()) continue;
        if (it->is_regular_file() && it->path().extension() == ".sol") {
          found.insert(it->path().lexically_normal());
        }
      }
    } else {
      found.insert(input.lexically_normal());
    }
  }
  return {found.begin(), found.end()};
}

RunOutcome run(const RunConfig& config, std::ostream& log) {
  RunOutcome outcome;
  const auto start = Clock::now();
  if (config.inputs.empty() || config.formats.empty() || config.jobs < 1) {
    log << "error: invalid configuration\n";
    outcome.exit_code = exit_code::kError;
    return outcome;
  }
  for (const auto& f : config.formats) {
    if (f != "html" && f != "csv") {
      log << "error: unknown format '" << f << "'\n";
      outcome.exit_code = exit_code::kError;
      return outcome;
    }
  }

  std::vector<fs::path> files;
  try {
    files = discover(config.inputs);
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    outcome.exit_code = exit_code::kError;
    return outcome;
  }
  outcome.discovered_files = files.size();
  if (files.empty()) {
    log << "error: no .sol files found\n";
    outcome.exit_code = exit_code::kError;
    return outcome;
  }

  std::vector<ParsedFile> parsed(files.size());
  parallel_for(files.size(), config.jobs, [&](std::size_t i) { parsed[i] = parse_file(files[i]); });

  // Files are processed in sorted order, so the first file to declare a
  // contract name keeps it.
  std::vector<SourceUnit> units;
  std::vector<double> parse_ms;
  std::set<std::string> names;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto& p = parsed[i];
    const std::string path = files[i].generic_string();
    if (!p.unit) {
      outcome.skipped.push_back({path, p.error});
      continue;
    }
    if (p.unit->contracts.empty()) {
      outcome.skipped.push_back({path, "no contract definitions"});
      continue;
    }
    std::string duplicate;
    for (const auto& c : p.unit->contracts) {
      if (names.count(c.name) != 0) duplicate = c.name;
    }
    if (!duplicate.empty()) {
      outcome.skipped.push_back({path, "contract " + duplicate + " already defined in another file"});
      continue;
    }
    for (const auto& c : p.unit->contracts) names.insert(c.name);
    units.push_back(std::move(*p.unit));
    parse_ms.push_back(p.ms);
  }
  outcome.analyzed_files = units.size();
  for (const auto& s : outcome.skipped) log << "skipped " << s.path << ": " << s.reason << "\n";

  const fs::path out_dir = resolve_out_dir(config);
  try {
    fs::create_directories(out_dir);
  } catch (const fs::filesystem_error&) {
    log << "error: cannot create output directory " << out_dir.string() << "\n";
    outcome.exit_code = exit_code::kError;
    return outcome;
  }

  std::vector<AnalysisResult> results;
  try {
    write_file(out_dir / kSkippedCsv, skipped_csv(outcome.skipped));
    outcome.written.push_back(out_dir / kSkippedCsv);
    if (units.empty()) {
      log << "error: every input file was skipped\n";
      outcome.exit_code = exit_code::kAllSkipped;
      return outcome;
    }

    DetectionOptions options;
    options.conservative_external = config.conservative_external;
    options.jobs = config.jobs;
    const AccessMaps maps = build_access_maps(units, config.jobs);
    results = detect_all(units, maps, options);

    // Per-file parse time is shared evenly among the file's contracts.
    std::map<const SourceUnit*, double> share;
    for (std::size_t i = 0; i < units.size(); ++i) {
      share[&units[i]] = parse_ms[i] / static_cast<double>(units[i].contracts.size());
    }
    for (auto& r : results) {
      r.analysis_ms = config.timing ? r.analysis_ms + share.at(r.unit) : 0.0;
    }

    if (config.formats.count("csv") != 0) {
      for (auto& p : write_csv(results, out_dir)) outcome.written.push_back(std::move(p));
    }
    if (config.formats.count("html") != 0) {
      for (const auto& r : results) outcome.written.push_back(write_html(r, out_dir));
    }
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    remove_all(outcome.written);
    outcome.written.clear();
    outcome.exit_code = exit_code::kError;
    return outcome;
  }

  const AggregateStats stats = aggregate(results);
  outcome.contracts = results.size();
  outcome.conflicts = stats.total_conflicts;
  auto kind = [&](ConflictKind k) {
    const auto it = stats.counts_by_kind.find(k);
    return it == stats.counts_by_kind.end() ? std::size_t{0} : it->second;
  };
  log << "analyzed " << outcome.contracts << " contracts in " << outcome.analyzed_files
      << " files (" << outcome.skipped.size() << " skipped): " << outcome.conflicts
      << " conflicts (RWC " << kind(ConflictKind::RWC) << ", WWC " << kind(ConflictKind::WWC)
      << ", FCC " << kind(ConflictKind::FCC) << ") in " << detail::fixed(ms_since(start), 1)
      << " ms\n";

  outcome.exit_code =
      config.fail_on_conflicts && outcome.conflicts > 0 ? exit_code::kConflicts : exit_code::kOk;
  return outcome;
}

}  // namespace txconflict
