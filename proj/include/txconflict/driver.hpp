#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace txconflict {

struct RunConfig {
  std::vector<std::filesystem::path> inputs;  // files or directories
  /// Empty means `$TXCONFLICT_OUT`, then the working directory.
  std::filesystem::path out_dir;
  std::set<std::string> formats = {"html", "csv"};
  bool conservative_external = false;
  bool fail_on_conflicts = false;
  int jobs = 1;
  /// When false, analysis_ms is reported as 0 so outputs are byte-stable.
  bool timing = true;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct RunOutcome {
  int exit_code = 0;
  std::size_t discovered_files = 0;
  std::size_t analyzed_files = 0;
  std::size_t contracts = 0;
  std::size_t conflicts = 0;
  std::vector<SkippedFile> skipped;
  std::vector<std::filesystem::path> written;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kConflicts = 2;
inline constexpr int kAllSkipped = 3;
}  // namespace exit_code

inline constexpr const char* kSkippedCsv = "skipped.csv";

/// `.sol` files under `inputs`: directories are walked recursively without
/// following symlinks, explicit files are taken as given. Sorted, unique.
/// Throws IoError if an input does not exist.
std::vector<std::filesystem::path> discover(const std::vector<std::filesystem::path>& inputs);

/// Runs the whole pipeline. Diagnostics and the summary line go to `log`.
/// Never throws; operational failures yield exit code 1 and remove any
/// files this run had written.
RunOutcome run(const RunConfig& config, std::ostream& log);

}  // namespace txconflict
