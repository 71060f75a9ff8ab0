#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace txtest {

inline std::filesystem::path fixture_dir() { return TXC_FIXTURE_DIR; }
inline std::filesystem::path golden_dir() { return TXC_GOLDEN_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string fixture(const std::string& name) { return read_text(fixture_dir() / name); }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("txconflict_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace txtest
