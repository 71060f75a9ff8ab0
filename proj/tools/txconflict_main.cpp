#include "txconflict/driver.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr const char* kSynopsis =
    "usage: txconflict analyze <inputs...> [--out DIR] [--format html,csv]\n"
    "                          [--conservative-external] [--fail-on-conflicts]\n"
    "                          [--jobs N] [--no-timing]\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static detector of read-write, write-write and call-mediated conflicts "
               "between Solidity contract functions"};
  app.require_subcommand(1);

  txconflict::RunConfig config;
  std::vector<std::string> inputs;
  std::vector<std::string> formats;
  std::string out_dir;
  bool no_timing = false;

  auto* analyze = app.add_subcommand("analyze", "Analyze .sol files or directories");
  analyze->add_option("inputs", inputs, "Solidity files or directories (searched recursively)")
      ->required();
  analyze->add_option("--out", out_dir, "Output directory (default: $TXCONFLICT_OUT, then .)");
  analyze->add_option("--format", formats, "Report formats: html, csv")
      ->delimiter(',')
      ->check(CLI::IsMember({"html", "csv"}));
  analyze->add_flag("--conservative-external", config.conservative_external,
                    "Treat unresolved external calls as conflicting with every function in the "
                    "same file");
  analyze->add_flag("--fail-on-conflicts", config.fail_on_conflicts,
                    "Exit with status 2 when any conflict is found");
  analyze->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  analyze->add_flag("--no-timing", no_timing, "Report analysis_ms as 0 for byte-stable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << kSynopsis;
    return txconflict::exit_code::kError;
  }

  config.inputs.assign(inputs.begin(), inputs.end());
  config.out_dir = out_dir;
  if (!formats.empty()) config.formats = {formats.begin(), formats.end()};
  config.timing = !no_timing;
  return txconflict::run(config, std::cerr).exit_code;
}
