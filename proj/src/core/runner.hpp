#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qae {

// Command-line overrides layered on top of the config file.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<long> shots;   // --shots N
  bool exact = false;          // --exact wins over both config and --shots
  std::optional<int> jobs;     // parallel restarts
  std::optional<std::string> out_dir;
};

struct RunResult {
  std::string summary_json;         // what run() wrote to <prefix>summary.json
  std::vector<std::string> files;   // files written, relative to out_dir
};

// Executes the experiment described by a JSON config (kinds: encode, train,
// tomography, discriminate, solve-gate) and writes its outputs.
RunResult run_experiment(const std::string& config_path, const RunOptions& opts);

// Analysis-only entry points for the encode / bound subcommands: no files,
// just the report JSON.
std::string encode_report(const std::string& config_path);
std::string bound_report(const std::string& config_path);

}  // namespace qae
