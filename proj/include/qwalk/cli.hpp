#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qwalk/bdchain.hpp"

namespace qwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kModuleError = 1,       // numerical failure inside a computation
  kUsageError = 2,        // unknown command, bad flag, bad option value
  kChainSpecError = 3,    // malformed chain description
  kOutputError = 4,       // output path not writable
  kNormalizationError = 5 // a table failed its normalization check
};

enum class Format { kCsv, kJson };

struct ExperimentConfig {
  std::string command;  // spectrum | ctqw-avg | dtqw-avg | trace | theorem1
  ChainSpec chain;
  std::optional<std::size_t> n;
  std::vector<std::size_t> sizes;
  std::vector<double> horizons;
  std::size_t steps = 100;  // trace length
  std::string output;       // path prefix; empty = stdout
  Format format = Format::kCsv;
  std::string reference;    // theorem1: "arcsine" or empty
  bool dump_spectrum = false;
  bool dump_eigenpairs = false;
  bool force = false;
  std::size_t workers = 0;
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "QWALK_OUTPUT_DIR";

/// Parses argv (and an optional --config file) and runs the command.
/// Tables go to files under the output prefix, or to `out` when no prefix is
/// set; the human-readable summary goes to `out` in the first case and to
/// `err` in the second. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
