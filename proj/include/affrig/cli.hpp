#pragma once

// Command layer behind the affrig executable. Every command builds a JSON
// report; text output is rendered from that report, so both formats carry the
// same numbers.

#include <cstdint>
#include <string>

#include "affrig/io.hpp"

namespace affrig::cli {

enum ExitCode : int {
  kSuccess = 0,
  kThickPair = 1,
  kFamilyFailed = 2,
  kInvalidInput = 3,
};

enum class Format { Text, Json };

struct Options {
  Format format = Format::Text;
  std::uint64_t seed = 0;
  std::uint64_t budget = 200000;
  /// Largest p^n accepted by the commands that enumerate the model.
  std::size_t cap = 3000;
  bool basis = false;
};

struct Outcome {
  int exit_code = kSuccess;
  Json report;
};

Outcome cmd_classify(const JobConfig& config, const Options& options);
Outcome cmd_check(const JobConfig& config, const Options& options);
Outcome cmd_dim(const JobConfig& config, const Options& options);
Outcome cmd_decompose(const JobConfig& config, const Options& options);
Outcome cmd_family(const JobConfig& config, const Options& options);
Outcome cmd_demo(const std::string& name, const Options& options);

/// Built-in configurations: "quadratic" and "rigidity-tour".
JobConfig demo_config(const std::string& name);

/// Runs `command` on `argument` (the JSON document, or the demo name for
/// "demo") and turns library errors into the exit-code contract.
Outcome run_command(const std::string& command, const std::string& argument, const Options& options);

std::string render_text(const Json& report);
std::string render(const Outcome& outcome, Format format);

}  // namespace affrig::cli
