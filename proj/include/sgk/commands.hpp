#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgk/report.hpp"

namespace sgk {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int degree = 0;          // 0: the command's default bound
  int closure_depth = -1;  // -1: as given in the pair file
  std::uint64_t seed = 1;
  bool allow_invalid = false;
  int pairs = 50;          // product pairs for coset-check
};

/// Runs one verification suite. Input problems raise sgk::Error; check failures are FAIL lines.
Report run_command(const RunConfig& config);
const std::vector<std::string>& command_names();
/// One line per command: "<name> <inputs>  <summary>".
std::string command_help();

}  // namespace sgk
