// run / sweep / validate with staged output directories and checksummed manifests.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

namespace afc::app {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalFailure = 3, kNoEchoOrComb = 4 };

inline constexpr const char* kOutputRootEnv = "AFC_OUTPUT_ROOT";

// Relative output.dir values resolve against $AFC_OUTPUT_ROOT, else the working directory.
std::filesystem::path resolve_output_dir(const std::string& configured);

int run_command(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int sweep_command(const std::filesystem::path& config_path, const std::string& param, const std::string& values,
                  std::ostream& out, std::ostream& err);
int validate_command(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& data);

}  // namespace afc::app
