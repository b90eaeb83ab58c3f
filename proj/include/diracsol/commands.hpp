#pragma once

#include <iosfwd>
#include <string>

namespace diracsol {

enum ExitCode : int { kExitPass = 0, kExitConfig = 2, kExitSolver = 3, kExitIdentity = 4 };

struct CommandOptions {
  std::string config_path;
  std::string out_dir;       // overrides output.directory when non-empty
  std::string format;        // overrides output.formats when non-empty
  std::string profile_path;  // verify/boost/md-report input; default <out>/profile.txt
  int threads = 0;
};

/// Runs one subcommand (solve, verify, boost, md-report, kgd-solve), writes its
/// files under the output directory and the primary report to `out`.
/// Errors go to `out` as an error object in structured mode, to `err` otherwise.
int run_command(const std::string& name, const CommandOptions& options, std::ostream& out,
                std::ostream& err);

}  // namespace diracsol
