#pragma once

// Subcommands. Each returns the process exit code and writes only to the
// given streams (and, for integrate/plot, the output file).

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bipara::cli {

enum ExitCode : int {
  kOk = 0,
  kSelftestFailed = 1,
  kInputError = 2,
  kSingularity = 3,
  kAuditBreach = 4,
};

/// Seed from BPC_SEED when set and numeric, otherwise the library default.
std::uint64_t default_seed();

int cmd_derive(const std::string& path, std::ostream& out, std::ostream& err);

struct IntegrateOptions {
  std::string output;     // CSV path; "-" writes to `out`
  bool residual = false;  // add the residual column
};
int cmd_integrate(const std::string& path, const IntegrateOptions& opts, std::ostream& out,
                  std::ostream& err);

struct AuditOptions {
  int samples = 100;
  std::uint64_t seed = 0;
  bool flip_sign = false;  // negate the synthesized velocities before auditing
};
int cmd_audit(const std::string& path, const AuditOptions& opts, std::ostream& out,
              std::ostream& err);

int cmd_selftest(std::uint64_t seed, std::ostream& out);

struct PlotOptions {
  std::string output;
  std::vector<std::string> columns;  // empty: every column except t
  int width = 800;
  int height = 500;
};
int cmd_plot(const std::string& csv_path, const PlotOptions& opts, std::ostream& err);

}  // namespace bipara::cli
