#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "relbgk/config.hpp"
#include "relbgk/diagnostics.hpp"
#include "relbgk/slab_solver.hpp"

namespace relbgk {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitSchema = 2,
  kExitInvalidBoundary = 3,
  kExitNotConverged = 4,
  kExitIo = 5,
};

/// Line-oriented JSON messages on the diagnostic stream.
class Logger {
 public:
  explicit Logger(std::ostream* os = nullptr, bool quiet = false) : os_(os), quiet_(quiet) {}

  void info(const std::string& message) const;
  void warn(const std::string& message) const;
  /// Errors are emitted even when quiet.
  void error(const std::string& kind, const std::string& message,
             const std::string& path = {}) const;

 private:
  void emit(const std::string& level, const std::string& kind, const std::string& message,
            const std::string& path) const;
  std::ostream* os_;
  bool quiet_;
};

/// Samples every boundary, checks the truncation rule and builds the problem
/// (omega scaled by solver.omega_scale). Throws InvalidBoundary.
SlabProblem build_problem(const RunConfig& config, const Logger& log = Logger{});

SolverOptions solver_options(const RunConfig& config);

struct RunOptions {
  std::optional<std::string> output_dir;  // overrides config.output.directory
  std::optional<RunMode> mode;            // overrides config.mode
  bool quiet = false;
  std::ostream* diagnostics = nullptr;    // structured messages; nullptr silences
  std::ostream* console = nullptr;        // human-readable tables
};

/// Executes the configured mode and writes its artifacts. Returns an ExitCode.
int run(const RunConfig& config, const RunOptions& options = {});

/// CSV of per-x profiles, 17 significant digits, header with units.
void write_profiles_csv(const std::string& path, const SlabProblem& problem,
                        const DistributionField& f, const AuxiliaryProfile& aux);

/// FNV-1a checksum over node coordinates and weights.
std::string grid_checksum(const MomentumGrid& grid);
std::string grid_checksum(const SpatialGrid& grid);

}  // namespace relbgk
