#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "relbgk/attractor.hpp"
#include "relbgk/boundary.hpp"

namespace relbgk {

enum class RunMode { solve, scan, verify, moments };

struct SpeciesConfig {
  std::string label;
  double mass = 1.0;
  double omega = 0.0;
  BoundaryFamilySpec left;
  BoundaryFamilySpec right;

  bool operator==(const SpeciesConfig&) const = default;
};

struct GridSpec {
  double p_max = 30.0;
  std::size_t n_p1 = 64;
  std::size_t n_rho = 48;
  std::size_t K = 64;
  std::size_t p1_panels = 1;
  double grading = 0.25;
  /// Largest admissible fraction of inflow mass outside the momentum cylinder.
  double truncation_tol = 1e-12;

  bool operator==(const GridSpec&) const = default;
};

struct SolverSpec {
  double tol = 1e-10;
  std::size_t max_iter = 200;
  Normalization normalization = Normalization::discrete;
  double beta_tol = 1e-12;
  unsigned threads = 1;
  /// Multiplies every omega_i before solving.
  double omega_scale = 1.0;

  bool operator==(const SolverSpec&) const = default;
};

struct ScanSpec {
  std::vector<double> scales{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

  bool operator==(const ScanSpec&) const = default;
};

struct VerifySpec {
  double flux_tolerance = 1e-6;
  double entropy_tolerance = 1e-8;

  bool operator==(const VerifySpec&) const = default;
};

struct OutputSpec {
  std::string directory = "out";
  std::string prefix = "run";

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  double c = 1.0;
  double k = 1.0;
  std::vector<SpeciesConfig> species;
  GridSpec grid;
  SolverSpec solver;
  ScanSpec scan;
  VerifySpec verify;
  RunMode mode = RunMode::solve;
  OutputSpec output;
  /// Directory of the config file; relative table paths resolve against it.
  /// Not part of the document.
  std::string base_dir;

  bool operator==(const RunConfig&) const = default;
};

/// Strict-schema parse: unknown keys, wrong types and physics violations
/// throw ConfigError naming the offending key path (e.g. "species[0].mass").
RunConfig parse_config(std::string_view text, std::string base_dir = {});

/// Reads and parses a file; IoError if it cannot be read.
RunConfig load_config(const std::string& path);

/// Full document with every default written out; parse_config accepts it.
std::string serialize_config(const RunConfig& config);

std::string to_string(RunMode mode);
std::string to_string(Normalization n);
std::string to_string(FamilyKind k);

}  // namespace relbgk
