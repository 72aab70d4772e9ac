#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relbgk/phase_grid.hpp"

namespace relbgk {

enum class FamilyKind { juttner, gaussian, tabulated };

enum class Side { left, right };

/// One side of a species' inflow data.
struct BoundaryFamilySpec {
  FamilyKind kind = FamilyKind::juttner;
  double amplitude = 1.0;
  // juttner: amplitude e^{-beta (U.p - m c^2)}, U = gamma (c, drift)
  double beta = 1.0;
  double drift = 0.0;
  // gaussian: amplitude e^{-((p1 - center)^2 + rho^2) / width^2}
  double center = 0.0;
  double width = 1.0;
  // tabulated: CSV of p1,rho,value on a rectilinear table
  std::string path;

  bool operator==(const BoundaryFamilySpec&) const = default;
};

/// Rectilinear (p1, rho) table; value(i1, ir) = values[i1 * rho.size() + ir].
struct BoundaryTable {
  std::vector<double> p1;
  std::vector<double> rho;
  std::vector<double> values;

  /// Bilinear inside the table, 0 outside.
  double interpolate(double p1, double rho) const noexcept;
};

/// Reads a CSV with header p1,rho,value. Throws IoError when the file is
/// missing or malformed. Negative values are clamped to 0 and reported
/// through `warn`.
BoundaryTable load_boundary_table(const std::string& path,
                                  const std::function<void(const std::string&)>& warn = {});

using WarningSink = std::function<void(const std::string&)>;

/// Pointwise value of a family at (p1, rho); the side is not applied here.
/// `table` is used only for the tabulated kind.
double evaluate_family(const BoundaryFamilySpec& spec, double p1, double rho, double m, double c,
                       const BoundaryTable* table = nullptr);

/// Samples the family on the half-grid of `side` (p1 > 0 for left, p1 < 0 for
/// right); the other half is zero. Relative table paths are resolved against
/// `base_dir`.
std::vector<double> sample_boundary(const BoundaryFamilySpec& spec, Side side,
                                    const MomentumGrid& grid, double m, double c,
                                    const std::string& base_dir = {},
                                    const WarningSink& warn = {});

/// Fraction of the side's inflow mass int f dp lying outside the cylinder of
/// radius p_max, estimated by Gauss-Legendre boxes out to 3 p_max.
double truncation_tail_fraction(const BoundaryFamilySpec& spec, Side side, double p_max,
                                double m, double c, const std::string& base_dir = {});

std::string describe(const BoundaryFamilySpec& spec);

}  // namespace relbgk
