#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relbgk/attractor.hpp"
#include "relbgk/errors.hpp"
#include "relbgk/moments.hpp"
#include "relbgk/phase_grid.hpp"

namespace relbgk {

/// Inflow data sampled on the momentum grid: per species, f_{i,L} on the
/// p1 > 0 nodes and f_{i,R} on the p1 < 0 nodes (the combined f_{i,LR}).
struct BoundaryData {
  std::vector<std::vector<double>> f_lr;
  std::vector<std::string> provenance;  // one description per species
};

/// f_i(x_k, node j) for every species; species i is stored as a flat
/// row-major (x, node) array.
struct DistributionField {
  std::size_t n_x = 0;
  std::size_t n_nodes = 0;
  std::vector<std::vector<double>> data;

  static DistributionField zeros(std::size_t n_species, std::size_t n_x, std::size_t n_nodes);

  std::size_t n_species() const noexcept { return data.size(); }
  std::span<double> at(std::size_t i, std::size_t k) {
    return {data[i].data() + k * n_nodes, n_nodes};
  }
  std::span<const double> at(std::size_t i, std::size_t k) const {
    return {data[i].data() + k * n_nodes, n_nodes};
  }
  /// Per-species views of column x_k.
  SpeciesSlices slices(std::size_t k) const;
};

/// Grids, species, constants and boundary data of one slab problem.
/// Validates the boundary on construction (nonnegative, finite, a_{i,l} > 0).
class SlabProblem {
 public:
  SlabProblem(std::vector<SpeciesParams> species, MomentumGrid grid, SpatialGrid xgrid,
              BoundaryData boundary, double c = 1.0, double k = 1.0);

  const MomentumGrid& grid() const noexcept { return *grid_; }
  const SpatialGrid& xgrid() const noexcept { return xgrid_; }
  std::span<const SpeciesParams> species() const noexcept { return species_; }
  std::span<const Kinematics> kinematics() const noexcept { return kin_; }
  const BoundaryData& boundary() const noexcept { return boundary_; }
  double c() const noexcept { return c_; }
  double k() const noexcept { return k_; }
  std::size_t n_species() const noexcept { return species_.size(); }

  /// Same problem with every omega_i multiplied by `scale`.
  SlabProblem with_omega_scale(double scale) const;

 private:
  std::shared_ptr<const MomentumGrid> grid_;
  SpatialGrid xgrid_;
  std::vector<SpeciesParams> species_;
  std::vector<Kinematics> kin_;
  BoundaryData boundary_;
  double c_;
  double k_;
};

struct SolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 200;
  Normalization normalization = Normalization::discrete;
  double beta_tol = 1e-12;
  unsigned threads = 1;
};

struct IterationReport {
  std::vector<double> updates;  // d_n = ||f^{n+1} - f^n||
  std::vector<double> ratios;   // d_n / d_{n-1}, n >= 1
  std::vector<double> norms;    // ||f^n|| used in the stopping test
  std::size_t iterations = 0;
  bool converged = false;
  bool diverged = false;
  double verification_residual = 0.0;  // ||Psi(f) - f|| / ||f|| at the returned f
  std::string stop_reason;

  double sup_ratio() const noexcept;
};

class NotConverged : public Error {
 public:
  explicit NotConverged(IterationReport report)
      : Error("Picard iteration did not converge: " + report.stop_reason),
        report_(std::move(report)) {}
  const IterationReport& report() const noexcept { return report_; }

 private:
  IterationReport report_;
};

/// Homogeneous part of the mild form: e^{-omega x/|p1|} f_L for p1 > 0,
/// e^{-omega (1-x)/|p1|} f_R for p1 < 0.
DistributionField propagate_boundary(const SlabProblem& problem);

/// int_0^h (a/h) e^{-(a/h)(h-s)} J(s) ds for J linear from J_left (s=0) to
/// J_right (s=h), with a = omega h / |p1|.
double exp_kernel_cell(double a, double J_left, double J_right, double h);

AuxiliaryProfile compute_aux_profile(const SlabProblem& problem, const DistributionField& f,
                                     const SolverOptions& options = {});

/// J_i(x_k, .) for every species and node.
DistributionField attractor_field(const SlabProblem& problem, const AuxiliaryProfile& aux,
                                  Normalization normalization = Normalization::discrete,
                                  unsigned threads = 1);

/// Psi(f) given the auxiliary profile of f.
DistributionField apply_solution_operator(const SlabProblem& problem, const AuxiliaryProfile& aux,
                                          const SolverOptions& options = {});

DistributionField apply_solution_operator(const SlabProblem& problem, const DistributionField& f,
                                          const SolverOptions& options = {});

/// sum_i trapezoid_x int |f_i - g_i| dp.
double l1_distance(const DistributionField& f, const DistributionField& g,
                   const SlabProblem& problem);
double l1_norm(const DistributionField& f, const SlabProblem& problem);

struct SolveResult {
  DistributionField field;
  AuxiliaryProfile aux;  // auxiliary state of `field` (empty if it could not be formed)
  IterationReport report;
};

/// Picard iteration from propagate_boundary; never throws NotConverged, the
/// outcome is in result.report.
SolveResult picard_iterate(const SlabProblem& problem, const SolverOptions& options = {});

/// As picard_iterate, but throws NotConverged when the iteration fails.
SolveResult picard_solve(const SlabProblem& problem, const SolverOptions& options = {});

struct ScanRow {
  double scale = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double sup_ratio = 0.0;
  std::string stop_reason;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  std::optional<double> largest_converged_scale;
};

/// Runs picard_iterate with omega_i -> s omega_i for each s of the ladder.
ScanTable omega_threshold_scan(const SlabProblem& problem, std::span<const double> scales,
                               const SolverOptions& options = {});

}  // namespace relbgk
