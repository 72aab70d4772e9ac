#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace relbgk {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(std::size_t n);

/// Axisymmetric momentum-space quadrature over the cylinder
/// {|p1| <= p_max, rho <= p_max}.
///
/// Nodes are stored row-major in (p1, rho): node j = i1 * n_rho + ir, with
/// p1 ascending (the p1 < 0 half first). Each weight already contains the
/// azimuthal factor 2*pi*rho. No node sits on p1 = 0, and the two p1 halves
/// are exact mirror images of each other.
class MomentumGrid {
 public:
  MomentumGrid() = default;

  double p_max() const noexcept { return p_max_; }
  std::size_t n_p1() const noexcept { return p1_axis_.size(); }
  std::size_t n_rho() const noexcept { return rho_axis_.size(); }
  std::size_t size() const noexcept { return weight_.size(); }
  std::size_t p1_panels() const noexcept { return panels_; }

  std::span<const double> p1_axis() const noexcept { return p1_axis_; }
  std::span<const double> rho_axis() const noexcept { return rho_axis_; }

  double p1(std::size_t j) const noexcept { return p1_axis_[j / n_rho()]; }
  double rho(std::size_t j) const noexcept { return rho_axis_[j % n_rho()]; }
  double weight(std::size_t j) const noexcept { return weight_[j]; }
  std::span<const double> weights() const noexcept { return weight_; }

  /// Index of the node obtained by p1 -> -p1.
  std::size_t mirror(std::size_t j) const noexcept {
    const std::size_t i1 = j / n_rho();
    return (n_p1() - 1 - i1) * n_rho() + j % n_rho();
  }

  friend MomentumGrid build_momentum_grid(double, std::size_t, std::size_t,
                                          std::size_t, double);

 private:
  double p_max_ = 0.0;
  std::size_t panels_ = 1;
  std::vector<double> p1_axis_;
  std::vector<double> rho_axis_;
  std::vector<double> weight_;
};

/// Builds the grid from Gauss-Legendre rules on each p1 half-line and on
/// (0, p_max] for rho.
///
/// With `p1_panels` > 1 each p1 half-line is split into geometrically graded
/// panels with edges 0, p_max*g^(P-1), ..., p_max*g, p_max (g = `grading`),
/// each carrying n_p1/(2*P) nodes. This resolves the e^{-omega x/|p1|} layer
/// near p1 = 0 that the mild solution develops.
MomentumGrid build_momentum_grid(double p_max, std::size_t n_p1, std::size_t n_rho,
                                 std::size_t p1_panels = 1, double grading = 0.25);

/// Quadrature sum over the grid.
///
/// Summation order is fixed: the p1 < 0 half is accumulated from p1 = 0
/// outward, the p1 > 0 half likewise, and the two partial sums are added.
/// Mirror-even data therefore yields bit-identical halves and mirror-odd data
/// an exact zero.
double integrate_momentum(const MomentumGrid& grid, std::span<const double> values);

/// The two half-grid partial sums (p1 < 0, p1 > 0) used by integrate_momentum.
std::pair<double, double> integrate_halves(const MomentumGrid& grid,
                                           std::span<const double> values);

/// Uniform nodes x_k = k/K on [0, 1].
class SpatialGrid {
 public:
  SpatialGrid() = default;
  explicit SpatialGrid(std::size_t intervals);

  std::size_t intervals() const noexcept { return nodes_.size() - 1; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double spacing() const noexcept { return spacing_; }
  double x(std::size_t k) const noexcept { return nodes_[k]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

 private:
  std::vector<double> nodes_;
  double spacing_ = 0.0;
};

SpatialGrid build_spatial_grid(std::size_t intervals);

}  // namespace relbgk
