#include "relbgk/phase_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "relbgk/errors.hpp"

namespace relbgk {

GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root, then Newton.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = z;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[n - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// Nodes and weights of a Gauss rule mapped onto [a, b].
void append_mapped(const GaussRule& rule, double a, double b, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(mid + half * rule.nodes[i]);
    weights.push_back(half * rule.weights[i]);
  }
}

}  // namespace

MomentumGrid build_momentum_grid(double p_max, std::size_t n_p1, std::size_t n_rho,
                                 std::size_t p1_panels, double grading) {
  if (!(p_max > 0.0) || !std::isfinite(p_max))
    throw Error("build_momentum_grid: p_max must be positive, got " + std::to_string(p_max));
  if (n_p1 < 4 || n_p1 % 2 != 0)
    throw Error("build_momentum_grid: n_p1 must be even and >= 4, got " +
                std::to_string(n_p1));
  if (n_rho < 2)
    throw Error("build_momentum_grid: n_rho must be >= 2, got " + std::to_string(n_rho));
  const std::size_t half = n_p1 / 2;
  if (p1_panels == 0 || half % p1_panels != 0)
    throw Error("build_momentum_grid: p1_panels must divide n_p1/2");
  if (p1_panels > 1 && !(grading > 0.0 && grading < 1.0))
    throw Error("build_momentum_grid: p1 grading ratio must lie in (0, 1)");

  MomentumGrid grid;
  grid.p_max_ = p_max;
  grid.panels_ = p1_panels;

  // Positive p1 half-line, ascending.
  std::vector<double> edges{0.0};
  for (std::size_t k = p1_panels; k-- > 1;)
    edges.push_back(p_max * std::pow(grading, static_cast<double>(k)));
  edges.push_back(p_max);

  const GaussRule panel_rule = gauss_legendre(half / p1_panels);
  std::vector<double> pos_nodes;
  std::vector<double> pos_weights;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k)
    append_mapped(panel_rule, edges[k], edges[k + 1], pos_nodes, pos_weights);

  std::vector<double> p1_weights(n_p1);
  grid.p1_axis_.resize(n_p1);
  for (std::size_t i = 0; i < half; ++i) {
    grid.p1_axis_[half + i] = pos_nodes[i];
    grid.p1_axis_[half - 1 - i] = -pos_nodes[i];
    p1_weights[half + i] = pos_weights[i];
    p1_weights[half - 1 - i] = pos_weights[i];
  }

  std::vector<double> rho_weights;
  append_mapped(gauss_legendre(n_rho), 0.0, p_max, grid.rho_axis_, rho_weights);

  grid.weight_.resize(n_p1 * n_rho);
  for (std::size_t i1 = 0; i1 < n_p1; ++i1)
    for (std::size_t ir = 0; ir < n_rho; ++ir)
      grid.weight_[i1 * n_rho + ir] = p1_weights[i1] * rho_weights[ir] * 2.0 *
                                      std::numbers::pi * grid.rho_axis_[ir];
  return grid;
}

std::pair<double, double> integrate_halves(const MomentumGrid& grid,
                                           std::span<const double> values) {
  if (values.size() != grid.size())
    throw Error("integrate_momentum: expected " + std::to_string(grid.size()) +
                " values, got " + std::to_string(values.size()));
  const std::size_t half = grid.n_p1() / 2;
  const std::size_t nr = grid.n_rho();
  const auto w = grid.weights();
  double neg = 0.0;
  double pos = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t in = (half - 1 - k) * nr;
    const std::size_t ip = (half + k) * nr;
    for (std::size_t ir = 0; ir < nr; ++ir) {
      neg += w[in + ir] * values[in + ir];
      pos += w[ip + ir] * values[ip + ir];
    }
  }
  return {neg, pos};
}

double integrate_momentum(const MomentumGrid& grid, std::span<const double> values) {
  const auto [neg, pos] = integrate_halves(grid, values);
  return neg + pos;
}

SpatialGrid::SpatialGrid(std::size_t intervals) {
  if (intervals < 2)
    throw Error("build_spatial_grid: K must be >= 2, got " + std::to_string(intervals));
  nodes_.resize(intervals + 1);
  const double k_total = static_cast<double>(intervals);
  for (std::size_t k = 0; k <= intervals; ++k) nodes_[k] = static_cast<double>(k) / k_total;
  spacing_ = 1.0 / k_total;
}

SpatialGrid build_spatial_grid(std::size_t intervals) { return SpatialGrid(intervals); }

}  // namespace relbgk
