#pragma once

#include <vector>

#include "oracles.hpp"
#include "relbgk/slab_solver.hpp"

namespace support {

struct GridParams {
  double p_max = 30.0;
  std::size_t n_p1 = 64;
  std::size_t n_rho = 48;
  std::size_t K = 32;
  std::size_t panels = 1;
  double grading = 0.25;
};

/// Rest Juttner inflow: amplitude e^{-beta_L c (p0 - m c)} for p1 > 0 and the
/// beta_R counterpart for p1 < 0.
inline std::vector<double> two_sided_juttner(const relbgk::MomentumGrid& g, double beta_l,
                                             double beta_r, double m, double c) {
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    f[j] = oracle::drifted_juttner(g.p1(j) > 0 ? beta_l : beta_r, 0.0, m, c, g.p1(j), g.rho(j));
  return f;
}

inline relbgk::SlabProblem juttner_problem(std::vector<relbgk::SpeciesParams> species,
                                           double beta_l, double beta_r,
                                           const GridParams& gp = {}, double c = 1.0) {
  auto g = relbgk::build_momentum_grid(gp.p_max, gp.n_p1, gp.n_rho, gp.panels, gp.grading);
  relbgk::BoundaryData bd;
  for (const auto& s : species) {
    bd.f_lr.push_back(two_sided_juttner(g, beta_l, beta_r, s.mass, c));
    bd.provenance.push_back("test juttner");
  }
  return relbgk::SlabProblem(std::move(species), std::move(g), relbgk::build_spatial_grid(gp.K),
                             std::move(bd), c);
}

/// The reference mixture: m = (1, 2), omega = (0.05, 0.08), cold left wall
/// (beta 2) and hot right wall (beta 1).
inline relbgk::SlabProblem reference_mixture(const GridParams& gp) {
  return juttner_problem({{"light", 1.0, 0.05}, {"heavy", 2.0, 0.08}}, 2.0, 1.0, gp);
}

inline GridParams reference_grid() { return {30.0, 128, 48, 32, 4, 0.2}; }

}  // namespace support
