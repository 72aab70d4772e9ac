// Randomised checks of the invariants; every generator is seeded.

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "relbgk/diagnostics.hpp"
#include "relbgk/errors.hpp"
#include "relbgk/slab_solver.hpp"
#include "support.hpp"

using namespace relbgk;
using oracle::rel;

namespace {

std::vector<double> random_distribution(const MomentumGrid& g, const Kinematics& kin,
                                        std::mt19937& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double bl = 0.5 + 2.0 * U(rng), br = 0.5 + 2.0 * U(rng);
  const double al = U(rng) + 0.05, ar = U(rng) + 0.05;
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    f[j] = (g.p1(j) > 0 ? al * std::exp(-bl * (kin.p0[j] - kin.c * kin.mass))
                        : ar * std::exp(-br * (kin.p0[j] - kin.c * kin.mass))) *
           (0.5 + U(rng));
  return f;
}

}  // namespace

TEST_CASE("Eckart identity for random nonnegative data") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto g = build_momentum_grid(40.0, 48, 24);
  for (int t = 0; t < 25; ++t) {
    const double m = 0.3 + 3.0 * U(rng), c = 0.5 + 1.5 * U(rng);
    const Kinematics kin(g, m, c);
    const auto f = random_distribution(g, kin, rng);
    const auto ms = compute_moments(f, kin);
    CHECK(ms.n > 0.0);
    CHECK(rel(minkowski_dot(ms.U, ms.U), c * c) <= 1e-10);
    CHECK(rel(ms.N[0], ms.n * ms.U[0]) <= 1e-12);
    CHECK(std::abs(ms.N[1] - ms.n * ms.U[1]) <= 1e-12 * std::abs(ms.N[0]));
  }
}

TEST_CASE("Phi is strictly decreasing with range above c m") {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> ladder(30);
    for (double& b : ladder) b = std::pow(10.0, U(rng));
    std::sort(ladder.begin(), ladder.end());
    const double m = std::pow(10.0, U(rng) / 3), c = std::pow(10.0, U(rng) / 6);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
      if (ladder[i] == ladder[i - 1]) continue;
      CHECK(phi(ladder[i - 1], m, c) > phi(ladder[i], m, c));
    }
    for (double b : ladder) CHECK(phi(b, m, c) > c * m);
  }
}

TEST_CASE("Phi dual path on z in [0.1, 50]") {
  for (double z : {0.1, 0.2, 0.7, 1.0, 3.0, 8.0, 20.0, 50.0})
    for (double m : {1.0, 2.0}) {
      const double beta = z / m;
      CHECK(rel(phi(beta, m, 1.0), oracle::phi_quadrature(beta, m, 1.0)) <= 1e-8);
    }
}

TEST_CASE("moment linearity for random data") {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  const auto g = build_momentum_grid(30.0, 32, 16, 2, 0.3);
  const Kinematics kin(g, 1.3, 1.0);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_distribution(g, kin, rng);
    const auto h = random_distribution(g, kin, rng);
    const double a = U(rng), b = U(rng);
    std::vector<double> s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) s[j] = a * f[j] + b * h[j];
    const auto Nf = number_four_flow(f, kin), Nh = number_four_flow(h, kin), Ns = number_four_flow(s, kin);
    const double scale = std::abs(a) * Nf[0] + std::abs(b) * Nh[0];
    for (std::size_t mu = 0; mu < 2; ++mu) CHECK(std::abs(Ns[mu] - (a * Nf[mu] + b * Nh[mu])) <= 1e-13 * scale);
  }
}

TEST_CASE("beta solve invariants on random mixtures") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto g = build_momentum_grid(40.0, 64, 32);
  for (int t = 0; t < 20; ++t) {
    const std::size_t ns = 1 + t % 3;
    std::vector<SpeciesParams> sp;
    std::vector<Kinematics> kin;
    std::vector<std::vector<double>> fs;
    for (std::size_t i = 0; i < ns; ++i) {
      sp.push_back({"s", 0.5 + 2.5 * U(rng), 0.01 + U(rng)});
      kin.emplace_back(g, sp.back().mass, 1.0);
      fs.push_back(random_distribution(g, kin.back(), rng));
    }
    SpeciesSlices sl(fs.begin(), fs.end());
    const auto st = compute_auxiliary_state(sl, kin, sp, 1e-12);
    CHECK(st.residual <= 1e-10);
    CHECK(st.beta_tilde > 0.0);
    CHECK(rel(minkowski_dot(st.U_tilde, st.U_tilde), 1.0) <= 1e-10);
    CHECK(minkowski_dot(st.A, st.A) > 0.0);
    CHECK(beta_relation(st.bracket_lo, st.alpha, st.A, sp, 1.0) > 0.0);
    CHECK(beta_relation(st.bracket_hi, st.alpha, st.A, sp, 1.0) < 0.0);
    int changes = 0;
    double prev = beta_relation(st.bracket_lo, st.alpha, st.A, sp, 1.0);
    for (int k = 1; k <= 100; ++k) {
      const double b = st.bracket_lo + (st.bracket_hi - st.bracket_lo) * k / 100.0;
      const double v = beta_relation(b, st.alpha, st.A, sp, 1.0);
      if ((prev > 0) != (v > 0)) ++changes;
      prev = v;
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("exp_kernel_cell stays between its bounds") {
  std::mt19937 rng(505);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    const double a = std::pow(10.0, -9.0 + 12.0 * U(rng));
    const double l = U(rng), r = U(rng);
    const double v = exp_kernel_cell(a, l, r, 0.1);
    const double mass = -std::expm1(-a);
    CHECK(v >= std::min(l, r) * mass * (1 - 1e-14));
    CHECK(v <= std::max(l, r) * mass * (1 + 1e-14));
  }
}

TEST_CASE("solution operator keeps random nonnegative iterates nonnegative") {
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto pb = support::reference_mixture({30.0, 32, 12, 8, 2, 0.3});
  auto f = propagate_boundary(pb);
  for (int t = 0; t < 3; ++t) {
    auto g = f;
    for (auto& sp : g.data)
      for (double& v : sp) v *= 0.5 + U(rng);
    const auto psi = apply_solution_operator(pb, g);
    for (const auto& sp : psi.data)
      for (double v : sp) {
        CHECK(v >= 0.0);
        CHECK(std::isfinite(v));
      }
  }
}

TEST_CASE("converged iterations contract and are self-consistent") {
  std::mt19937 rng(707);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 4; ++t) {
    const double bl = 0.8 + 2 * U(rng), br = 0.8 + 2 * U(rng);
    const auto pb = support::juttner_problem({{"a", 1.0, 0.02 + 0.1 * U(rng)}, {"b", 1.5, 0.02 + 0.1 * U(rng)}},
                                             bl, br, {40.0, 128, 48, 32, 4, 0.2});
    const auto r = picard_iterate(pb);
    REQUIRE(r.report.converged);
    for (std::size_t n = 1; n < r.report.ratios.size(); ++n) CHECK(r.report.ratios[n] < 1.0);
    CHECK(r.report.verification_residual <= 2.0 * 1e-10);
    const auto dc = derived_constants(pb);
    const auto rep = certify(pb, r.field, r.aux, dc);
    for (const auto& e : rep.entries) {
      CAPTURE(e.name);
      CAPTURE(e.worst_margin);
      CHECK(e.passed);
    }
  }
}

TEST_CASE("derived constants are invariant under boundary scaling") {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto base = support::reference_mixture({30.0, 32, 16, 4, 1, 0.25});
  const auto d0 = derived_constants(base);
  for (int t = 0; t < 5; ++t) {
    const double s = std::pow(10.0, -3.0 + 6.0 * U(rng));
    BoundaryData bd = base.boundary();
    for (auto& f : bd.f_lr)
      for (double& v : f) v *= s;
    const SlabProblem pb(std::vector<SpeciesParams>(base.species().begin(), base.species().end()),
                         build_momentum_grid(30.0, 32, 16), build_spatial_grid(4), bd);
    const auto d = derived_constants(pb);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(rel(d.a_lower[i], s * d0.a_lower[i]) <= 1e-13);
      CHECK(rel(d.a_upper[i], s * d0.a_upper[i]) <= 1e-13);
      CHECK(rel(d.lambda[i], d0.lambda[i]) <= 1e-13);
    }
    CHECK(rel(d.gamma, d0.gamma) <= 1e-13);
  }
}

TEST_CASE("mirror symmetry of even data") {
  std::mt19937 rng(909);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto g = build_momentum_grid(12.0, 40, 10, 4, 0.35);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.p1(j) > 0) v[j] = U(rng);
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.p1(j) < 0) v[j] = v[g.mirror(j)];
    const auto [neg, pos] = integrate_halves(g, v);
    CHECK(neg == pos);
  }
}
