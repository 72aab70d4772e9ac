#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "relbgk/errors.hpp"
#include "relbgk/phase_grid.hpp"

using namespace relbgk;
using oracle::rel;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u}) {
    const auto r = gauss_legendre(n);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(rel(sum, 2.0) <= 1e-14);
    for (std::size_t i = 1; i < n; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    // x^(2n-2) is the highest even power integrated exactly
    const double deg = 2.0 * n - 2.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
    CHECK(rel(s, 2.0 / (deg + 1.0)) <= 1e-13);
  }
}

TEST_CASE("momentum grid structural invariants") {
  for (std::size_t panels : {1u, 2u, 4u}) {
    const auto g = build_momentum_grid(10.0, 32, 12, panels, 0.3);
    CHECK(g.size() == 32u * 12u);
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(g.weight(j) > 0.0);
      CHECK(g.p1(j) != 0.0);
      CHECK(g.rho(j) > 0.0);
      CHECK(g.rho(j) <= 10.0);
      const auto m = g.mirror(j);
      CHECK(g.p1(m) == -g.p1(j));
      CHECK(g.rho(m) == g.rho(j));
      CHECK(g.weight(m) == g.weight(j));
    }
  }
}

TEST_CASE("integrate_momentum on elementary integrands") {
  const double P = 7.5;
  const auto g = build_momentum_grid(P, 16, 8);
  std::vector<double> ones(g.size(), 1.0), zeros(g.size(), 0.0), p1(g.size()), pos(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    p1[j] = g.p1(j);
    pos[j] = g.p1(j) > 0.0 ? 1.0 : 0.0;
  }
  const double measure = 2.0 * std::numbers::pi * P * P * P;
  CHECK(integrate_momentum(g, zeros) == 0.0);
  CHECK(rel(integrate_momentum(g, ones), measure) <= 1e-12);
  CHECK(integrate_momentum(g, p1) == 0.0);
  CHECK(rel(integrate_momentum(g, pos), 0.5 * measure) <= 1e-12);
  std::vector<double> wrong(g.size() - 1, 1.0);
  CHECK_THROWS_AS(integrate_momentum(g, wrong), Error);
}

TEST_CASE("graded panels keep the domain measure") {
  const auto g = build_momentum_grid(30.0, 128, 48, 4, 0.2);
  std::vector<double> ones(g.size(), 1.0);
  CHECK(rel(integrate_momentum(g, ones), 2.0 * std::numbers::pi * 27000.0) <= 1e-12);
}

TEST_CASE("polynomial exactness on the cylinder") {
  const double P = 3.0;
  const std::size_t n1 = 12, nr = 6;
  const auto g = build_momentum_grid(P, n1, nr);
  // p1 half-lines carry n1/2 nodes each: exact to degree n1 - 1 in p1.
  // The rho rule is exact to degree 2 nr - 1 including the factor rho.
  for (int a = 0; a <= static_cast<int>(n1) - 1; a += 2)
    for (int b = 0; b + 1 <= 2 * static_cast<int>(nr) - 1; ++b) {
      std::vector<double> v(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::pow(g.p1(j), a) * std::pow(g.rho(j), b);
      const double exact = 2.0 * std::pow(P, a + 1) / (a + 1) * 2.0 * std::numbers::pi *
                           std::pow(P, b + 2) / (b + 2);
      CHECK(rel(integrate_momentum(g, v), exact) <= 1e-12);
    }
}

TEST_CASE("Juttner normalisation against the radial oracle") {
  const auto g = build_momentum_grid(30.0, 64, 64);
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    f[j] = std::exp(-std::sqrt(1.0 + g.p1(j) * g.p1(j) + g.rho(j) * g.rho(j)));
  const double ref = static_cast<double>(
      oracle::radial([](double r) { return std::exp(-std::sqrt(1.0 + r * r)); }));
  // independent closed form 4 pi K_2(1)
  const double closed = 4.0 * std::numbers::pi * oracle::bessel_k_scaled(2.0, 1.0) * std::exp(-1.0);
  CHECK(rel(ref, closed) <= 1e-13);
  CHECK(rel(integrate_momentum(g, f), ref) <= 1e-10);
}

TEST_CASE("Juttner normalisation error decreases under refinement") {
  const double ref = static_cast<double>(
      oracle::radial([](double r) { return std::exp(-std::sqrt(1.0 + r * r)); }));
  double prev = 1.0;
  for (std::size_t n : {8u, 16u, 32u}) {
    const auto g = build_momentum_grid(30.0, n, n);
    std::vector<double> f(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
      f[j] = std::exp(-std::sqrt(1.0 + g.p1(j) * g.p1(j) + g.rho(j) * g.rho(j)));
    const double err = rel(integrate_momentum(g, f), ref);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("mirror-even data gives bit-identical halves") {
  const auto g = build_momentum_grid(5.0, 24, 10, 3, 0.4);
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::exp(-std::abs(g.p1(j))) * (1 + g.rho(j));
  const auto [neg, pos] = integrate_halves(g, v);
  CHECK(neg == pos);
}

TEST_CASE("momentum grid rejects bad parameters") {
  CHECK_THROWS_AS(build_momentum_grid(0.0, 8, 4), Error);
  CHECK_THROWS_AS(build_momentum_grid(-1.0, 8, 4), Error);
  CHECK_THROWS_AS(build_momentum_grid(1.0, 7, 4), Error);
  CHECK_THROWS_AS(build_momentum_grid(1.0, 2, 4), Error);
  CHECK_THROWS_AS(build_momentum_grid(1.0, 8, 1), Error);
  CHECK_THROWS_AS(build_momentum_grid(1.0, 12, 4, 4), Error);
  CHECK_THROWS_AS(build_momentum_grid(1.0, 8, 4, 2, 1.0), Error);
}

TEST_CASE("spatial grid examples") {
  const auto g2 = build_spatial_grid(2);
  REQUIRE(g2.size() == 3u);
  CHECK(g2.x(0) == 0.0);
  CHECK(g2.x(1) == 0.5);
  CHECK(g2.x(2) == 1.0);
  CHECK(build_spatial_grid(4).spacing() == 0.25);
  const auto g10 = build_spatial_grid(10);
  CHECK(std::abs(g10.x(3) - 0.3) <= 1e-15);
  CHECK(g10.x(10) == 1.0);
  for (std::size_t k = 1; k < g10.size(); ++k)
    CHECK(std::abs((g10.x(k) - g10.x(k - 1)) - g10.spacing()) <= 1e-15);
  CHECK_THROWS_AS(build_spatial_grid(1), Error);
  CHECK_THROWS_AS(build_spatial_grid(0), Error);
}
