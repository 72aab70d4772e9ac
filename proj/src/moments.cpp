#include "relbgk/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relbgk/errors.hpp"
#include "relbgk/root_find.hpp"

namespace relbgk {

double FourVector::spatial_norm() const noexcept {
  return std::sqrt(a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

double p0(double m, double c, double p1, double rho) noexcept {
  const double cm = c * m;
  return std::sqrt(cm * cm + p1 * p1 + rho * rho);
}

double minkowski_dot(const FourVector& a, const FourVector& b) noexcept {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

Kinematics::Kinematics(const MomentumGrid& g, double m, double c_)
    : grid(&g), mass(m), c(c_), p0(g.size()), inv_p0(g.size()) {
  for (std::size_t j = 0; j < g.size(); ++j) {
    p0[j] = relbgk::p0(m, c, g.p1(j), g.rho(j));
    inv_p0[j] = 1.0 / p0[j];
  }
}

namespace {

// Half-grid sums of w * f * h for a node function h, in integrate_halves order.
template <class H>
double weighted_sum(const MomentumGrid& grid, std::span<const double> f, H&& h) {
  if (f.size() != grid.size())
    throw Error("moment: expected " + std::to_string(grid.size()) + " values, got " +
                std::to_string(f.size()));
  const std::size_t half = grid.n_p1() / 2;
  const std::size_t nr = grid.n_rho();
  const auto w = grid.weights();
  double neg = 0.0;
  double pos = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t in = (half - 1 - k) * nr;
    const std::size_t ip = (half + k) * nr;
    for (std::size_t ir = 0; ir < nr; ++ir) {
      neg += w[in + ir] * f[in + ir] * h(in + ir);
      pos += w[ip + ir] * f[ip + ir] * h(ip + ir);
    }
  }
  return neg + pos;
}

}  // namespace

FourVector number_four_flow(std::span<const double> f, const Kinematics& kin) {
  const MomentumGrid& g = *kin.grid;
  FourVector N;
  N[0] = kin.c * weighted_sum(g, f, [](std::size_t) { return 1.0; });
  N[1] = kin.c * weighted_sum(g, f, [&](std::size_t j) { return g.p1(j) * kin.inv_p0[j]; });
  return N;
}

FourVector number_four_flow(std::span<const double> f, const MomentumGrid& grid, double m,
                            double c) {
  return number_four_flow(f, Kinematics(grid, m, c));
}

FourVector stress_energy_flux(std::span<const double> f, const Kinematics& kin) {
  const MomentumGrid& g = *kin.grid;
  FourVector T;
  T[0] = kin.c * weighted_sum(g, f, [&](std::size_t j) { return g.p1(j); });
  T[1] = kin.c *
         weighted_sum(g, f, [&](std::size_t j) { return g.p1(j) * g.p1(j) * kin.inv_p0[j]; });
  return T;
}

FourVector stress_energy_flux(std::span<const double> f, const MomentumGrid& grid, double m,
                              double c) {
  return stress_energy_flux(f, Kinematics(grid, m, c));
}

double inverse_energy_moment(std::span<const double> f, const Kinematics& kin) {
  return weighted_sum(*kin.grid, f, [&](std::size_t j) { return kin.inv_p0[j]; });
}

EckartFrame eckart_decompose(const FourVector& N, double c) {
  const double norm2 = minkowski_dot(N, N);
  if (!(N[0] > 0.0) || !(norm2 > 0.0))
    throw NonTimelikeFlow("eckart_decompose: particle four-flow is not future-timelike (N^0=" +
                          std::to_string(N[0]) + ", N.N=" + std::to_string(norm2) + ")");
  EckartFrame frame;
  const double len = std::sqrt(norm2);
  frame.n = len / c;
  frame.U = (c / len) * N;
  return frame;
}

MomentSet compute_moments(std::span<const double> f, const Kinematics& kin) {
  MomentSet m;
  m.N = number_four_flow(f, kin);
  m.T1 = stress_energy_flux(f, kin);
  const auto frame = eckart_decompose(m.N, kin.c);
  m.n = frame.n;
  m.U = frame.U;
  return m;
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kBesselEps = 1e-17;
constexpr int kBesselMaxIter = 10000;

struct ScaledK01 {
  double k0;
  double k1;
};

// e^z K_0(z), e^z K_1(z) via the nu = 0 specialisation of Temme's series.
ScaledK01 temme_series(double z) {
  const double half = 0.5 * z;
  const double d = half * half;
  double ff = -std::log(half) - kEulerGamma;
  double p = 0.5;
  double q = 0.5;
  double coef = 1.0;
  double sum = ff;
  double sum1 = p;
  for (int i = 1; i < kBesselMaxIter; ++i) {
    const double di = i;
    ff = (di * ff + p + q) / (di * di);
    coef *= d / di;
    p /= di;
    q /= di;
    const double del = coef * ff;
    sum += del;
    sum1 += coef * (p - di * ff);
    if (std::abs(del) < std::abs(sum) * kBesselEps) break;
  }
  const double ez = std::exp(z);
  return {sum * ez, sum1 * (2.0 / z) * ez};
}

// Steed's continued fraction CF2 for nu = 0, scaled by e^z.
ScaledK01 steed_cf2(double z) {
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double cc = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < kBesselMaxIter; ++i) {
    a -= 2.0 * i;
    cc = -a * cc / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += cc * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kBesselEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * z)) / s;
  return {k0, k0 * (z + 0.5 - h) / z};
}

ScaledK01 scaled_k01(double z) {
  if (!(z > 0.0)) throw Error("modified Bessel K: argument must be positive");
  return z < 2.0 ? temme_series(z) : steed_cf2(z);
}

// K_0 / K_1 without forming either value for large z.
double k0_over_k1(double z) {
  if (z < 2.0) {
    const auto k = temme_series(z);
    return k.k0 / k.k1;
  }
  // CF2 yields K_1/K_0 = (z + 1/2 - h)/z directly.
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double a = -0.25;
  for (int i = 1; i < kBesselMaxIter; ++i) {
    a -= 2.0 * i;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    if (std::abs(delh) < std::abs(h) * kBesselEps) break;
  }
  h *= 0.25;
  return z / (z + 0.5 - h);
}

}  // namespace

double bessel_k0_scaled(double z) { return scaled_k01(z).k0; }
double bessel_k1_scaled(double z) { return scaled_k01(z).k1; }
double bessel_k2_scaled(double z) {
  const auto k = scaled_k01(z);
  return k.k0 + (2.0 / z) * k.k1;
}

double bessel_k_ratio(double z) {
  if (!(z > 0.0)) throw Error("bessel_k_ratio: argument must be positive");
  return k0_over_k1(z) + 2.0 / z;
}

double phi(double beta, double m, double c) {
  if (!(beta > 0.0)) throw Error("phi: beta must be positive");
  return c * m * bessel_k_ratio(beta * m * c * c);
}

double phi_derivative(double beta, double m, double c) {
  const double z = beta * m * c * c;
  const double r = bessel_k_ratio(z);
  return c * m * m * c * c * (r * r - 3.0 * r / z - 1.0);
}

double phi_inverse(double y, double m, double c, double rel_tol) {
  if (!(y > c * m))
    throw NoSolution("phi_inverse: target " + std::to_string(y) +
                     " is not above the infimum c*m = " + std::to_string(c * m));
  const auto root = find_decreasing_root([&](double b) { return phi(b, m, c) - y; },
                                         [&](double b) { return phi_derivative(b, m, c); },
                                         rel_tol * y);
  return root.x;
}

double juttner_inverse_energy_norm_scaled(double beta, double m, double c) {
  const double z = beta * m * c * c;
  return 4.0 * std::numbers::pi * m * m * c * c * bessel_k1_scaled(z) / z;
}

double juttner_mass_norm_scaled(double beta, double m, double c) {
  const double z = beta * m * c * c;
  return 4.0 * std::numbers::pi * m * m * m * c * c * c * bessel_k2_scaled(z) / z;
}

}  // namespace relbgk
