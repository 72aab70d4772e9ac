#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's quadrature or special-function code.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "relbgk/phase_grid.hpp"

namespace oracle {

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/// int_0^inf g(r) dr by the exp-sinh (double exponential) rule.
template <class G>
long double half_line(G g, double scale = 1.0, double h = 1.0 / 128.0, double T = 5.0) {
  const long double hp = std::numbers::pi_v<long double> / 2;
  long double sum = 0.0L;
  const long n = static_cast<long>(T / h);
  for (long k = -n; k <= n; ++k) {
    const long double t = k * static_cast<long double>(h);
    const long double x = std::exp(hp * std::sinh(t));
    const long double dx = hp * std::cosh(t) * x;
    const double r = static_cast<double>(x) * scale;
    if (!std::isfinite(r)) continue;
    const long double v = g(r);
    if (v != 0.0L) sum += v * dx;
  }
  return sum * h * scale;
}

/// int_{R^3} g(|p|) dp = 4 pi int r^2 g(r) dr.
template <class G>
long double radial(G g, double scale = 1.0) {
  return 4.0L * std::numbers::pi_v<long double> *
         half_line([&](double r) { return static_cast<long double>(r) * r * g(r); }, scale);
}

/// e^z K_nu(z) from int_0^inf e^{-z (cosh t - 1)} cosh(nu t) dt (trapezoid;
/// spectrally accurate for this even analytic integrand).
inline double bessel_k_scaled(double nu, double z) {
  const long double h = 1.0L / 256.0L;
  long double sum = 0.5L;
  for (long k = 1;; ++k) {
    const long double t = k * h;
    const long double e = z * (std::cosh(t) - 1.0L);
    if (e > 800.0L) break;
    sum += std::exp(-e) * std::cosh(nu * t);
  }
  return static_cast<double>(sum * h);
}

/// Phi from the defining ratio int e^{-c beta p0} dp / int e^{-c beta p0} dp/p0,
/// computed by radial quadrature (the factor e^{beta m c^2} cancels).
inline double phi_quadrature(double beta, double m, double c) {
  auto p0 = [&](double r) { return std::sqrt(c * c * m * m + r * r); };
  auto w = [&](double r) { return std::exp(-c * beta * (p0(r) - c * m)); };
  const double scale = 1.0 / (c * beta);
  const long double num = radial([&](double r) { return static_cast<long double>(w(r)); }, scale);
  const long double den =
      radial([&](double r) { return static_cast<long double>(w(r) / p0(r)); }, scale);
  return static_cast<double>(num / den);
}

/// a int_0^1 e^{-a(1-u)} (Jl + (Jr - Jl) u) du as a power series in a.
inline double kernel_cell_series(double a, double Jl, double Jr) {
  long double sum = 0.0L;
  long double term = 1.0L;  // (-a)^n / n!
  for (int n = 0; n < 60; ++n) {
    sum += term * (Jl / (n + 1.0L) + (Jr - Jl) / ((n + 1.0L) * (n + 2.0L)));
    term *= -static_cast<long double>(a) / (n + 1);
  }
  return static_cast<double>(a * sum);
}

/// Brute-force moments with long double accumulation in node order.
struct Moments {
  long double N0 = 0, N1 = 0, T01 = 0, T11 = 0, alpha = 0, mass = 0;
};

inline Moments brute_moments(std::span<const double> f, const relbgk::MomentumGrid& g, double m,
                             double c) {
  Moments r;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const long double p1 = g.p1(j);
    const long double rho = g.rho(j);
    const long double p0 = std::sqrt((long double)c * c * m * m + p1 * p1 + rho * rho);
    const long double w = g.weight(j) * (long double)f[j];
    r.N0 += c * w;
    r.N1 += c * w * p1 / p0;
    r.T01 += c * w * p1;
    r.T11 += c * w * p1 * p1 / p0;
    r.alpha += w / p0;
    r.mass += w;
  }
  return r;
}

/// e^{-beta (U.p - m c^2)} for U = gamma (c, u), evaluated from scratch.
inline double drifted_juttner(double beta, double u, double m, double c, double p1, double rho) {
  const double gamma = 1.0 / std::sqrt(1.0 - u * u / (c * c));
  const double energy = std::sqrt(m * m * c * c + p1 * p1 + rho * rho);
  return std::exp(-beta * (gamma * (c * energy - u * p1) - m * c * c));
}

/// Rest Juttner e^{-beta c (p0 - m c)} sampled on all nodes.
inline std::vector<double> rest_juttner(const relbgk::MomentumGrid& g, double beta, double m,
                                        double c, double amplitude = 1.0) {
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    f[j] = amplitude * drifted_juttner(beta, 0.0, m, c, g.p1(j), g.rho(j));
  return f;
}

}  // namespace oracle
