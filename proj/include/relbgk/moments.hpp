#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "relbgk/phase_grid.hpp"

namespace relbgk {

struct SpeciesParams {
  std::string label;
  double mass = 1.0;   // m_i > 0
  double omega = 0.0;  // collision frequency m_i / tau_i >= 0
};

/// Contravariant four-vector (a^0, a^1, a^2, a^3), signature (+,-,-,-).
struct FourVector {
  std::array<double, 4> a{0.0, 0.0, 0.0, 0.0};

  double operator[](std::size_t mu) const noexcept { return a[mu]; }
  double& operator[](std::size_t mu) noexcept { return a[mu]; }

  /// Euclidean length of the spatial part.
  double spatial_norm() const noexcept;

  friend FourVector operator+(FourVector l, const FourVector& r) noexcept {
    for (std::size_t mu = 0; mu < 4; ++mu) l.a[mu] += r.a[mu];
    return l;
  }
  friend FourVector operator*(double s, FourVector v) noexcept {
    for (auto& x : v.a) x *= s;
    return v;
  }
  friend bool operator==(const FourVector&, const FourVector&) = default;
};

/// p^0 = sqrt((c m)^2 + p1^2 + rho^2).
double p0(double m, double c, double p1, double rho) noexcept;

/// a^mu b_mu = a^0 b^0 - sum_j a^j b^j.
double minkowski_dot(const FourVector& a, const FourVector& b) noexcept;

/// Per-node energies p^0 and 1/p^0 for one species on one grid.
struct Kinematics {
  Kinematics(const MomentumGrid& grid, double mass, double c);

  const MomentumGrid* grid;
  double mass;
  double c;
  std::vector<double> p0;
  std::vector<double> inv_p0;
};

/// N^mu = c * int p^mu f dp / p^0; transverse components are exactly zero.
FourVector number_four_flow(std::span<const double> f, const Kinematics& kin);
FourVector number_four_flow(std::span<const double> f, const MomentumGrid& grid, double m,
                            double c);

/// Column T^{mu 1} = c * int p^mu p^1 f dp / p^0, returned as (T^01, T^11, 0, 0).
FourVector stress_energy_flux(std::span<const double> f, const Kinematics& kin);
FourVector stress_energy_flux(std::span<const double> f, const MomentumGrid& grid, double m,
                              double c);

/// int f dp / p^0 (the density-like weight alpha_i of the attractor).
double inverse_energy_moment(std::span<const double> f, const Kinematics& kin);

struct EckartFrame {
  double n = 0.0;  // number density
  FourVector U;    // Eckart four-velocity, U^mu U_mu = c^2
};

/// Splits a future-timelike four-flow as N^mu = n U^mu.
/// Throws NonTimelikeFlow when N^0 <= 0 or N^mu N_mu <= 0.
EckartFrame eckart_decompose(const FourVector& N, double c);

/// Full moment set of one species' distribution at one x.
struct MomentSet {
  double n = 0.0;
  FourVector U;
  FourVector N;
  FourVector T1;  // (T^01, T^11, 0, 0)
};

MomentSet compute_moments(std::span<const double> f, const Kinematics& kin);

// Modified Bessel functions of the second kind, exponentially scaled:
// returns e^z K_nu(z). Temme series for z < 2, Steed's continued fraction
// otherwise, so the result never overflows or underflows on (0, 1e300).
double bessel_k0_scaled(double z);
double bessel_k1_scaled(double z);
double bessel_k2_scaled(double z);

/// K_2(z) / K_1(z) for z > 0. Always > 1 and tends to 1 as z -> infinity.
double bessel_k_ratio(double z);

/// Phi(beta) = int e^{-c beta p0} dp / int e^{-c beta p0} dp/p0
///           = c m K_2(z)/K_1(z),  z = beta m c^2.
/// Strictly decreasing in beta with range (c m, infinity).
double phi(double beta, double m, double c);

/// d Phi / d beta = c m * m c^2 * (R^2 - 3R/z - 1), R = K_2/K_1.
double phi_derivative(double beta, double m, double c);

/// Inverse of phi: the beta with phi(beta) = y. Requires y > c m.
double phi_inverse(double y, double m, double c, double rel_tol = 1e-13);

/// int e^{-c beta p0} dp / p0 = 4 pi m^2 c^2 K_1(z)/z, multiplied by e^{z}
/// (the same shift the attractor uses to stay in range).
double juttner_inverse_energy_norm_scaled(double beta, double m, double c);

/// int e^{-c beta p0} dp = 4 pi m^3 c^3 K_2(z)/z, multiplied by e^{z}.
double juttner_mass_norm_scaled(double beta, double m, double c);

}  // namespace relbgk
