#include "relbgk/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relbgk/errors.hpp"
#include "relbgk/root_find.hpp"

namespace relbgk {

std::vector<double> relation_weights(std::span<const SpeciesParams> species) {
  std::vector<double> w(species.size());
  bool any = false;
  for (std::size_t i = 0; i < species.size(); ++i) {
    w[i] = species[i].omega;
    any = any || w[i] > 0.0;
  }
  if (!any) std::fill(w.begin(), w.end(), 1.0);
  return w;
}

FourVector aggregate_flow(const SpeciesSlices& f, std::span<const Kinematics> kin,
                          std::span<const SpeciesParams> species) {
  const auto w = relation_weights(species);
  FourVector A;
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (w[i] == 0.0) continue;
    A = A + w[i] * number_four_flow(f[i], kin[i]);
  }
  if (!(A[0] > 0.0) || !(minkowski_dot(A, A) > 0.0))
    throw DegenerateFlow("aggregate flow is not future-timelike (A^0=" + std::to_string(A[0]) +
                         ", A.A=" + std::to_string(minkowski_dot(A, A)) + ")");
  return A;
}

FourVector auxiliary_velocity(const FourVector& A, double c) {
  const double norm2 = minkowski_dot(A, A);
  if (!(A[0] > 0.0) || !(norm2 > 0.0))
    throw DegenerateFlow("auxiliary_velocity: aggregate flow is not future-timelike");
  return (c / std::sqrt(norm2)) * A;
}

double beta_relation(double beta, std::span<const double> alpha, const FourVector& A,
                     std::span<const SpeciesParams> species, double c) {
  const auto w = relation_weights(species);
  double lhs = 0.0;
  for (std::size_t i = 0; i < species.size(); ++i)
    if (w[i] > 0.0) lhs += w[i] * phi(beta, species[i].mass, c) * alpha[i];
  return lhs - std::sqrt(minkowski_dot(A, A)) / c;
}

BetaSolve solve_beta(std::span<const double> alpha, const FourVector& A,
                     std::span<const SpeciesParams> species, double c, double tol) {
  const auto w = relation_weights(species);
  double floor = 0.0;
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (!(alpha[i] >= 0.0))
      throw NoSolution("solve_beta: alpha of species " + std::to_string(i) + " is negative");
    floor += w[i] * c * species[i].mass * alpha[i];
  }
  const double target = std::sqrt(std::max(minkowski_dot(A, A), 0.0)) / c;
  if (!(floor > 0.0) || !(target > floor))
    throw NoSolution("solve_beta: sqrt(A.A)/c = " + std::to_string(target) +
                     " does not exceed sum w c m alpha = " + std::to_string(floor) +
                     " (momentum grid too coarse for the data?)");

  auto g = [&](double b) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < species.size(); ++i)
      if (w[i] > 0.0) lhs += w[i] * phi(b, species[i].mass, c) * alpha[i];
    return lhs - target;
  };
  auto dg = [&](double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < species.size(); ++i)
      if (w[i] > 0.0) s += w[i] * phi_derivative(b, species[i].mass, c) * alpha[i];
    return s;
  };
  const auto root = find_decreasing_root(g, dg, tol * floor);
  return {root.x, std::abs(root.value) / floor, root.lo, root.hi};
}

BetaSolve solve_beta(const SpeciesSlices& f, std::span<const Kinematics> kin,
                     std::span<const SpeciesParams> species, double tol) {
  std::vector<double> alpha(species.size());
  for (std::size_t i = 0; i < species.size(); ++i) alpha[i] = inverse_energy_moment(f[i], kin[i]);
  const FourVector A = aggregate_flow(f, kin, species);
  return solve_beta(alpha, A, species, kin.front().c, tol);
}

AuxiliaryState compute_auxiliary_state(const SpeciesSlices& f, std::span<const Kinematics> kin,
                                       std::span<const SpeciesParams> species, double tol) {
  const double c = kin.front().c;
  AuxiliaryState s;
  s.alpha.resize(species.size());
  for (std::size_t i = 0; i < species.size(); ++i)
    s.alpha[i] = inverse_energy_moment(f[i], kin[i]);
  s.A = aggregate_flow(f, kin, species);
  s.U_tilde = auxiliary_velocity(s.A, c);
  const auto b = solve_beta(s.alpha, s.A, species, c, tol);
  s.beta_tilde = b.beta;
  s.residual = b.residual;
  s.bracket_lo = b.lo;
  s.bracket_hi = b.hi;
  return s;
}

void evaluate_attractor(double alpha, double beta, const FourVector& U, const Kinematics& kin,
                        Normalization normalization, std::span<double> out) {
  const MomentumGrid& g = *kin.grid;
  if (out.size() != g.size()) throw Error("evaluate_attractor: output size mismatch");
  if (alpha == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  // U.p >= m c^2, so the shifted exponent is <= 0 and the shift cancels
  // against the equally shifted denominator.
  const double rest = kin.mass * kin.c * kin.c;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double u_dot_p = U[0] * kin.p0[j] - U[1] * g.p1(j);
    out[j] = std::exp(-beta * (u_dot_p - rest));
  }
  double denom = 0.0;
  if (normalization == Normalization::discrete) {
    std::vector<double> tmp(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) tmp[j] = out[j] * kin.inv_p0[j];
    denom = integrate_momentum(g, tmp);
  } else {
    denom = juttner_inverse_energy_norm_scaled(beta, kin.mass, kin.c);
  }
  const double scale = alpha / denom;
  for (auto& v : out) v *= scale;
}

std::vector<double> evaluate_attractor(double alpha, double beta, const FourVector& U,
                                       const Kinematics& kin, Normalization normalization) {
  std::vector<double> out(kin.grid->size());
  evaluate_attractor(alpha, beta, U, kin, normalization, out);
  return out;
}

EnvelopeReport attractor_envelope_check(std::span<const double> J, double C1, double C2,
                                        const Kinematics& kin) {
  EnvelopeReport r;
  double jmax = 0.0;
  for (double v : J) jmax = std::max(jmax, v);
  r.slack = 1e-12 * jmax;
  r.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < J.size(); ++j) {
    const double excess = J[j] - C1 * std::exp(-C2 * kin.p0[j]);
    if (excess > r.max_excess) {
      r.max_excess = excess;
      r.worst_node = j;
    }
  }
  r.passed = r.max_excess <= r.slack;
  return r;
}

}  // namespace relbgk
