#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relbgk/moments.hpp"

namespace relbgk {

/// How the attractor denominator int e^{-c beta p0} dp/p0 is evaluated.
enum class Normalization {
  /// Grid quadrature of e^{-beta U.p}/p0 in the local frame, so that the
  /// on-grid int J dp/p0 equals alpha exactly.
  discrete,
  /// Closed form 4 pi m^2 c^2 K_1(beta m c^2) / (beta m c^2).
  continuum,
};

/// Mixture-wide state that parameterises every species' attractor at one x.
struct AuxiliaryState {
  double beta_tilde = 0.0;
  FourVector U_tilde;
  FourVector A;                // sum_i omega_i N_i
  std::vector<double> alpha;   // int f_i dp/p0 per species
  double residual = 0.0;       // |G(beta)| / sum_i w_i c m_i alpha_i
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct AuxiliaryProfile {
  std::vector<AuxiliaryState> states;  // one per x node
};

using SpeciesSlices = std::vector<std::span<const double>>;

/// Weights entering A^mu and the temperature relation. Equal to omega_i
/// unless every omega_i vanishes; the relation is homogeneous in omega, so
/// that limit is taken with equal weights.
std::vector<double> relation_weights(std::span<const SpeciesParams> species);

/// A^mu = sum_i omega_i c int p^mu f_i dp/p0. Throws DegenerateFlow unless
/// A is future-timelike.
FourVector aggregate_flow(const SpeciesSlices& f, std::span<const Kinematics> kin,
                          std::span<const SpeciesParams> species);

/// U~ = c A / sqrt(A.A). Throws DegenerateFlow for non-timelike A.
FourVector auxiliary_velocity(const FourVector& A, double c);

struct BetaSolve {
  double beta = 0.0;
  double residual = 0.0;  // normalised
  double lo = 0.0;
  double hi = 0.0;
};

/// G(beta) = sum_i w_i Phi_i(beta) alpha_i - sqrt(A.A)/c, strictly decreasing.
double beta_relation(double beta, std::span<const double> alpha, const FourVector& A,
                     std::span<const SpeciesParams> species, double c);

/// Unique root of beta_relation. Throws NoSolution when sqrt(A.A)/c does not
/// exceed the infimum sum_i w_i c m_i alpha_i.
BetaSolve solve_beta(std::span<const double> alpha, const FourVector& A,
                     std::span<const SpeciesParams> species, double c, double tol = 1e-12);

BetaSolve solve_beta(const SpeciesSlices& f, std::span<const Kinematics> kin,
                     std::span<const SpeciesParams> species, double tol = 1e-12);

/// alpha_i, A, U~ and beta~ from the species distributions at one x.
AuxiliaryState compute_auxiliary_state(const SpeciesSlices& f, std::span<const Kinematics> kin,
                                       std::span<const SpeciesParams> species,
                                       double tol = 1e-12);

/// J = alpha e^{-beta U.p} / int e^{-c beta p0} dp/p0 at every grid node.
std::vector<double> evaluate_attractor(double alpha, double beta, const FourVector& U,
                                       const Kinematics& kin,
                                       Normalization normalization = Normalization::discrete);

void evaluate_attractor(double alpha, double beta, const FourVector& U, const Kinematics& kin,
                        Normalization normalization, std::span<double> out);

struct EnvelopeReport {
  bool passed = true;
  double max_excess = 0.0;  // max_j (J - C1 e^{-C2 p0}), <= slack when passed
  double slack = 0.0;
  std::size_t worst_node = 0;
};

/// Checks J <= C1 e^{-C2 p0} nodewise with 1e-12 relative slack.
EnvelopeReport attractor_envelope_check(std::span<const double> J, double C1, double C2,
                                        const Kinematics& kin);

}  // namespace relbgk
