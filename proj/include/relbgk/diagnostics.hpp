#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "relbgk/attractor.hpp"
#include "relbgk/slab_solver.hpp"

namespace relbgk {

/// Constants of the solution space built from the inflow data alone.
struct DerivedConstants {
  std::vector<double> alpha_lr;  // int f_LR dp/p0
  std::vector<double> mass_lr;   // int f_LR dp
  std::vector<double> a_lower;   // alpha_lr / 4
  std::vector<double> a_upper;   // 2 mass_lr
  std::vector<double> lambda;    // sqrt(int f * int f/p0^2) / int f/p0
  double gamma = 0.0;            // max_i lambda_i^{-1/4}
  double U_upper = 0.0;          // bound on |U~|
  double beta_lower = 0.0;       // min_j Phi_j^{-1}(2 a_{j,u}/a_{j,l})
  double beta_upper = 0.0;       // max_i Phi_i^{-1}(gamma c m_i sqrt(lambda_i))
  std::vector<double> C1;        // attractor envelope amplitude per species
  double C2 = 0.0;               // attractor envelope decay rate
};

/// Throws InvalidBoundary if some a_{i,l} vanishes or lambda_i <= 1.
DerivedConstants derived_constants(const SlabProblem& problem);

struct CertificateEntry {
  std::string name;
  bool passed = false;
  double worst_margin = 0.0;  // >= 0 when the check holds; relative where noted
  std::string location;
};

struct CertificateReport {
  std::vector<CertificateEntry> entries;

  bool all_passed() const noexcept;
  const CertificateEntry* find(const std::string& name) const noexcept;
  void append(std::vector<CertificateEntry> more);
};

/// f_i >= 0, a_{i,l} <= int f_i dp/p0 and int f_i dp <= a_{i,u} at every x.
std::vector<CertificateEntry> check_property_A(const DistributionField& f,
                                               const DerivedConstants& consts,
                                               const SlabProblem& problem);

/// gamma sum c m_i w_i lambda_i int f_LR/p0 <= sum w_i Phi_i(beta~(x)) sqrt(lambda_i) int f_LR/p0
/// at every x node.
CertificateEntry check_property_B(const AuxiliaryProfile& aux, const DerivedConstants& consts,
                                  const SlabProblem& problem);

/// |U~(x)| <= U_u and beta_l <= beta~(x) <= beta_u.
std::vector<CertificateEntry> check_lemma_bounds(const AuxiliaryProfile& aux,
                                                 const DerivedConstants& consts);

/// J_i(x, p) <= C1_i e^{-C2 p0} for every species, x node and momentum node.
std::vector<CertificateEntry> check_attractor_envelope(const DistributionField& J,
                                                       const DerivedConstants& consts,
                                                       const SlabProblem& problem);

struct FluxProfiles {
  std::vector<std::vector<double>> particle;  // per species, F_i(x) = int (p1/p0) f_i dp
  std::vector<double> T01;                    // total c int p1 f dp
  std::vector<double> T11;                    // total c int p1^2 f dp/p0
};

FluxProfiles flux_profiles(const DistributionField& f, const SlabProblem& problem);

/// Stationary conservation: F_i, T^01 and T^11 constant in x. Residuals are
/// max_x |F(x) - mean| normalised by max(|mean|, a_{i,u}) per species and by
/// max(|mean T^01|, |mean T^11|) for the totals.
std::vector<CertificateEntry> flux_conservation(const DistributionField& f,
                                                const DerivedConstants& consts,
                                                const SlabProblem& problem,
                                                double tolerance = 1e-6);

/// S^1(x) = -k c sum_i int (p1/p0) f_i ln f_i dp, with 0 ln 0 = 0.
std::vector<double> entropy_flux(const DistributionField& f, const SlabProblem& problem);

/// k c max_x sum_i int |p1/p0| |f_i ln f_i| dp: the size of the one-sided
/// entropy fluxes, used as a floor when S^1 itself is near zero.
double entropy_flux_scale(const DistributionField& f, const SlabProblem& problem);

/// min_k (S^1(x_{k+1}) - S^1(x_k)) / h >= -rel_tol * max(max |S^1|, floor).
CertificateEntry check_entropy_monotone(std::span<const double> S1, double h,
                                        double rel_tol = 1e-8, double floor = 0.0);

struct CertifyOptions {
  Normalization normalization = Normalization::discrete;
  double flux_tolerance = 1e-6;
  double entropy_tolerance = 1e-8;
};

/// Runs every check on a solution and its auxiliary profile.
CertificateReport certify(const SlabProblem& problem, const DistributionField& f,
                          const AuxiliaryProfile& aux, const DerivedConstants& consts,
                          const CertifyOptions& options = {});

void write_report(std::ostream& os, const CertificateReport& report);

}  // namespace relbgk
