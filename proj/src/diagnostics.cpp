#include "relbgk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace relbgk {

namespace {

std::string where(std::size_t x_node, std::size_t species, std::size_t node) {
  std::ostringstream os;
  os << "x_node=" << x_node << " species=" << species;
  if (node != std::numeric_limits<std::size_t>::max()) os << " momentum_node=" << node;
  return os.str();
}

constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

}  // namespace

DerivedConstants derived_constants(const SlabProblem& problem) {
  const auto species = problem.species();
  const auto kin = problem.kinematics();
  const double c = problem.c();
  const std::size_t ns = species.size();
  DerivedConstants dc;
  dc.alpha_lr.resize(ns);
  dc.mass_lr.resize(ns);
  dc.a_lower.resize(ns);
  dc.a_upper.resize(ns);
  dc.lambda.resize(ns);
  dc.C1.resize(ns);

  dc.gamma = 0.0;
  std::vector<double> tmp(problem.grid().size());
  for (std::size_t i = 0; i < ns; ++i) {
    const auto& f = problem.boundary().f_lr[i];
    dc.alpha_lr[i] = inverse_energy_moment(f, kin[i]);
    dc.mass_lr[i] = integrate_momentum(problem.grid(), f);
    for (std::size_t j = 0; j < tmp.size(); ++j) tmp[j] = f[j] * kin[i].inv_p0[j] * kin[i].inv_p0[j];
    const double second = integrate_momentum(problem.grid(), tmp);
    if (!(dc.alpha_lr[i] > 0.0))
      throw InvalidBoundary("species " + std::to_string(i) + ": a_l = 0");
    dc.a_lower[i] = 0.25 * dc.alpha_lr[i];
    dc.a_upper[i] = 2.0 * dc.mass_lr[i];
    dc.lambda[i] = std::sqrt(dc.mass_lr[i] * second) / dc.alpha_lr[i];
    if (!(dc.lambda[i] > 1.0))
      throw InvalidBoundary("species " + std::to_string(i) + ": lambda = " +
                            std::to_string(dc.lambda[i]) + " is not above 1");
    dc.gamma = std::max(dc.gamma, std::pow(dc.lambda[i], -0.25));
  }

  double max_au = 0.0;
  double min_mal = std::numeric_limits<double>::infinity();
  dc.beta_lower = std::numeric_limits<double>::infinity();
  dc.beta_upper = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const double m = species[i].mass;
    max_au = std::max(max_au, dc.a_upper[i]);
    min_mal = std::min(min_mal, m * dc.a_lower[i]);
    const double lower_arg = 2.0 * dc.a_upper[i] / dc.a_lower[i];
    const double upper_arg = dc.gamma * c * m * std::sqrt(dc.lambda[i]);
    if (!(lower_arg > c * m) || !(upper_arg > c * m))
      throw InvalidBoundary("species " + std::to_string(i) +
                            ": Phi^{-1} argument does not exceed c m");
    dc.beta_lower = std::min(dc.beta_lower, phi_inverse(lower_arg, m, c));
    dc.beta_upper = std::max(dc.beta_upper, phi_inverse(upper_arg, m, c));
  }
  dc.U_upper = c * max_au / min_mal;
  dc.C2 = dc.beta_lower * (std::sqrt(c * c + dc.U_upper * dc.U_upper) - dc.U_upper);
  for (std::size_t i = 0; i < ns; ++i) {
    const double m = species[i].mass;
    // alpha_i <= int f dp / (c m) <= a_u / (c m); for c m >= 1 this is a_u.
    const double alpha_bound = dc.a_upper[i] * std::max(1.0, 1.0 / (c * m));
    const double z = dc.beta_upper * m * c * c;
    dc.C1[i] = alpha_bound * std::exp(z) / juttner_inverse_energy_norm_scaled(dc.beta_upper, m, c);
  }
  return dc;
}

bool CertificateReport::all_passed() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

const CertificateEntry* CertificateReport::find(const std::string& name) const noexcept {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

void CertificateReport::append(std::vector<CertificateEntry> more) {
  for (auto& e : more) entries.push_back(std::move(e));
}

std::vector<CertificateEntry> check_property_A(const DistributionField& f,
                                               const DerivedConstants& consts,
                                               const SlabProblem& problem) {
  std::vector<CertificateEntry> out;
  for (std::size_t i = 0; i < f.n_species(); ++i) {
    const auto& kin = problem.kinematics()[i];
    CertificateEntry nonneg{"A.nonnegative[" + std::to_string(i) + "]", true,
                            std::numeric_limits<double>::infinity(), ""};
    CertificateEntry lower{"A.lower_mass[" + std::to_string(i) + "]", true,
                           std::numeric_limits<double>::infinity(), ""};
    CertificateEntry upper{"A.upper_mass[" + std::to_string(i) + "]", true,
                           std::numeric_limits<double>::infinity(), ""};
    for (std::size_t k = 0; k < f.n_x; ++k) {
      const auto col = f.at(i, k);
      for (std::size_t j = 0; j < col.size(); ++j)
        if (col[j] < nonneg.worst_margin) {
          nonneg.worst_margin = col[j];
          nonneg.location = where(k, i, j);
        }
      const double alpha = inverse_energy_moment(col, kin);
      const double lm = (alpha - consts.a_lower[i]) / consts.a_lower[i];
      if (lm < lower.worst_margin) {
        lower.worst_margin = lm;
        lower.location = where(k, i, kNoNode);
      }
      const double mass = integrate_momentum(problem.grid(), col);
      const double um = (consts.a_upper[i] - mass) / consts.a_upper[i];
      if (um < upper.worst_margin) {
        upper.worst_margin = um;
        upper.location = where(k, i, kNoNode);
      }
    }
    for (auto* e : {&nonneg, &lower, &upper}) {
      e->passed = e->worst_margin >= 0.0;
      out.push_back(*e);
    }
  }
  return out;
}

CertificateEntry check_property_B(const AuxiliaryProfile& aux, const DerivedConstants& consts,
                                  const SlabProblem& problem) {
  const auto species = problem.species();
  const double c = problem.c();
  double lhs = 0.0;
  for (std::size_t i = 0; i < species.size(); ++i)
    lhs += consts.gamma * c * species[i].mass * species[i].omega * consts.lambda[i] *
           consts.alpha_lr[i];
  CertificateEntry e{"B.beta_relation", true, std::numeric_limits<double>::infinity(), ""};
  for (std::size_t k = 0; k < aux.states.size(); ++k) {
    double rhs = 0.0;
    for (std::size_t i = 0; i < species.size(); ++i)
      rhs += species[i].omega * phi(aux.states[k].beta_tilde, species[i].mass, c) *
             std::sqrt(consts.lambda[i]) * consts.alpha_lr[i];
    const double margin = lhs > 0.0 ? (rhs - lhs) / lhs : rhs - lhs;
    if (margin < e.worst_margin) {
      e.worst_margin = margin;
      e.location = "x_node=" + std::to_string(k);
    }
  }
  e.passed = e.worst_margin >= 0.0;
  return e;
}

std::vector<CertificateEntry> check_lemma_bounds(const AuxiliaryProfile& aux,
                                                 const DerivedConstants& consts) {
  const double inf = std::numeric_limits<double>::infinity();
  CertificateEntry u{"Lemma.U_bound", true, inf, ""};
  CertificateEntry bl{"Lemma.beta_lower", true, inf, ""};
  CertificateEntry bu{"Lemma.beta_upper", true, inf, ""};
  for (std::size_t k = 0; k < aux.states.size(); ++k) {
    const auto& s = aux.states[k];
    const std::string loc = "x_node=" + std::to_string(k);
    const double mu = (consts.U_upper - s.U_tilde.spatial_norm()) / consts.U_upper;
    if (mu < u.worst_margin) u = {u.name, true, mu, loc};
    const double ml = (s.beta_tilde - consts.beta_lower) / consts.beta_lower;
    if (ml < bl.worst_margin) bl = {bl.name, true, ml, loc};
    const double mh = (consts.beta_upper - s.beta_tilde) / consts.beta_upper;
    if (mh < bu.worst_margin) bu = {bu.name, true, mh, loc};
  }
  std::vector<CertificateEntry> out{u, bl, bu};
  for (auto& e : out) e.passed = e.worst_margin >= 0.0;
  return out;
}

std::vector<CertificateEntry> check_attractor_envelope(const DistributionField& J,
                                                       const DerivedConstants& consts,
                                                       const SlabProblem& problem) {
  std::vector<CertificateEntry> out;
  for (std::size_t i = 0; i < J.n_species(); ++i) {
    const auto& kin = problem.kinematics()[i];
    CertificateEntry e{"Envelope[" + std::to_string(i) + "]", true,
                       std::numeric_limits<double>::infinity(), ""};
    for (std::size_t k = 0; k < J.n_x; ++k) {
      const auto r = attractor_envelope_check(J.at(i, k), consts.C1[i], consts.C2, kin);
      const double margin = -r.max_excess / consts.C1[i];
      if (margin < e.worst_margin) {
        e.worst_margin = margin;
        e.location = where(k, i, r.worst_node);
      }
      e.passed = e.passed && r.passed;
    }
    out.push_back(e);
  }
  return out;
}

FluxProfiles flux_profiles(const DistributionField& f, const SlabProblem& problem) {
  FluxProfiles p;
  p.particle.assign(f.n_species(), std::vector<double>(f.n_x, 0.0));
  p.T01.assign(f.n_x, 0.0);
  p.T11.assign(f.n_x, 0.0);
  for (std::size_t k = 0; k < f.n_x; ++k) {
    for (std::size_t i = 0; i < f.n_species(); ++i) {
      const auto& kin = problem.kinematics()[i];
      const auto N = number_four_flow(f.at(i, k), kin);
      const auto T = stress_energy_flux(f.at(i, k), kin);
      p.particle[i][k] = N[1] / kin.c;
      p.T01[k] += T[0];
      p.T11[k] += T[1];
    }
  }
  return p;
}

namespace {

CertificateEntry constancy(const std::string& name, const std::vector<double>& v, double floor,
                           double tolerance) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  const double scale = std::max(std::abs(mean), floor);
  CertificateEntry e{name, true, 0.0, ""};
  double worst = 0.0;
  std::size_t at = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double r = std::abs(v[k] - mean) / scale;
    if (r > worst) {
      worst = r;
      at = k;
    }
  }
  e.worst_margin = tolerance - worst;
  e.passed = worst <= tolerance;
  std::ostringstream os;
  os << "x_node=" << at << " residual=" << std::setprecision(6) << worst;
  e.location = os.str();
  return e;
}

}  // namespace

std::vector<CertificateEntry> flux_conservation(const DistributionField& f,
                                                const DerivedConstants& consts,
                                                const SlabProblem& problem, double tolerance) {
  const auto p = flux_profiles(f, problem);
  std::vector<CertificateEntry> out;
  for (std::size_t i = 0; i < f.n_species(); ++i)
    out.push_back(constancy("Flux.particle[" + std::to_string(i) + "]", p.particle[i],
                            consts.a_upper[i], tolerance));
  double m01 = 0.0;
  double m11 = 0.0;
  for (std::size_t k = 0; k < f.n_x; ++k) {
    m01 += p.T01[k];
    m11 += p.T11[k];
  }
  const double floor =
      std::max(std::abs(m01), std::abs(m11)) / static_cast<double>(std::max<std::size_t>(f.n_x, 1));
  out.push_back(constancy("Flux.T01_total", p.T01, floor, tolerance));
  out.push_back(constancy("Flux.T11_total", p.T11, floor, tolerance));
  return out;
}

std::vector<double> entropy_flux(const DistributionField& f, const SlabProblem& problem) {
  std::vector<double> S(f.n_x, 0.0);
  std::vector<double> tmp(f.n_nodes);
  for (std::size_t k = 0; k < f.n_x; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < f.n_species(); ++i) {
      const auto& kin = problem.kinematics()[i];
      const auto col = f.at(i, k);
      for (std::size_t j = 0; j < f.n_nodes; ++j) {
        const double v = col[j];
        tmp[j] = v > 0.0 ? problem.grid().p1(j) * kin.inv_p0[j] * v * std::log(v) : 0.0;
      }
      total += integrate_momentum(problem.grid(), tmp);
    }
    S[k] = -problem.k() * problem.c() * total;
  }
  return S;
}

double entropy_flux_scale(const DistributionField& f, const SlabProblem& problem) {
  double scale = 0.0;
  std::vector<double> tmp(f.n_nodes);
  for (std::size_t k = 0; k < f.n_x; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < f.n_species(); ++i) {
      const auto& kin = problem.kinematics()[i];
      const auto col = f.at(i, k);
      for (std::size_t j = 0; j < f.n_nodes; ++j) {
        const double v = col[j];
        tmp[j] = v > 0.0 ? std::abs(problem.grid().p1(j) * kin.inv_p0[j] * v * std::log(v)) : 0.0;
      }
      total += integrate_momentum(problem.grid(), tmp);
    }
    scale = std::max(scale, problem.k() * problem.c() * total);
  }
  return scale;
}

CertificateEntry check_entropy_monotone(std::span<const double> S1, double h, double rel_tol,
                                        double floor) {
  double smax = floor;
  for (double s : S1) smax = std::max(smax, std::abs(s));
  CertificateEntry e{"Entropy.monotone", true, std::numeric_limits<double>::infinity(), ""};
  for (std::size_t k = 0; k + 1 < S1.size(); ++k) {
    const double slope = (S1[k + 1] - S1[k]) / h;
    const double margin = slope + rel_tol * smax;
    if (margin < e.worst_margin) {
      e.worst_margin = margin;
      e.location = "x_node=" + std::to_string(k);
    }
  }
  if (S1.size() < 2) e.worst_margin = 0.0;
  e.passed = e.worst_margin >= 0.0;
  return e;
}

CertificateReport certify(const SlabProblem& problem, const DistributionField& f,
                          const AuxiliaryProfile& aux, const DerivedConstants& consts,
                          const CertifyOptions& options) {
  CertificateReport report;
  report.append(check_property_A(f, consts, problem));
  report.entries.push_back(check_property_B(aux, consts, problem));
  report.append(check_lemma_bounds(aux, consts));
  const auto J = attractor_field(problem, aux, options.normalization);
  report.append(check_attractor_envelope(J, consts, problem));
  report.append(flux_conservation(f, consts, problem, options.flux_tolerance));
  const auto S = entropy_flux(f, problem);
  report.entries.push_back(
      check_entropy_monotone(S, problem.xgrid().spacing(), options.entropy_tolerance,
                             entropy_flux_scale(f, problem)));
  return report;
}

void write_report(std::ostream& os, const CertificateReport& report) {
  os << "# certificate report\n";
  for (const auto& e : report.entries) {
    os << (e.passed ? "PASS " : "FAIL ") << e.name << " margin=" << std::setprecision(6)
       << e.worst_margin;
    if (!e.location.empty()) os << " at " << e.location;
    os << '\n';
  }
  os << (report.all_passed() ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
}

}  // namespace relbgk
