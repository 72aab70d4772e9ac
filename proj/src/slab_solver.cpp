#include "relbgk/slab_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relbgk/parallel.hpp"

namespace relbgk {

DistributionField DistributionField::zeros(std::size_t n_species, std::size_t n_x,
                                           std::size_t n_nodes) {
  DistributionField f;
  f.n_x = n_x;
  f.n_nodes = n_nodes;
  f.data.assign(n_species, std::vector<double>(n_x * n_nodes, 0.0));
  return f;
}

SpeciesSlices DistributionField::slices(std::size_t k) const {
  SpeciesSlices s;
  s.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) s.push_back(at(i, k));
  return s;
}

SlabProblem::SlabProblem(std::vector<SpeciesParams> species, MomentumGrid grid,
                         SpatialGrid xgrid, BoundaryData boundary, double c, double k)
    : grid_(std::make_shared<const MomentumGrid>(std::move(grid))),
      xgrid_(std::move(xgrid)),
      species_(std::move(species)),
      boundary_(std::move(boundary)),
      c_(c),
      k_(k) {
  if (species_.empty()) throw Error("SlabProblem: at least one species is required");
  if (!(c_ > 0.0) || !(k_ > 0.0)) throw Error("SlabProblem: c and k must be positive");
  if (boundary_.f_lr.size() != species_.size())
    throw InvalidBoundary("boundary data must have one entry per species");
  boundary_.provenance.resize(species_.size());
  kin_.reserve(species_.size());
  for (std::size_t i = 0; i < species_.size(); ++i) {
    const auto& sp = species_[i];
    if (!(sp.mass > 0.0)) throw Error("SlabProblem: species mass must be positive");
    if (!(sp.omega >= 0.0) || !std::isfinite(sp.omega))
      throw Error("SlabProblem: collision frequency must be finite and >= 0");
    kin_.emplace_back(*grid_, sp.mass, c_);
    const auto& f = boundary_.f_lr[i];
    if (f.size() != grid_->size())
      throw InvalidBoundary("boundary data of species " + std::to_string(i) +
                            " does not match the momentum grid");
    for (double v : f)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw InvalidBoundary("boundary data of species " + std::to_string(i) +
                              " must be finite and nonnegative");
    if (!(inverse_energy_moment(f, kin_.back()) > 0.0))
      throw InvalidBoundary("boundary data of species " + std::to_string(i) +
                            " has a_l = 0 (identically zero inflow)");
  }
}

SlabProblem SlabProblem::with_omega_scale(double scale) const {
  SlabProblem copy(*this);
  for (auto& sp : copy.species_) sp.omega *= scale;
  return copy;
}

double IterationReport::sup_ratio() const noexcept {
  double s = 0.0;
  for (double r : ratios) s = std::max(s, r);
  return s;
}

DistributionField propagate_boundary(const SlabProblem& problem) {
  const auto& grid = problem.grid();
  const auto& xg = problem.xgrid();
  auto f = DistributionField::zeros(problem.n_species(), xg.size(), grid.size());
  for (std::size_t i = 0; i < problem.n_species(); ++i) {
    const double omega = problem.species()[i].omega;
    const auto& flr = problem.boundary().f_lr[i];
    for (std::size_t k = 0; k < xg.size(); ++k) {
      auto out = f.at(i, k);
      const double x = xg.x(k);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double p1 = grid.p1(j);
        const double depth = p1 > 0.0 ? x : 1.0 - x;
        out[j] = std::exp(-omega * depth / std::abs(p1)) * flr[j];
      }
    }
  }
  return f;
}

namespace {

// (1 - e^{-a}(1 + a)) / a, the weight of the slope term in a kernel cell.
double slope_weight(double a) {
  if (a < 0.1) {
    // sum_{k>=2} (-1)^k (k-1) a^{k-1} / k!
    double term = 0.5 * a;  // k = 2
    double sum = term;
    double fact = 2.0;
    double power = a;
    for (int k = 3; k < 30; ++k) {
      fact *= k;
      power *= -a;
      term = (k - 1) * power / fact;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (-std::expm1(-a) - a * std::exp(-a)) / a;
}

}  // namespace

double exp_kernel_cell(double a, double J_left, double J_right, double h) {
  if (!(a >= 0.0)) throw Error("exp_kernel_cell: a must be >= 0");
  if (!(h > 0.0)) throw Error("exp_kernel_cell: h must be positive");
  if (std::isinf(a)) return J_right;
  return J_right * -std::expm1(-a) - (J_right - J_left) * slope_weight(a);
}

AuxiliaryProfile compute_aux_profile(const SlabProblem& problem, const DistributionField& f,
                                     const SolverOptions& options) {
  AuxiliaryProfile aux;
  aux.states.resize(f.n_x);
  parallel_for(f.n_x, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
      aux.states[k] = compute_auxiliary_state(f.slices(k), problem.kinematics(),
                                              problem.species(), options.beta_tol);
  });
  return aux;
}

DistributionField attractor_field(const SlabProblem& problem, const AuxiliaryProfile& aux,
                                  Normalization normalization, unsigned threads) {
  const std::size_t nx = aux.states.size();
  auto J = DistributionField::zeros(problem.n_species(), nx, problem.grid().size());
  parallel_for(nx, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto& s = aux.states[k];
      for (std::size_t i = 0; i < problem.n_species(); ++i)
        evaluate_attractor(s.alpha[i], s.beta_tilde, s.U_tilde, problem.kinematics()[i],
                           normalization, J.at(i, k));
    }
  });
  return J;
}

namespace {

// Sweeps the mild form along x for every node of every species, given J.
DistributionField sweep(const SlabProblem& problem, const DistributionField& J,
                        unsigned threads) {
  const auto& grid = problem.grid();
  const std::size_t K = problem.xgrid().intervals();
  const double h = problem.xgrid().spacing();
  const std::size_t nodes = grid.size();
  const std::size_t ns = problem.n_species();
  auto out = DistributionField::zeros(ns, K + 1, nodes);

  parallel_for(ns * nodes, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t i = idx / nodes;
      const std::size_t j = idx % nodes;
      const double p1 = grid.p1(j);
      const double a = problem.species()[i].omega * h / std::abs(p1);
      const double decay = std::exp(-a);
      const double absorbed = -std::expm1(-a);
      const double slope = slope_weight(a);
      const double fb = problem.boundary().f_lr[i][j];
      const double* Jd = J.data[i].data();
      double* g = out.data[i].data();
      if (p1 > 0.0) {
        g[j] = fb;
        for (std::size_t k = 0; k < K; ++k) {
          const double jl = Jd[k * nodes + j];
          const double jr = Jd[(k + 1) * nodes + j];
          g[(k + 1) * nodes + j] = decay * g[k * nodes + j] + (jr * absorbed - (jr - jl) * slope);
        }
      } else {
        g[K * nodes + j] = fb;
        for (std::size_t k = K; k > 0; --k) {
          const double jl = Jd[k * nodes + j];
          const double jr = Jd[(k - 1) * nodes + j];
          g[(k - 1) * nodes + j] = decay * g[k * nodes + j] + (jr * absorbed - (jr - jl) * slope);
        }
      }
    }
  });
  return out;
}

}  // namespace

DistributionField apply_solution_operator(const SlabProblem& problem, const AuxiliaryProfile& aux,
                                          const SolverOptions& options) {
  const auto J = attractor_field(problem, aux, options.normalization, options.threads);
  return sweep(problem, J, options.threads);
}

DistributionField apply_solution_operator(const SlabProblem& problem, const DistributionField& f,
                                          const SolverOptions& options) {
  return apply_solution_operator(problem, compute_aux_profile(problem, f, options), options);
}

double l1_distance(const DistributionField& f, const DistributionField& g,
                   const SlabProblem& problem) {
  if (f.n_species() != g.n_species() || f.n_x != g.n_x || f.n_nodes != g.n_nodes)
    throw Error("l1_distance: field shapes differ");
  if (f.n_nodes != problem.grid().size() || f.n_x != problem.xgrid().size())
    throw Error("l1_distance: field does not match the problem grids");
  const auto w = problem.grid().weights();
  const double h = problem.xgrid().spacing();
  double total = 0.0;
  for (std::size_t i = 0; i < f.n_species(); ++i) {
    double species_sum = 0.0;
    for (std::size_t k = 0; k < f.n_x; ++k) {
      const auto a = f.at(i, k);
      const auto b = g.at(i, k);
      double col = 0.0;
      for (std::size_t j = 0; j < f.n_nodes; ++j) col += w[j] * std::abs(a[j] - b[j]);
      species_sum += (k == 0 || k + 1 == f.n_x) ? 0.5 * col : col;
    }
    total += h * species_sum;
  }
  return total;
}

double l1_norm(const DistributionField& f, const SlabProblem& problem) {
  const auto zero = DistributionField::zeros(f.n_species(), f.n_x, f.n_nodes);
  return l1_distance(f, zero, problem);
}

namespace {

bool all_finite(const DistributionField& f) {
  for (const auto& v : f.data)
    for (double x : v)
      if (!std::isfinite(x)) return false;
  return true;
}

constexpr int kGrowthStreak = 5;
constexpr double kBlowupFactor = 1e6;

}  // namespace

SolveResult picard_iterate(const SlabProblem& problem, const SolverOptions& options) {
  if (!(options.tol > 0.0)) throw Error("picard: tol must be positive");
  SolveResult result;
  IterationReport& rep = result.report;
  DistributionField f = propagate_boundary(problem);
  int growth = 0;

  try {
    for (std::size_t n = 0; n < options.max_iter; ++n) {
      auto aux = compute_aux_profile(problem, f, options);
      DistributionField next = apply_solution_operator(problem, aux, options);
      if (!all_finite(next)) {
        rep.stop_reason = "non-finite iterate";
        rep.diverged = true;
        break;
      }
      const double d = l1_distance(next, f, problem);
      const double norm = l1_norm(f, problem);
      if (!rep.updates.empty() && rep.updates.back() > 0.0) {
        rep.ratios.push_back(d / rep.updates.back());
        growth = d > rep.updates.back() ? growth + 1 : 0;
      }
      rep.updates.push_back(d);
      rep.norms.push_back(norm);
      rep.iterations = n + 1;
      f = std::move(next);
      if (d <= options.tol * norm) {
        rep.converged = true;
        rep.stop_reason = "converged";
        break;
      }
      if (growth >= kGrowthStreak || d > kBlowupFactor * rep.updates.front()) {
        rep.diverged = true;
        rep.stop_reason = "diverging update norms";
        break;
      }
    }
    if (rep.stop_reason.empty()) rep.stop_reason = "max_iter reached";

    result.aux = compute_aux_profile(problem, f, options);
    if (rep.converged) {
      const auto check = apply_solution_operator(problem, result.aux, options);
      rep.verification_residual = l1_distance(check, f, problem) / l1_norm(f, problem);
    }
  } catch (const NotConverged&) {
    throw;
  } catch (const Error& e) {
    rep.converged = false;
    rep.diverged = true;
    rep.stop_reason = std::string("auxiliary state failed: ") + e.what();
    result.aux.states.clear();
  }
  result.field = std::move(f);
  return result;
}

SolveResult picard_solve(const SlabProblem& problem, const SolverOptions& options) {
  auto result = picard_iterate(problem, options);
  if (!result.report.converged) throw NotConverged(result.report);
  return result;
}

ScanTable omega_threshold_scan(const SlabProblem& problem, std::span<const double> scales,
                               const SolverOptions& options) {
  for (std::size_t s = 0; s < scales.size(); ++s) {
    if (!(scales[s] >= 0.0)) throw Error("omega_threshold_scan: scales must be >= 0");
    if (s > 0 && !(scales[s] > scales[s - 1]))
      throw Error("omega_threshold_scan: scales must be increasing");
  }
  ScanTable table;
  for (double s : scales) {
    const auto scaled = problem.with_omega_scale(s);
    const auto run = picard_iterate(scaled, options);
    ScanRow row;
    row.scale = s;
    row.converged = run.report.converged;
    row.iterations = run.report.iterations;
    row.sup_ratio = run.report.sup_ratio();
    row.stop_reason = run.report.stop_reason;
    if (row.converged) table.largest_converged_scale = s;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace relbgk
