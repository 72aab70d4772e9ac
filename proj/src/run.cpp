#include "relbgk/run.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace relbgk {

using nlohmann::json;

void Logger::emit(const std::string& level, const std::string& kind, const std::string& message,
                  const std::string& path) const {
  if (!os_) return;
  json j;
  j["level"] = level;
  if (!kind.empty()) j["kind"] = kind;
  if (!path.empty()) j["path"] = path;
  j["message"] = message;
  *os_ << j.dump() << '\n';
}

void Logger::info(const std::string& message) const {
  if (!quiet_) emit("info", "", message, "");
}

void Logger::warn(const std::string& message) const {
  if (!quiet_) emit("warning", "", message, "");
}

void Logger::error(const std::string& kind, const std::string& message,
                   const std::string& path) const {
  emit("error", kind, message, path);
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::uint64_t fnv1a(std::uint64_t h, std::span<const double> v) {
  for (double d : v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &d, sizeof d);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path + "'");
  return os;
}

void close_checked(std::ofstream& os, const std::string& path) {
  os.close();
  if (!os) throw IoError("failed writing '" + path + "'");
}

json report_json(const IterationReport& r) {
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"diverged", r.diverged},
          {"stop_reason", r.stop_reason},
          {"verification_residual", r.verification_residual},
          {"sup_ratio", r.sup_ratio()},
          {"updates", r.updates},
          {"ratios", r.ratios}};
}

json certificate_json(const CertificateReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"name", e.name},
                       {"passed", e.passed},
                       {"worst_margin", e.worst_margin},
                       {"location", e.location}});
  return {{"all_passed", rep.all_passed()}, {"entries", entries}};
}

json constants_json(const DerivedConstants& d) {
  return {{"a_lower", d.a_lower},       {"a_upper", d.a_upper},
          {"lambda", d.lambda},         {"gamma", d.gamma},
          {"beta_lower", d.beta_lower}, {"beta_upper", d.beta_upper},
          {"U_upper", d.U_upper},       {"C1", d.C1},
          {"C2", d.C2}};
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const RunConfig& cfg, RunMode mode,
                    const SlabProblem* problem, json extra) {
  json m;
  RunConfig echo = cfg;
  echo.mode = mode;
  m["config"] = json::parse(serialize_config(echo));
  if (problem)
    m["grid_checksums"] = {{"momentum", grid_checksum(problem->grid())},
                           {"spatial", grid_checksum(problem->xgrid())}};
  for (auto& [k, v] : extra.items()) m[k] = v;
  m["generated_at"] = timestamp();
  auto os = open_out(path);
  os << m.dump(2) << '\n';
  close_checked(os, path);
}

void write_constants(std::ostream& os, const SlabProblem& problem, const DerivedConstants& d) {
  os << "quantity,species,value\n";
  for (std::size_t i = 0; i < problem.n_species(); ++i) {
    const std::string lab = csv_field(problem.species()[i].label);
    os << "a_lower," << lab << ',' << fmt17(d.a_lower[i]) << '\n';
    os << "a_upper," << lab << ',' << fmt17(d.a_upper[i]) << '\n';
    os << "lambda," << lab << ',' << fmt17(d.lambda[i]) << '\n';
    os << "C1," << lab << ',' << fmt17(d.C1[i]) << '\n';
  }
  os << "gamma,," << fmt17(d.gamma) << '\n';
  os << "beta_lower,," << fmt17(d.beta_lower) << '\n';
  os << "beta_upper,," << fmt17(d.beta_upper) << '\n';
  os << "U_upper,," << fmt17(d.U_upper) << '\n';
  os << "C2,," << fmt17(d.C2) << '\n';
}

}  // namespace

std::string grid_checksum(const MomentumGrid& grid) {
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a(h, grid.p1_axis());
  h = fnv1a(h, grid.rho_axis());
  h = fnv1a(h, grid.weights());
  return hex(h);
}

std::string grid_checksum(const SpatialGrid& grid) {
  return hex(fnv1a(1469598103934665603ULL, grid.nodes()));
}

SlabProblem build_problem(const RunConfig& cfg, const Logger& log) {
  const auto& g = cfg.grid;
  auto grid = build_momentum_grid(g.p_max, g.n_p1, g.n_rho, g.p1_panels, g.grading);
  auto xgrid = build_spatial_grid(g.K);
  std::vector<SpeciesParams> species;
  BoundaryData bd;
  const WarningSink warn = [&log](const std::string& m) { log.warn(m); };
  for (std::size_t i = 0; i < cfg.species.size(); ++i) {
    const auto& s = cfg.species[i];
    species.push_back({s.label, s.mass, s.omega * cfg.solver.omega_scale});
    for (const auto& [spec, side, name] :
         {std::tuple{&s.left, Side::left, "left"}, std::tuple{&s.right, Side::right, "right"}}) {
      const double tail = truncation_tail_fraction(*spec, side, g.p_max, s.mass, cfg.c, cfg.base_dir);
      if (tail > g.truncation_tol) {
        std::ostringstream os;
        os << "species[" << i << "]." << name << ": fraction " << tail
           << " of the inflow mass lies beyond p_max = " << g.p_max << " (limit "
           << g.truncation_tol << ")";
        throw InvalidBoundary(os.str());
      }
    }
    auto fl = sample_boundary(s.left, Side::left, grid, s.mass, cfg.c, cfg.base_dir, warn);
    const auto fr = sample_boundary(s.right, Side::right, grid, s.mass, cfg.c, cfg.base_dir, warn);
    for (std::size_t j = 0; j < fl.size(); ++j) fl[j] += fr[j];
    bd.f_lr.push_back(std::move(fl));
    bd.provenance.push_back("L=" + describe(s.left) + "; R=" + describe(s.right));
  }
  return SlabProblem(std::move(species), std::move(grid), std::move(xgrid), std::move(bd), cfg.c,
                     cfg.k);
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.tol = cfg.solver.tol;
  o.max_iter = cfg.solver.max_iter;
  o.normalization = cfg.solver.normalization;
  o.beta_tol = cfg.solver.beta_tol;
  o.threads = cfg.solver.threads;
  return o;
}

void write_profiles_csv(const std::string& path, const SlabProblem& problem,
                        const DistributionField& f, const AuxiliaryProfile& aux) {
  const auto flux = flux_profiles(f, problem);
  const auto S = entropy_flux(f, problem);
  auto os = open_out(path);
  std::vector<std::string> header{"x [1]"};
  for (const auto& s : problem.species()) header.push_back("n_" + s.label + " [f p^3]");
  for (const auto& s : problem.species()) header.push_back("U1/U0_" + s.label + " [1]");
  for (const auto& s : problem.species()) header.push_back("F_" + s.label + " [f p^3]");
  header.insert(header.end(), {"beta_tilde [1/E]", "U_tilde1 [v]", "S1 [k c f p^3]",
                               "T01_total [c f p^4]", "T11_total [c f p^4]"});
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
  os << '\n';
  for (std::size_t k = 0; k < f.n_x; ++k) {
    std::vector<double> row{problem.xgrid().x(k)};
    std::vector<double> n, v;
    for (std::size_t i = 0; i < problem.n_species(); ++i) {
      const auto& kin = problem.kinematics()[i];
      const auto N = number_four_flow(f.at(i, k), kin);
      try {
        const auto e = eckart_decompose(N, problem.c());
        n.push_back(e.n);
        v.push_back(e.U[1] / e.U[0]);
      } catch (const NonTimelikeFlow&) {
        n.push_back(std::nan(""));
        v.push_back(std::nan(""));
      }
    }
    row.insert(row.end(), n.begin(), n.end());
    row.insert(row.end(), v.begin(), v.end());
    for (std::size_t i = 0; i < problem.n_species(); ++i) row.push_back(flux.particle[i][k]);
    const bool have_aux = k < aux.states.size();
    row.push_back(have_aux ? aux.states[k].beta_tilde : std::nan(""));
    row.push_back(have_aux ? aux.states[k].U_tilde[1] : std::nan(""));
    row.push_back(S[k]);
    row.push_back(flux.T01[k]);
    row.push_back(flux.T11[k]);
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt17(row[i]);
    os << '\n';
  }
  close_checked(os, path);
}

int run(const RunConfig& cfg, const RunOptions& opt) {
  const Logger log(opt.diagnostics, opt.quiet);
  const RunMode mode = opt.mode.value_or(cfg.mode);
  const std::string dir = opt.output_dir.value_or(cfg.output.directory);
  const std::string base = (std::filesystem::path(dir) / cfg.output.prefix).string();
  auto console = [&](const std::string& s) {
    if (opt.console && !opt.quiet) *opt.console << s;
  };

  try {
    {
      RunConfig echo = cfg;
      echo.mode = mode;
      log.info("effective configuration: " + json::parse(serialize_config(echo)).dump());
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

    const SlabProblem problem = build_problem(cfg, log);
    const auto consts = derived_constants(problem);
    const SolverOptions sopt = solver_options(cfg);

    if (mode == RunMode::moments) {
      const std::string path = base + "_constants.csv";
      auto os = open_out(path);
      write_constants(os, problem, consts);
      close_checked(os, path);
      std::ostringstream table;
      write_constants(table, problem, consts);
      console(table.str());
      write_manifest(base + "_manifest.json", cfg, mode, &problem,
                     {{"derived_constants", constants_json(consts)}});
      return kExitOk;
    }

    if (mode == RunMode::scan) {
      const auto table = omega_threshold_scan(problem, cfg.scan.scales, sopt);
      const std::string path = base + "_scan.csv";
      auto os = open_out(path);
      os << "scale,converged,iterations,sup_ratio,stop_reason\n";
      json rows = json::array();
      for (const auto& r : table.rows) {
        os << fmt17(r.scale) << ',' << (r.converged ? 1 : 0) << ',' << r.iterations << ','
           << fmt17(r.sup_ratio) << ',' << csv_field(r.stop_reason) << '\n';
        rows.push_back({{"scale", r.scale},
                        {"converged", r.converged},
                        {"iterations", r.iterations},
                        {"sup_ratio", r.sup_ratio},
                        {"stop_reason", r.stop_reason}});
      }
      close_checked(os, path);
      json largest = table.largest_converged_scale ? json(*table.largest_converged_scale) : json();
      write_manifest(base + "_manifest.json", cfg, mode, &problem,
                     {{"scan", rows}, {"largest_converged_scale", largest}});
      std::ostringstream msg;
      msg << "scan: " << table.rows.size() << " scales, largest converged = "
          << (table.largest_converged_scale ? fmt17(*table.largest_converged_scale) : "none")
          << '\n';
      console(msg.str());
      return kExitOk;
    }

    // solve and verify
    const auto result = picard_iterate(problem, sopt);
    json extra{{"iteration_report", report_json(result.report)},
               {"derived_constants", constants_json(consts)}};
    if (!result.report.converged) {
      write_manifest(base + "_manifest.json", cfg, mode, &problem, extra);
      log.error("not_converged", "Picard iteration did not converge: " + result.report.stop_reason);
      return kExitNotConverged;
    }
    CertifyOptions copt;
    copt.normalization = sopt.normalization;
    copt.flux_tolerance = cfg.verify.flux_tolerance;
    copt.entropy_tolerance = cfg.verify.entropy_tolerance;
    const auto cert = certify(problem, result.field, result.aux, consts, copt);
    extra["certificate"] = certificate_json(cert);
    write_profiles_csv(base + "_profiles.csv", problem, result.field, result.aux);
    write_manifest(base + "_manifest.json", cfg, mode, &problem, extra);
    std::ostringstream msg;
    msg << "converged in " << result.report.iterations << " iterations, sup ratio "
        << fmt17(result.report.sup_ratio()) << '\n';
    console(msg.str());
    if (mode == RunMode::verify) {
      const std::string path = base + "_certificate.txt";
      auto os = open_out(path);
      write_report(os, cert);
      close_checked(os, path);
      std::ostringstream rep;
      write_report(rep, cert);
      console(rep.str());
      if (!cert.all_passed()) {
        log.error("certificate_failed", "one or more certificate checks failed");
        return kExitFailure;
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log.error("schema", e.what(), e.path());
    return kExitSchema;
  } catch (const InvalidBoundary& e) {
    log.error("invalid_boundary", e.what());
    return kExitInvalidBoundary;
  } catch (const NotConverged& e) {
    log.error("not_converged", e.what());
    return kExitNotConverged;
  } catch (const IoError& e) {
    log.error("io", e.what());
    return kExitIo;
  } catch (const NoSolution& e) {
    log.error("invalid_boundary", e.what());
    return kExitInvalidBoundary;
  } catch (const Error& e) {
    log.error("solver", e.what());
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    log.error("schema", e.what());
    return kExitSchema;
  }
}

}  // namespace relbgk
