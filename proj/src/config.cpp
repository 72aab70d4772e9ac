#include "relbgk/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "relbgk/errors.hpp"

namespace relbgk {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

/// Strict view of one JSON object: every key must be read or it is rejected.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double def) {
    if (!has(key)) return def;
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(join(path_, key), "expected a finite number");
    return d;
  }

  double required_number(const std::string& key) {
    if (!has(key)) throw ConfigError(join(path_, key), "required key is missing");
    return number(key, 0.0);
  }

  std::size_t count(const std::string& key, std::size_t def) {
    if (!has(key)) return def;
    const json& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ConfigError(join(path_, key), "expected a nonnegative integer");
    return static_cast<std::size_t>(v.get<long long>());
  }

  std::string string(const std::string& key, const std::string& def) {
    if (!has(key)) return def;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
    return v.get<std::string>();
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (const auto& item : j_.items())
      if (!seen_.count(item.key())) throw ConfigError(join(path_, item.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& why) {
  if (!ok) throw ConfigError(path, why);
}

BoundaryFamilySpec parse_family(const json& j, const std::string& path, double c) {
  ObjectReader r(j, path);
  BoundaryFamilySpec s;
  const std::string kind = r.string("kind", "");
  if (kind == "juttner") {
    s.kind = FamilyKind::juttner;
    s.amplitude = r.number("amplitude", 1.0);
    s.beta = r.required_number("beta");
    s.drift = r.number("drift", 0.0);
    require(s.beta > 0.0, r.path("beta"), "beta must be positive");
    require(std::abs(s.drift) < c, r.path("drift"),
            "drift speed |u1| must be below the speed of light c");
  } else if (kind == "gaussian") {
    s.kind = FamilyKind::gaussian;
    s.amplitude = r.number("amplitude", 1.0);
    s.center = r.number("center", 0.0);
    s.width = r.required_number("width");
    require(s.width > 0.0, r.path("width"), "width must be positive");
  } else if (kind == "tabulated") {
    s.kind = FamilyKind::tabulated;
    s.amplitude = r.number("amplitude", 1.0);
    s.path = r.string("path", "");
    require(!s.path.empty(), r.path("path"), "tabulated boundary needs a path");
  } else {
    throw ConfigError(r.path("kind"), "expected one of juttner, gaussian, tabulated");
  }
  require(s.amplitude >= 0.0, r.path("amplitude"), "amplitude must be nonnegative");
  r.finish();
  return s;
}

json family_json(const BoundaryFamilySpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["amplitude"] = s.amplitude;
  switch (s.kind) {
    case FamilyKind::juttner:
      j["beta"] = s.beta;
      j["drift"] = s.drift;
      break;
    case FamilyKind::gaussian:
      j["center"] = s.center;
      j["width"] = s.width;
      break;
    case FamilyKind::tabulated:
      j["path"] = s.path;
      break;
  }
  return j;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::solve: return "solve";
    case RunMode::scan: return "scan";
    case RunMode::verify: return "verify";
    case RunMode::moments: return "moments";
  }
  return "?";
}

std::string to_string(Normalization n) {
  return n == Normalization::discrete ? "discrete" : "continuum";
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::juttner: return "juttner";
    case FamilyKind::gaussian: return "gaussian";
    case FamilyKind::tabulated: return "tabulated";
  }
  return "?";
}

RunConfig parse_config(std::string_view text, std::string base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.base_dir = std::move(base_dir);
  ObjectReader top(doc, "");

  if (top.has("constants")) {
    ObjectReader r(top.raw("constants"), "constants");
    cfg.c = r.number("c", 1.0);
    cfg.k = r.number("k", 1.0);
    require(cfg.c > 0.0, "constants.c", "must be positive");
    require(cfg.k > 0.0, "constants.k", "must be positive");
    r.finish();
  }

  if (!top.has("species")) throw ConfigError("species", "required key is missing");
  const json& sp = top.raw("species");
  if (!sp.is_array()) throw ConfigError("species", "expected an array");
  if (sp.empty()) throw ConfigError("species", "at least one species is required");
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const std::string path = "species[" + std::to_string(i) + "]";
    ObjectReader r(sp[i], path);
    SpeciesConfig s;
    s.label = r.string("label", "s" + std::to_string(i));
    s.mass = r.required_number("mass");
    s.omega = r.number("omega", 0.0);
    require(s.mass > 0.0, r.path("mass"), "mass must be positive");
    require(s.omega >= 0.0, r.path("omega"), "omega must be nonnegative");
    if (!r.has("left")) throw ConfigError(r.path("left"), "required key is missing");
    if (!r.has("right")) throw ConfigError(r.path("right"), "required key is missing");
    s.left = parse_family(r.raw("left"), r.path("left"), cfg.c);
    s.right = parse_family(r.raw("right"), r.path("right"), cfg.c);
    require(s.left.amplitude > 0.0 || s.right.amplitude > 0.0, path,
            "at least one side needs a positive amplitude");
    r.finish();
    cfg.species.push_back(std::move(s));
  }

  if (top.has("grid")) {
    ObjectReader r(top.raw("grid"), "grid");
    auto& g = cfg.grid;
    g.p_max = r.number("p_max", g.p_max);
    g.n_p1 = r.count("n_p1", g.n_p1);
    g.n_rho = r.count("n_rho", g.n_rho);
    g.K = r.count("K", g.K);
    g.p1_panels = r.count("p1_panels", g.p1_panels);
    g.grading = r.number("grading", g.grading);
    g.truncation_tol = r.number("truncation_tol", g.truncation_tol);
    require(g.p_max > 0.0, "grid.p_max", "must be positive");
    require(g.n_p1 >= 4 && g.n_p1 % 2 == 0, "grid.n_p1", "must be even and at least 4");
    require(g.n_rho >= 2, "grid.n_rho", "must be at least 2");
    require(g.K >= 2, "grid.K", "must be at least 2");
    require(g.p1_panels >= 1 && (g.n_p1 / 2) % g.p1_panels == 0, "grid.p1_panels",
            "must be positive and divide n_p1/2");
    require(g.grading > 0.0 && g.grading < 1.0, "grid.grading", "must lie in (0, 1)");
    require(g.truncation_tol > 0.0 && g.truncation_tol < 1.0, "grid.truncation_tol",
            "must lie in (0, 1)");
    r.finish();
  }

  if (top.has("solver")) {
    ObjectReader r(top.raw("solver"), "solver");
    auto& s = cfg.solver;
    s.tol = r.number("tol", s.tol);
    s.max_iter = r.count("max_iter", s.max_iter);
    const std::string norm = r.string("normalization", to_string(s.normalization));
    if (norm == "discrete")
      s.normalization = Normalization::discrete;
    else if (norm == "continuum")
      s.normalization = Normalization::continuum;
    else
      throw ConfigError("solver.normalization", "expected discrete or continuum");
    s.beta_tol = r.number("beta_tol", s.beta_tol);
    const std::size_t threads = r.count("threads", s.threads);
    s.omega_scale = r.number("omega_scale", s.omega_scale);
    require(s.tol > 0.0 && s.tol < 1.0, "solver.tol", "must lie in (0, 1)");
    require(s.max_iter >= 1, "solver.max_iter", "must be at least 1");
    require(s.beta_tol > 0.0 && s.beta_tol < 1.0, "solver.beta_tol", "must lie in (0, 1)");
    require(threads >= 1 && threads <= 1024, "solver.threads", "must lie in [1, 1024]");
    require(s.omega_scale >= 0.0, "solver.omega_scale", "must be nonnegative");
    s.threads = static_cast<unsigned>(threads);
    r.finish();
  }

  if (top.has("scan")) {
    ObjectReader r(top.raw("scan"), "scan");
    if (r.has("scales")) {
      const json& a = r.raw("scales");
      if (!a.is_array() || a.empty()) throw ConfigError("scan.scales", "expected a nonempty array");
      cfg.scan.scales.clear();
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string p = "scan.scales[" + std::to_string(i) + "]";
        if (!a[i].is_number()) throw ConfigError(p, "expected a number");
        const double v = a[i].get<double>();
        require(std::isfinite(v) && v >= 0.0, p, "must be finite and nonnegative");
        require(i == 0 || v > cfg.scan.scales.back(), p, "scales must be strictly increasing");
        cfg.scan.scales.push_back(v);
      }
    }
    r.finish();
  }

  if (top.has("verify")) {
    ObjectReader r(top.raw("verify"), "verify");
    cfg.verify.flux_tolerance = r.number("flux_tolerance", cfg.verify.flux_tolerance);
    cfg.verify.entropy_tolerance = r.number("entropy_tolerance", cfg.verify.entropy_tolerance);
    require(cfg.verify.flux_tolerance > 0.0, "verify.flux_tolerance", "must be positive");
    require(cfg.verify.entropy_tolerance >= 0.0, "verify.entropy_tolerance",
            "must be nonnegative");
    r.finish();
  }

  if (top.has("mode")) {
    const std::string m = top.string("mode", "solve");
    if (m == "solve")
      cfg.mode = RunMode::solve;
    else if (m == "scan")
      cfg.mode = RunMode::scan;
    else if (m == "verify")
      cfg.mode = RunMode::verify;
    else if (m == "moments")
      cfg.mode = RunMode::moments;
    else
      throw ConfigError("mode", "expected one of solve, scan, verify, moments");
  }

  if (top.has("output")) {
    ObjectReader r(top.raw("output"), "output");
    cfg.output.directory = r.string("directory", cfg.output.directory);
    cfg.output.prefix = r.string("prefix", cfg.output.prefix);
    require(!cfg.output.prefix.empty(), "output.prefix", "must not be empty");
    r.finish();
  }

  top.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.string());
}

std::string serialize_config(const RunConfig& cfg) {
  json doc;
  doc["constants"] = {{"c", cfg.c}, {"k", cfg.k}};
  doc["species"] = json::array();
  for (const auto& s : cfg.species)
    doc["species"].push_back({{"label", s.label},
                              {"mass", s.mass},
                              {"omega", s.omega},
                              {"left", family_json(s.left)},
                              {"right", family_json(s.right)}});
  const auto& g = cfg.grid;
  doc["grid"] = {{"p_max", g.p_max},       {"n_p1", g.n_p1},
                 {"n_rho", g.n_rho},       {"K", g.K},
                 {"p1_panels", g.p1_panels}, {"grading", g.grading},
                 {"truncation_tol", g.truncation_tol}};
  const auto& s = cfg.solver;
  doc["solver"] = {{"tol", s.tol},
                   {"max_iter", s.max_iter},
                   {"normalization", to_string(s.normalization)},
                   {"beta_tol", s.beta_tol},
                   {"threads", s.threads},
                   {"omega_scale", s.omega_scale}};
  doc["scan"] = {{"scales", cfg.scan.scales}};
  doc["verify"] = {{"flux_tolerance", cfg.verify.flux_tolerance},
                   {"entropy_tolerance", cfg.verify.entropy_tolerance}};
  doc["mode"] = to_string(cfg.mode);
  doc["output"] = {{"directory", cfg.output.directory}, {"prefix", cfg.output.prefix}};
  return doc.dump(2) + "\n";
}

}  // namespace relbgk
