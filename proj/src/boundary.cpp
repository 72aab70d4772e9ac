#include "relbgk/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "relbgk/errors.hpp"
#include "relbgk/moments.hpp"

namespace relbgk {

namespace {

std::string resolve(const std::string& path, const std::string& base_dir) {
  std::filesystem::path p(path);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  return p.string();
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw IoError(where + ": not a number: '" + field + "'");
  }
  if (used != field.size() || !std::isfinite(v))
    throw IoError(where + ": not a finite number: '" + field + "'");
  return v;
}

}  // namespace

double BoundaryTable::interpolate(double q1, double r) const noexcept {
  if (p1.size() < 2 || rho.size() < 2) return 0.0;
  if (q1 < p1.front() || q1 > p1.back() || r < rho.front() || r > rho.back()) return 0.0;
  auto bracket = [](const std::vector<double>& axis, double v) {
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    hi = std::clamp<std::size_t>(hi, 1, axis.size() - 1);
    return hi - 1;
  };
  const std::size_t i = bracket(p1, q1);
  const std::size_t k = bracket(rho, r);
  const double t = (q1 - p1[i]) / (p1[i + 1] - p1[i]);
  const double u = (r - rho[k]) / (rho[k + 1] - rho[k]);
  const std::size_t nr = rho.size();
  const double v00 = values[i * nr + k];
  const double v01 = values[i * nr + k + 1];
  const double v10 = values[(i + 1) * nr + k];
  const double v11 = values[(i + 1) * nr + k + 1];
  return (1 - t) * ((1 - u) * v00 + u * v01) + t * ((1 - u) * v10 + u * v11);
}

BoundaryTable load_boundary_table(const std::string& path,
                                  const std::function<void(const std::string&)>& warn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open boundary table '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  {
    std::stringstream hs(line);
    std::string a, b, c;
    std::getline(hs, a, ',');
    std::getline(hs, b, ',');
    std::getline(hs, c, ',');
    if (trim(a) != "p1" || trim(b) != "rho" || trim(c) != "value")
      throw IoError(path + ": header must be 'p1,rho,value'");
  }
  std::map<std::pair<double, double>, double> entries;
  std::size_t lineno = 1;
  std::size_t clamped = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::stringstream ls(line);
    std::string f[3];
    for (auto& s : f)
      if (!std::getline(ls, s, ',')) throw IoError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    std::string extra;
    if (std::getline(ls, extra)) throw IoError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    const std::string where = path + ":" + std::to_string(lineno);
    const double q = parse_double(trim(f[0]), where);
    const double r = parse_double(trim(f[1]), where);
    double v = parse_double(trim(f[2]), where);
    if (r < 0.0) throw IoError(where + ": rho must be >= 0");
    if (v < 0.0) {
      v = 0.0;
      ++clamped;
    }
    if (!entries.emplace(std::make_pair(q, r), v).second)
      throw IoError(where + ": duplicate (p1, rho) entry");
  }
  BoundaryTable t;
  for (const auto& [key, v] : entries) {
    (void)v;
    if (t.p1.empty() || t.p1.back() != key.first) t.p1.push_back(key.first);
  }
  for (const auto& [key, v] : entries) {
    (void)v;
    if (key.first != t.p1.front()) break;
    t.rho.push_back(key.second);
  }
  if (t.p1.size() < 2 || t.rho.size() < 2)
    throw IoError(path + ": table needs at least 2 distinct p1 and 2 distinct rho values");
  if (entries.size() != t.p1.size() * t.rho.size())
    throw IoError(path + ": entries do not form a rectilinear (p1, rho) table");
  t.values.reserve(entries.size());
  std::size_t idx = 0;
  for (const auto& [key, v] : entries) {
    if (key.first != t.p1[idx / t.rho.size()] || key.second != t.rho[idx % t.rho.size()])
      throw IoError(path + ": entries do not form a rectilinear (p1, rho) table");
    t.values.push_back(v);
    ++idx;
  }
  if (clamped > 0 && warn)
    warn(path + ": clamped " + std::to_string(clamped) + " negative value(s) to 0");
  return t;
}

double evaluate_family(const BoundaryFamilySpec& spec, double q1, double r, double m, double c,
                       const BoundaryTable* table) {
  switch (spec.kind) {
    case FamilyKind::juttner: {
      const double g = 1.0 / std::sqrt(1.0 - (spec.drift / c) * (spec.drift / c));
      const double up = g * (c * p0(m, c, q1, r) - spec.drift * q1);
      return spec.amplitude * std::exp(-spec.beta * (up - m * c * c));
    }
    case FamilyKind::gaussian: {
      const double d = q1 - spec.center;
      return spec.amplitude * std::exp(-(d * d + r * r) / (spec.width * spec.width));
    }
    case FamilyKind::tabulated:
      return table ? spec.amplitude * table->interpolate(q1, r) : 0.0;
  }
  return 0.0;
}

std::vector<double> sample_boundary(const BoundaryFamilySpec& spec, Side side,
                                    const MomentumGrid& grid, double m, double c,
                                    const std::string& base_dir, const WarningSink& warn) {
  BoundaryTable table;
  if (spec.kind == FamilyKind::tabulated) table = load_boundary_table(resolve(spec.path, base_dir), warn);
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double q = grid.p1(j);
    if ((side == Side::left) != (q > 0.0)) continue;
    out[j] = evaluate_family(spec, q, grid.rho(j), m, c, &table);
  }
  return out;
}

double truncation_tail_fraction(const BoundaryFamilySpec& spec, Side side, double p_max, double m,
                                double c, const std::string& base_dir) {
  BoundaryTable table;
  if (spec.kind == FamilyKind::tabulated) table = load_boundary_table(resolve(spec.path, base_dir));
  constexpr std::size_t kSub = 8;
  const auto rule = gauss_legendre(24);
  const double sgn = side == Side::left ? 1.0 : -1.0;
  // Mass in the box [a1, b1] x [a2, b2] of (|p1|, rho), split into sub-panels.
  auto box = [&](double a1, double b1, double a2, double b2) {
    double sum = 0.0;
    const double h1 = (b1 - a1) / kSub;
    const double h2 = (b2 - a2) / kSub;
    for (std::size_t s1 = 0; s1 < kSub; ++s1)
      for (std::size_t s2 = 0; s2 < kSub; ++s2)
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double q = a1 + h1 * (s1 + 0.5 * (rule.nodes[i] + 1.0));
          for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r = a2 + h2 * (s2 + 0.5 * (rule.nodes[k] + 1.0));
            sum += 0.25 * h1 * h2 * rule.weights[i] * rule.weights[k] * 2.0 * std::numbers::pi *
                   r * evaluate_family(spec, sgn * q, r, m, c, &table);
          }
        }
    return sum;
  };
  const double inside = box(0.0, p_max, 0.0, p_max);
  double tail = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != 0 || b != 0) tail += box(a * p_max, (a + 1) * p_max, b * p_max, (b + 1) * p_max);
  const double total = inside + tail;
  return total > 0.0 ? tail / total : 0.0;
}

std::string describe(const BoundaryFamilySpec& spec) {
  std::ostringstream os;
  os.precision(17);
  switch (spec.kind) {
    case FamilyKind::juttner:
      os << "juttner(amplitude=" << spec.amplitude << ", beta=" << spec.beta
         << ", drift=" << spec.drift << ")";
      break;
    case FamilyKind::gaussian:
      os << "gaussian(amplitude=" << spec.amplitude << ", center=" << spec.center
         << ", width=" << spec.width << ")";
      break;
    case FamilyKind::tabulated:
      os << "tabulated(path=" << spec.path << ", amplitude=" << spec.amplitude << ")";
      break;
  }
  return os.str();
}

}  // namespace relbgk
