#pragma once

#include <cmath>
#include <limits>

#include "relbgk/errors.hpp"

namespace relbgk {

struct RootResult {
  double x = 0.0;
  double value = 0.0;  // G(x)
  double lo = 0.0;     // final bracket, G(lo) > 0
  double hi = 0.0;     // G(hi) < 0
  int bisections = 0;
  int newton_steps = 0;
};

/// Root of a strictly decreasing G on (0, inf).
///
/// Brackets by doubling/halving from `start`, bisects (at most 80 steps) until
/// the bracket is narrow, then polishes with at most 5 Newton steps that are
/// kept inside the bracket. Stops once |G| <= abs_tol. Throws NoSolution if G
/// stays positive up to the largest representable argument (or negative down
/// to the smallest).
template <class G, class DG>
RootResult find_decreasing_root(G&& g, DG&& dg, double abs_tol, double start = 1.0) {
  constexpr int kMaxExpand = 2000;
  constexpr int kMaxBisect = 80;
  constexpr int kMaxNewton = 5;
  constexpr double kNewtonHandoff = 1e-8;

  RootResult r;
  double lo = start;
  double hi = start;
  double glo = g(lo);
  double ghi = glo;
  if (glo == 0.0) {
    r.x = r.lo = r.hi = lo;
    return r;
  }
  int expand = 0;
  if (glo > 0.0) {
    while (ghi > 0.0) {
      lo = hi;
      glo = ghi;
      hi *= 2.0;
      if (++expand > kMaxExpand || !std::isfinite(hi))
        throw NoSolution("root bracket: function stays positive as the argument grows");
      ghi = g(hi);
    }
  } else {
    while (glo < 0.0) {
      hi = lo;
      ghi = glo;
      lo *= 0.5;
      if (++expand > kMaxExpand || lo < std::numeric_limits<double>::min())
        throw NoSolution("root bracket: function stays negative as the argument shrinks");
      glo = g(lo);
    }
  }
  if (ghi == 0.0) {
    r.x = r.lo = r.hi = hi;
    return r;
  }
  if (glo == 0.0) {
    r.x = r.lo = r.hi = lo;
    return r;
  }

  double x = 0.5 * (lo + hi);
  double gx = g(x);
  auto shrink = [&](double at, double value) {
    if (value > 0.0) {
      lo = at;
      glo = value;
    } else {
      hi = at;
      ghi = value;
    }
  };

  auto bisect_until = [&](double rel_width) {
    while (r.bisections < kMaxBisect && std::abs(gx) > abs_tol && (hi - lo) > rel_width * hi) {
      shrink(x, gx);
      x = 0.5 * (lo + hi);
      gx = g(x);
      ++r.bisections;
    }
  };

  bisect_until(kNewtonHandoff);
  while (r.newton_steps < kMaxNewton && std::abs(gx) > abs_tol) {
    shrink(x, gx);
    const double slope = dg(x);
    double next = x - gx / slope;
    if (!(slope < 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    gx = g(x);
    ++r.newton_steps;
  }
  bisect_until(0.0);
  if (gx != 0.0) shrink(x, gx);

  r.x = x;
  r.value = gx;
  r.lo = lo;
  r.hi = hi;
  return r;
}

}  // namespace relbgk
