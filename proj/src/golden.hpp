#pragma once

#include <cmath>
#include <span>

namespace levar::detail {

struct GoldenResult {
  double x;
  double fx;
  double lo;
  double hi;
  int iterations;
};

// Golden-section search for a convex f on [lo, hi]. After the bracket has
// shrunk below `width_tol`, the points in `kinks` that fall inside the final
// bracket are also tried; for piecewise-linear objectives the minimum sits on
// one of them.
template <class F>
GoldenResult golden_minimize(F&& f, double lo, double hi, double width_tol, int max_iter,
                             std::span<const double> kinks = {}) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (it < max_iter && (b - a) > width_tol) {
    ++it;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }

  GoldenResult r{c, fc, a, b, it};
  if (fd < r.fx) {
    r.x = d;
    r.fx = fd;
  }
  for (double t : {a, b, 0.5 * (a + b)}) {
    const double ft = f(t);
    if (ft < r.fx) {
      r.x = t;
      r.fx = ft;
    }
  }
  const double slack = b - a;
  for (double t : kinks) {
    if (t < a - slack || t > b + slack) continue;
    const double ft = f(t);
    if (ft < r.fx) {
      r.x = t;
      r.fx = ft;
    }
  }
  return r;
}

}  // namespace levar::detail
