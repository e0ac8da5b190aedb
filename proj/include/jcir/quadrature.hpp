#pragma once

#include <algorithm>
#include <cmath>

namespace jcir {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction. The tolerance is absolute and
// split evenly between halves at each refinement.
template <class F>
double adaptive_simpson(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, opt.abs_tol, opt.max_depth);
}

// Integral over [0, t] split into pieces that double in length from `scale`,
// so fast initial transients are resolved before the long flat tail is
// sampled. The tolerance is shared equally between pieces.
template <class F>
double integrate_from_zero(F&& f, double t, double scale, const QuadratureOptions& opt = {}) {
  if (t <= 0.0) return 0.0;
  if (!(scale > 0.0) || scale >= t) return adaptive_simpson(f, 0.0, t, opt);
  int pieces = 1;
  for (double edge = scale; edge < t; edge *= 2.0) ++pieces;
  QuadratureOptions piece = opt;
  piece.abs_tol = opt.abs_tol / pieces;
  double sum = adaptive_simpson(f, 0.0, scale, piece);
  for (double lo = scale; lo < t; lo *= 2.0) sum += adaptive_simpson(f, lo, std::min(2.0 * lo, t), piece);
  return sum;
}

}  // namespace jcir
