// Golden-section minimization on a bracket

#pragma once

#include <cmath>
#include <utility>

namespace majorlens {

struct GoldenResult {
  double x;
  double value;
};

/// Minimizes f on [a, b] assuming a single dip; stops once b - a < tol.
template <class F>
GoldenResult golden_section_minimize(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
}

}  // namespace majorlens
