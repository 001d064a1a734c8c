#pragma once

#include <functional>

namespace kmusec {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  unsigned max_depth = 18;
  int max_panels = 400;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive 21-point Gauss-Kronrod on [a, b].
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

// [a, inf) as geometrically growing panels a + w (2^k - 1); stops once a
// panel and the end-point tail estimate f(x) * x are negligible.
QuadResult integrate_to_infinity(const Integrand& f, double a, double first_width,
                                 const QuadOptions& opt = {});

}  // namespace kmusec
