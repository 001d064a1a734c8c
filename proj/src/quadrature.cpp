#include "kmusec/quadrature.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kmusec/errors.hpp"

namespace kmusec {

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
  if (!(b >= a)) throw DomainError("integrate: b < a");
  QuadResult r;
  if (a == b) return r;
  double error = 0.0, l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, opt.max_depth,
                                                                            opt.rel_tol, &error, &l1);
  r.error = error;
  r.panels = 1;
  if (!std::isfinite(r.value)) throw ConvergenceError("integrate: non-finite integral");
  if (error > 100 * opt.rel_tol * l1 && error > opt.abs_tol) {
    throw ConvergenceError("integrate: error estimate " + std::to_string(error) +
                           " above tolerance after maximum subdivision on [" + std::to_string(a) +
                           ", " + std::to_string(b) + "]");
  }
  return r;
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double first_width,
                                 const QuadOptions& opt) {
  if (!(first_width > 0)) throw DomainError("integrate_to_infinity: width must be positive");
  QuadResult total;
  double lo = a, w = first_width;
  const double stop = 1e-3 * opt.rel_tol;
  for (int k = 0; k < opt.max_panels; ++k) {
    const double hi = lo + w;
    const QuadResult p = integrate(f, lo, hi, opt);
    total.value += p.value;
    total.error += p.error;
    total.panels += 1;
    const double scale = std::abs(total.value);
    const double tail = std::abs(f(hi)) * hi;
    if (std::abs(p.value) <= stop * scale && tail <= stop * scale) return total;
    if (scale == 0.0 && tail == 0.0 && k > 60) return total;
    lo = hi;
    w *= 2.0;
  }
  throw ConvergenceError("integrate_to_infinity: tail did not vanish");
}

}  // namespace kmusec
