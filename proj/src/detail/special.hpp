#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "detail/real.hpp"
#include "kmusec/errors.hpp"

namespace kmusec::detail {

// e^x E_n(x) for integer n >= 0 and x > 0, in any real type.
// Series (Numerical Recipes style) below the switch point, modified Lentz
// continued fraction above it.  Higher precision types move the switch point
// up because the continued fraction converges slowly near x = 1 when many
// digits are requested, while the alternating series only costs ~x/ln(10)
// digits there.
template <class R>
R expint_scaled_t(int n, const R& x) {
  using std::abs;
  using std::exp;
  using std::log;
  if (n < 0) throw DomainError("expint: negative order");
  if (!(x > 0)) {
    if (x == 0 && n >= 2) return R(1) / (n - 1);
    throw DomainError("expint: argument must be positive");
  }
  if (n == 0) return R(1) / x;
  const R eps = std::numeric_limits<R>::epsilon();
  const int digits = digits10_of<R>();
  const double switch_at = digits > 20 ? digits / 8.0 : 1.0;
  const int max_iter = 200000;

  if (x > switch_at) {
    const R tiny = std::numeric_limits<R>::min() * 1e10;
    R b = x + n;
    R c = R(1) / tiny;
    R d = R(1) / b;
    R h = d;
    for (int i = 1; i <= max_iter; ++i) {
      const R a = -R(i) * (n - 1 + i);
      b += 2;
      d = R(1) / (a * d + b);
      c = b + a / c;
      const R del = c * d;
      h *= del;
      if (abs(del - 1) <= eps) return h;
    }
    throw ConvergenceError("expint: continued fraction did not converge");
  }

  const int nm1 = n - 1;
  R ans = nm1 != 0 ? R(1) / nm1 : R(-log(x) - euler_gamma<R>());
  R fact = 1;
  for (int i = 1; i <= max_iter; ++i) {
    fact *= -x / i;
    R del;
    if (i != nm1) {
      del = -fact / (i - nm1);
    } else {
      R psi = -euler_gamma<R>();
      for (int ii = 1; ii <= nm1; ++ii) psi += R(1) / ii;
      del = fact * (-log(x) + psi);
    }
    ans += del;
    if (abs(del) < abs(ans) * eps) return ans * exp(x);
  }
  throw ConvergenceError("expint: series did not converge");
}

// n! * x^{-n} * e^x E_{n+1}(x) == Gamma(n+1) e^x Gamma(-n, x), the building
// block of every capacity integral with a 1/(1+x) kernel.
template <class R>
R gamma_scaled_neg_order(int n, const R& x, const std::vector<R>& fact) {
  using std::log;
  using std::exp;
  const R e = expint_scaled_t<R>(n + 1, x);
  if constexpr (std::is_same_v<R, double>) {
    const double lm = std::log(fact[n]) - n * std::log(x);
    return std::exp(lm) * e;
  } else {
    return fact[n] * e / int_pow(x, n);
  }
}

}  // namespace kmusec::detail
