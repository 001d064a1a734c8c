#pragma once

// Real-type plumbing shared by the templated closed forms: the extended
// precision ladder, exact factorial/binomial tables and the compensated
// accumulator with its cancellation detector.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace kmusec::detail {

namespace bmp = boost::multiprecision;

using mp50 = bmp::number<bmp::mpfr_float_backend<50>, bmp::et_off>;
using mp120 = bmp::number<bmp::mpfr_float_backend<120>, bmp::et_off>;
using mp300 = bmp::number<bmp::mpfr_float_backend<300>, bmp::et_off>;
using mp800 = bmp::number<bmp::mpfr_float_backend<800>, bmp::et_off>;

template <class R>
constexpr int digits10_of() {
  return std::numeric_limits<R>::digits10;
}

// Significant digits a sum may lose before the result is rejected.
template <class R>
constexpr int allowed_digit_loss() {
  return digits10_of<R>() - 11;
}

template <class R>
double to_double(const R& x) {
  return static_cast<double>(x);
}

template <class R>
bool is_finite(const R& x) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(x);
}

template <class R>
R euler_gamma() {
  return boost::math::constants::euler<R>();
}

template <class R>
R ln_two() {
  return boost::math::constants::ln_two<R>();
}

template <class R>
R int_pow(R base, int n) {
  R result = 1;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// 0! .. n! as exact products in R.
template <class R>
std::vector<R> factorial_table(int n) {
  std::vector<R> f(static_cast<std::size_t>(n) + 1);
  f[0] = 1;
  for (int i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

template <class R>
R binomial(int n, int k) {
  if (k < 0 || k > n) return R(0);
  k = std::min(k, n - k);
  R r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Collects signed terms, sums them smallest magnitude first with Neumaier
// compensation and remembers the largest single magnitude.
template <class R>
class TermAccumulator {
 public:
  void add(const R& t) {
    terms_.push_back(t);
  }
  std::uint64_t count() const { return terms_.size(); }

  struct Summary {
    R sum;
    R max_abs;
    bool finite;
  };

  Summary finish() {
    using std::abs;
    Summary s{R(0), R(0), true};
    for (const auto& t : terms_) {
      if (!is_finite(t)) {
        s.finite = false;
        return s;
      }
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const R& a, const R& b) { return abs(a) < abs(b); });
    R sum = 0, comp = 0;
    for (const auto& t : terms_) {
      R y = sum + t;
      if (abs(sum) >= abs(t))
        comp += (sum - y) + t;
      else
        comp += (t - y) + sum;
      sum = y;
    }
    s.sum = sum + comp;
    if (!terms_.empty()) s.max_abs = abs(terms_.back());
    return s;
  }

 private:
  std::vector<R> terms_;
};

// True when |sum| keeps enough digits relative to the largest term at R's
// working precision.
template <class R>
bool cancellation_ok(const R& sum, const R& max_abs) {
  using std::abs;
  using std::pow;
  if (max_abs == 0) return true;
  const R floor = max_abs * pow(R(10), R(-allowed_digit_loss<R>()));
  return abs(sum) >= floor;
}

}  // namespace kmusec::detail
