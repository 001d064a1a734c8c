#pragma once

// Coefficient tables of one kappa-mu shadowed link in an arbitrary real type.
//
// Density: signed mixture of gamma(shape, rate) densities.
// CCDF:    sum_t a_t x^{eta-t} e^{-x/D1} + sum_q b_q x^{nu-q} e^{-x/D2},
//          with a_t, b_q prefix sums of the mixture weights (the power of x
//          collects every gamma term whose CCDF polynomial reaches it).

#include <atomic>
#include <cmath>
#include <vector>

#include "detail/real.hpp"
#include "kmusec/errors.hpp"
#include "kmusec/kmu_channel.hpp"

namespace kmusec::detail {

std::atomic<bool>& coefficient_fault_flag();

template <class R>
struct GammaTermT {
  R weight;
  int shape;
  R rate;
};

template <class R>
struct ExpPolyTerm {
  R coef;
  int power;
  R rate;
};

template <class R>
struct LinkModel {
  bool below = false;  // m < mu with kappa > 0
  int eta = 0;         // mu - m when below, else 0
  int nu = 0;          // m when below, m (or mu for kappa = 0) otherwise
  R delta1 = 0;
  R delta2 = 0;
  std::vector<R> A1, A2, B;
  std::vector<GammaTermT<R>> mixture;
  std::vector<R> a;  // a[t-1], t = 1..eta : x^{eta-t} e^{-x/delta1}
  std::vector<R> b;  // b[q-1], q = 1..nu  : x^{nu-q} e^{-x/delta2}

  std::vector<ExpPolyTerm<R>> ccdf_terms() const {
    std::vector<ExpPolyTerm<R>> out;
    for (int t = 1; t <= eta; ++t) out.push_back({a[t - 1], eta - t, R(1) / delta1});
    for (int q = 1; q <= nu; ++q) out.push_back({b[q - 1], nu - q, R(1) / delta2});
    return out;
  }
};

inline int integer_m(const KmuShadowedParams& p) {
  const double r = std::round(p.m);
  if (std::abs(p.m - r) > 1e-12 || r < 1)
    throw DomainError("closed forms require integer m >= 1");
  return static_cast<int>(r);
}

template <class R>
LinkModel<R> make_link_model(const KmuShadowedParams& p, bool allow_fault = true) {
  validate(p);
  const int mu = p.mu;
  int m = integer_m(p);
  const R gbar = R(p.gamma_bar);
  const R kappa = R(p.kappa);
  LinkModel<R> L;
  const bool fault = allow_fault && coefficient_fault_flag().load();

  if (p.kappa == 0.0) {
    // No line-of-sight power: Nakagami-mu with shape mu and scale gbar/mu.
    m = mu;
    L.below = false;
    L.delta1 = gbar / mu;
    L.delta2 = L.delta1;
    L.B = {R(1)};
  } else {
    const R mk = R(mu) * kappa + m;
    const R pp = R(m) / mk;
    const R qq = R(mu) * kappa / mk;
    L.delta1 = gbar / (R(mu) * (1 + kappa));
    L.delta2 = mk / m * L.delta1;
    if (m < mu) {
      L.below = true;
      for (int j = 1; j <= mu - m; ++j) {
        R v = binomial<R>(m + j - 2, j - 1) * int_pow(pp, m) / int_pow(qq, m + j - 1);
        if (m % 2 == 1) v = -v;
        L.A1.push_back(v);
      }
      for (int j = 1; j <= m; ++j) {
        R v = binomial<R>(mu - m + j - 2, j - 1) * int_pow(pp, j - 1) / int_pow(qq, mu - m + j - 1);
        if ((j - 1) % 2 == 1) v = -v;
        L.A2.push_back(v);
      }
    } else {
      for (int j = 0; j <= m - mu; ++j)
        L.B.push_back(binomial<R>(m - mu, j) * int_pow(pp, j) * int_pow(qq, m - mu - j));
    }
  }

  if (L.below) {
    if (fault) L.A1[0] = -L.A1[0];
    L.eta = mu - m;
    L.nu = m;
    for (int j = 1; j <= L.eta; ++j) L.mixture.push_back({L.A1[j - 1], L.eta - j + 1, R(1) / L.delta1});
    for (int j = 1; j <= m; ++j) L.mixture.push_back({L.A2[j - 1], m - j + 1, R(1) / L.delta2});
  } else {
    if (fault) L.B[0] = -L.B[0];
    L.eta = 0;
    L.nu = m;
    for (int j = 0; j <= m - mu; ++j) L.mixture.push_back({L.B[j], m - j, R(1) / L.delta2});
  }

  const auto fact = factorial_table<R>(std::max(L.eta, L.nu));
  // a_t: gamma terms A1_j (shape eta-j+1) reach x^{eta-t} iff j <= t.
  R run = 0;
  for (int t = 1; t <= L.eta; ++t) {
    run += L.A1[t - 1];
    L.a.push_back(run / (fact[L.eta - t] * int_pow(L.delta1, L.eta - t)));
  }
  run = 0;
  if (L.below) {
    for (int q = 1; q <= L.nu; ++q) {
      run += L.A2[q - 1];
      L.b.push_back(run / (fact[L.nu - q] * int_pow(L.delta2, L.nu - q)));
    }
  } else {
    // B_j has shape m-j and reaches x^{nu-t} iff j <= min(beta, t-1).
    const int beta = m - mu;
    for (int t = 1; t <= L.nu; ++t) {
      if (t - 1 <= beta) run += L.B[t - 1];
      L.b.push_back(run / (fact[L.nu - t] * int_pow(L.delta2, L.nu - t)));
    }
  }
  return L;
}

}  // namespace kmusec::detail
