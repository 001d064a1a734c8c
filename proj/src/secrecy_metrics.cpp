#include "kmusec/secrecy_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "detail/escalate.hpp"
#include "detail/special.hpp"
#include "detail/tables.hpp"
#include "kmusec/combinat.hpp"
#include "kmusec/errors.hpp"
#include "kmusec/sim_oracle.hpp"

namespace kmusec {

const char* to_string(Method m) {
  switch (m) {
    case Method::Exact: return "Exact";
    case Method::Asymptotic: return "Asymptotic";
    case Method::Quadrature: return "Quadrature";
    case Method::MonteCarlo: return "MonteCarlo";
  }
  return "Unknown";
}

namespace {

using detail::ExpPolyTerm;
using detail::LevelResult;
using detail::TermAccumulator;

template <class R>
int max_power(const std::vector<ExpPolyTerm<R>>& v) {
  int d = 0;
  for (const auto& t : v) d = std::max(d, t.power);
  return d;
}

template <class R>
LevelResult finish(TermAccumulator<R>& acc, const R& scale = R(1)) {
  const std::uint64_t n = acc.count();
  auto s = acc.finish();
  LevelResult r;
  r.terms = n;
  r.ok = s.finite && detail::cancellation_ok(s.sum, s.max_abs);
  r.value = detail::to_double(R(s.sum * scale));
  if (!std::isfinite(r.value)) r.ok = false;
  return r;
}

double clamp_probability(double v, const char* what) {
  if (v < -1e-9 || v > 1.0 + 1e-9)
    throw NumericInstabilityError(std::string(what) + ": raw value " + std::to_string(v) +
                                  " outside [0, 1]");
  return std::min(1.0, std::max(0.0, v));
}

double clamp_capacity(double v, const char* what) {
  if (v < -1e-9) throw NumericInstabilityError(std::string(what) + ": negative capacity " + std::to_string(v));
  return std::max(0.0, v);
}

double ln_gamma_d(double x) {
  int sign = 0;
  return boost::math::lgamma(x, &sign);
}

// SOP = sum over Bob terms C x^D e^{-lambda x} evaluated at x = tau y + tau - 1
// and integrated against each Eve gamma density w theta^n y^{n-1} e^{-theta y}/(n-1)!;
// (tau y + tau - 1)^D is expanded binomially.
template <class R>
LevelResult sop_level(const WiretapConfig& c) {
  using std::exp;
  using std::pow;
  const auto bob = detail::cached_bob_table<R>(c);
  const auto eve = detail::cached_link<R>(eve_sum(c));
  const R tau = pow(R(2), R(c.rate_s));
  const R tm1 = tau - 1;
  const int max_d = max_power(bob->terms);
  int max_n = 1;
  for (const auto& g : eve->mixture) max_n = std::max(max_n, g.shape);
  const auto fact = detail::factorial_table<R>(max_d + max_n);
  std::vector<R> pow_tau(max_d + 1), pow_tm1(max_d + 1);
  pow_tau[0] = 1;
  pow_tm1[0] = 1;
  for (int i = 1; i <= max_d; ++i) {
    pow_tau[i] = pow_tau[i - 1] * tau;
    pow_tm1[i] = pow_tm1[i - 1] * tm1;
  }
  TermAccumulator<R> acc;
  for (const auto& t : bob->terms) {
    const R shift = exp(-t.rate * tm1);
    for (const auto& g : eve->mixture) {
      const R inv = R(1) / (t.rate * tau + g.rate);
      const R base = t.coef * shift * g.weight * detail::int_pow(R(g.rate * inv), g.shape) / fact[g.shape - 1];
      R ps = 1, cb = 1;
      for (int b = 0; b <= t.power; ++b) {
        const R rest = pow_tm1[t.power - b];
        if (rest != 0) acc.add(base * cb * pow_tau[b] * rest * fact[b + g.shape - 1] * ps);
        ps *= inv;
        cb = cb * (t.power - b) / (b + 1);
      }
    }
  }
  return finish(acc);
}

std::uint64_t sop_estimate(const WiretapConfig& c) {
  const auto bob = detail::cached_bob_table<double>(c);
  const auto eve = detail::cached_link<double>(eve_sum(c));
  return bob->terms.size() * eve->mixture.size() * static_cast<std::uint64_t>(max_power(bob->terms) + 1);
}

// Gamma(D+1) e^{lambda} Gamma(-D, lambda) per Bob term with k >= 1.
template <class R>
void add_cap_main_terms(const detail::BobTable<R>& bob, const std::vector<R>& fact, TermAccumulator<R>& acc) {
  for (std::size_t i = 0; i < bob.terms.size(); ++i) {
    if (bob.outer_k[i] == 0) continue;
    const auto& t = bob.terms[i];
    acc.add(-t.coef * detail::gamma_scaled_neg_order<R>(t.power, t.rate, fact));
  }
}

template <class R>
void add_loss_terms(const detail::BobTable<R>& bob, const std::vector<ExpPolyTerm<R>>& eve_ccdf,
                    const std::vector<R>& fact, TermAccumulator<R>& acc, bool negate) {
  for (std::size_t i = 0; i < bob.terms.size(); ++i) {
    if (bob.outer_k[i] == 0) continue;
    const auto& t = bob.terms[i];
    for (const auto& e : eve_ccdf) {
      R v = -t.coef * e.coef * detail::gamma_scaled_neg_order<R>(t.power + e.power, R(t.rate + e.rate), fact);
      acc.add(negate ? R(-v) : v);
    }
  }
}

template <class R>
LevelResult cap_main_level(const WiretapConfig& c) {
  const auto bob = detail::cached_bob_table<R>(c);
  const auto fact = detail::factorial_table<R>(max_power(bob->terms) + 1);
  TermAccumulator<R> acc;
  add_cap_main_terms(*bob, fact, acc);
  return finish(acc, R(R(1) / detail::ln_two<R>()));
}

template <class R>
LevelResult cap_eve_level(const WiretapConfig& c) {
  const auto eve = detail::cached_link<R>(eve_sum(c));
  const auto terms = eve->ccdf_terms();
  const auto fact = detail::factorial_table<R>(max_power(terms) + 1);
  TermAccumulator<R> acc;
  for (const auto& e : terms) acc.add(e.coef * detail::gamma_scaled_neg_order<R>(e.power, e.rate, fact));
  return finish(acc, R(R(1) / detail::ln_two<R>()));
}

template <class R>
LevelResult loss_level(const WiretapConfig& c, bool with_cap) {
  const auto bob = detail::cached_bob_table<R>(c);
  const auto eve = detail::cached_link<R>(eve_sum(c));
  const auto eve_ccdf = eve->ccdf_terms();
  const auto fact = detail::factorial_table<R>(max_power(bob->terms) + max_power(eve_ccdf) + 1);
  TermAccumulator<R> acc;
  if (with_cap) add_cap_main_terms(*bob, fact, acc);
  add_loss_terms(*bob, eve_ccdf, fact, acc, with_cap);
  return finish(acc, R(R(1) / detail::ln_two<R>()));
}

// E[ln gamma_B] = ln gbar_T + sum_{k>=1} C U(D, lambda), with
// U(0, lambda) = Euler + ln(lambda gbar_T) and U(D, lambda) = -Gamma(D) lambda^{-D};
// obtained by differentiating E[gamma^s] = -s sum C Gamma(s+D) lambda^{-s-D} at s = 0.
template <class R>
LevelResult log_moment_level(const WiretapConfig& c) {
  using std::log;
  const auto bob = detail::cached_bob_table<R>(c);
  const R gbar_t = R(c.n_b) * R(c.bob.gamma_bar);
  const auto fact = detail::factorial_table<R>(max_power(bob->terms) + 1);
  TermAccumulator<R> acc;
  acc.add(log(gbar_t));
  for (std::size_t i = 0; i < bob->terms.size(); ++i) {
    if (bob->outer_k[i] == 0) continue;
    const auto& t = bob->terms[i];
    if (t.power == 0)
      acc.add(t.coef * (detail::euler_gamma<R>() + log(R(t.rate * gbar_t))));
    else
      acc.add(-t.coef * fact[t.power - 1] / detail::int_pow(t.rate, t.power));
  }
  return finish(acc);
}

void check_loss_budget(const WiretapConfig& c) {
  const auto bob = detail::cached_bob_table<double>(c);
  const auto eve = detail::cached_link<double>(eve_sum(c));
  check_term_budget(bob->terms.size() * (eve->ccdf_terms().size() + 1), "asc closed form");
}

}  // namespace

bool regimes_match(const WiretapConfig& c) {
  return effective_regime(c.bob) == effective_regime(c.eve);
}

MetricResult sop_exact(const WiretapConfig& c) {
  validate(c);
  if (!regimes_match(c)) return quad_sop(c);
  check_term_budget(sop_estimate(c), "sop_exact");
  auto eval = [&]<class R>() { return sop_level<R>(c); };
  const auto r = detail::escalate(eval, "sop_exact");
  return {clamp_probability(r.value, "sop_exact"), Method::Exact, 0.0, r.terms};
}

MetricResult sop_high_snr_bound(const WiretapConfig& c) {
  validate(c);
  return quad_sop_bound(c);
}

int diversity_order(const WiretapConfig& c) {
  return c.n_a * c.n_b * c.bob.mu;
}

MetricResult sop_asymptotic(const WiretapConfig& c) {
  validate(c);
  const auto& B = c.bob;
  const auto& E = c.eve;
  const int mb = detail::integer_m(B);
  const int me = detail::integer_m(E);
  const int mu_b = c.n_b * B.mu, m_b = c.n_b * mb;
  const int mu_e = c.n_e * E.mu, m_e = c.n_e * me;
  const int g = diversity_order(c);

  // Bob: F_1(x) ~ K x^{N_B mu_B} near the origin.
  const double pb = mb / (B.mu * B.kappa + mb);
  const double d1b = B.gamma_bar / (B.mu * (1.0 + B.kappa));
  const double ln_k = m_b * std::log(pb) - ln_gamma_d(mu_b + 1.0) - mu_b * std::log(d1b);

  // Eve: E[gamma_E^G] from the negative-binomial gamma mixture, with the
  // 2F1 reduced by Pfaff to a terminating, positive series.
  const double d1e = E.gamma_bar / (E.mu * (1.0 + E.kappa));
  const double zp = E.mu * E.kappa / me;
  double ln_s = 0.0;
  {
    // log-sum-exp over (m_e)_k (G)_k / ((mu_e)_k k!) zp^k
    std::vector<double> lt;
    double cur = 0.0;
    lt.push_back(0.0);
    if (zp > 0) {
      for (int k = 0; k < g; ++k) {
        cur += std::log((m_e + k) * static_cast<double>(g - k) / ((mu_e + k) * (k + 1.0))) + std::log(zp);
        lt.push_back(cur);
      }
    }
    const double mx = *std::max_element(lt.begin(), lt.end());
    double s = 0.0;
    for (double v : lt) s += std::exp(v - mx);
    ln_s = mx + std::log(s);
  }
  const double ln_moment = g * std::log(d1e) + ln_gamma_d(mu_e + static_cast<double>(g)) - ln_gamma_d(mu_e) + ln_s;
  const double ln_sop = c.n_a * ln_k + g * c.rate_s * std::log(2.0) + ln_moment;
  return {std::exp(ln_sop), Method::Asymptotic, 0.0, static_cast<std::uint64_t>(g + 1)};
}

MetricResult cap_main(const WiretapConfig& c) {
  validate(c);
  check_term_budget(bob_term_count(c), "cap_main");
  auto eval = [&]<class R>() { return cap_main_level<R>(c); };
  const auto r = detail::escalate(eval, "cap_main");
  return {clamp_capacity(r.value, "cap_main"), Method::Exact, 0.0, r.terms};
}

MetricResult cap_eve(const WiretapConfig& c) {
  validate(c);
  auto eval = [&]<class R>() { return cap_eve_level<R>(c); };
  const auto r = detail::escalate(eval, "cap_eve");
  return {clamp_capacity(r.value, "cap_eve"), Method::Exact, 0.0, r.terms};
}

MetricResult asc_loss(const WiretapConfig& c) {
  validate(c);
  check_loss_budget(c);
  auto eval = [&]<class R>() { return loss_level<R>(c, false); };
  const auto r = detail::escalate(eval, "asc_loss");
  return {clamp_capacity(r.value, "asc_loss"), Method::Exact, 0.0, r.terms};
}

MetricResult asc_exact(const WiretapConfig& c) {
  validate(c);
  if (!regimes_match(c)) return quad_asc(c);
  check_loss_budget(c);
  auto eval = [&]<class R>() { return loss_level<R>(c, true); };
  const auto r = detail::escalate(eval, "asc_exact");
  return {clamp_capacity(r.value, "asc_exact"), Method::Exact, 0.0, r.terms};
}

MetricResult asc_asymptotic(const WiretapConfig& c) {
  validate(c);
  check_term_budget(bob_term_count(c), "asc_asymptotic");
  auto eval = [&]<class R>() { return log_moment_level<R>(c); };
  const auto r = detail::escalate(eval, "asc_asymptotic");
  const MetricResult ce = cap_eve(c);
  // A high-SNR approximation; below its range of validity it is floored at 0.
  const double v = std::max(0.0, r.value / std::log(2.0) - ce.value);
  return {v, Method::Asymptotic, 0.0, r.terms + ce.term_count};
}

}  // namespace kmusec
