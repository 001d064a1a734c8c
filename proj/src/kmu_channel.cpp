#include "kmusec/kmu_channel.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "detail/link_model.hpp"
#include "kmusec/errors.hpp"

namespace kmusec {

namespace detail {
std::atomic<bool>& coefficient_fault_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}
}  // namespace detail

namespace testing {
void set_coefficient_fault(bool on) { detail::coefficient_fault_flag().store(on); }
bool coefficient_fault() { return detail::coefficient_fault_flag().load(); }
}  // namespace testing

namespace {

double gamma_log_pdf(int shape, double rate, double x) {
  int sign = 0;
  return shape * std::log(rate) + (shape - 1) * std::log(x) - rate * x -
         boost::math::lgamma(static_cast<double>(shape), &sign);
}

double stable_sum(detail::TermAccumulator<double>& acc) {
  return acc.finish().sum;
}

}  // namespace

void validate(const KmuShadowedParams& p, bool require_integer_m) {
  if (!(p.gamma_bar > 0) || !std::isfinite(p.gamma_bar))
    throw DomainError("gamma_bar must be positive and finite");
  if (!(p.kappa >= 0) || !std::isfinite(p.kappa)) throw DomainError("kappa must be >= 0");
  if (p.mu < 1) throw DomainError("mu must be >= 1");
  if (require_integer_m) {
    if (!(p.m >= 1) || std::abs(p.m - std::round(p.m)) > 1e-12)
      throw DomainError("m must be an integer >= 1");
  } else if (!(p.m >= 0.5) || !std::isfinite(p.m)) {
    throw DomainError("m must be >= 0.5");
  }
}

Regime effective_regime(const KmuShadowedParams& p) {
  if (p.kappa > 0 && p.m < p.mu) return Regime::MBelowMu;
  return Regime::MAtLeastMu;
}

namespace {

void require_mixture(const KmuShadowedParams& p) {
  validate(p);
  if (p.kappa == 0.0 && p.m < p.mu)
    throw DegenerateParameterError(
        "kappa = 0 with m < mu: the mixture coefficients divide by mu*kappa; use the Nakagami-mu limit");
}

}  // namespace

GammaMixture build_mixture(const KmuShadowedParams& p) {
  require_mixture(p);
  const auto L = detail::make_link_model<double>(p);
  GammaMixture g;
  g.regime = L.below ? Regime::MBelowMu : Regime::MAtLeastMu;
  g.delta1 = L.delta1;
  g.delta2 = L.delta2;
  for (const auto& t : L.mixture) {
    g.terms.push_back({std::log(std::abs(t.weight)), t.weight < 0 ? -1 : 1, t.shape, 1.0 / t.rate});
  }
  return g;
}

double pdf(const KmuShadowedParams& p, double gamma) {
  if (gamma < 0) throw DomainError("pdf: gamma must be >= 0");
  require_mixture(p);
  const auto L = detail::make_link_model<double>(p);
  detail::TermAccumulator<double> acc;
  for (const auto& t : L.mixture) {
    if (gamma == 0.0) {
      if (t.shape == 1) acc.add(t.weight * t.rate);
      continue;
    }
    acc.add(t.weight * std::exp(gamma_log_pdf(t.shape, t.rate, gamma)));
  }
  return stable_sum(acc);
}

double ccdf(const KmuShadowedParams& p, double gamma) {
  if (gamma < 0) throw DomainError("ccdf: gamma must be >= 0");
  require_mixture(p);
  if (gamma == 0) return 1.0;
  const auto L = detail::make_link_model<double>(p);
  detail::TermAccumulator<double> acc;
  for (const auto& t : L.mixture) acc.add(t.weight * boost::math::gamma_q(static_cast<double>(t.shape), t.rate * gamma));
  return stable_sum(acc);
}

double cdf(const KmuShadowedParams& p, double gamma) {
  if (gamma < 0) throw DomainError("cdf: gamma must be >= 0");
  require_mixture(p);
  if (gamma == 0) return 0.0;
  const auto L = detail::make_link_model<double>(p);
  detail::TermAccumulator<double> acc;
  acc.add(1.0);
  for (const auto& t : L.mixture)
    acc.add(-t.weight * boost::math::gamma_q(static_cast<double>(t.shape), t.rate * gamma));
  return stable_sum(acc);
}

double cdf_rewritten(const KmuShadowedParams& p, double gamma) {
  if (gamma < 0) throw DomainError("cdf_rewritten: gamma must be >= 0");
  require_mixture(p);
  const auto L = detail::make_link_model<double>(p);
  detail::TermAccumulator<double> acc;
  acc.add(1.0);
  for (const auto& t : L.ccdf_terms()) {
    const double xp = t.power == 0 ? 1.0 : std::pow(gamma, t.power);
    acc.add(-t.coef * xp * std::exp(-t.rate * gamma));
  }
  return stable_sum(acc);
}

namespace {

// Negative-binomial weights of the gamma(mu+n, delta1) components.
struct NbSeries {
  double log_p;    // m * ln(p)
  double log_1mp;  // ln(1-p)
  double m;
  int mu;
  double delta1;
};

NbSeries nb_series(const KmuShadowedParams& p) {
  validate(p, false);
  NbSeries s;
  s.m = p.m;
  s.mu = p.mu;
  s.delta1 = p.gamma_bar / (p.mu * (1.0 + p.kappa));
  const double denom = p.mu * p.kappa + p.m;
  s.log_p = p.m * std::log(p.m / denom);
  s.log_1mp = p.kappa > 0 ? std::log(p.mu * p.kappa / denom) : -INFINITY;
  return s;
}

}  // namespace

double cdf_series(const KmuShadowedParams& p, double gamma) {
  if (gamma < 0) throw DomainError("cdf_series: gamma must be >= 0");
  const NbSeries s = nb_series(p);
  if (gamma == 0) return 0.0;
  const double y = gamma / s.delta1;
  double sum = 0.0, weight_sum = 0.0;
  double lw = s.log_p;  // ln w_0
  for (int n = 0; n < 1000000; ++n) {
    const double w = std::exp(lw);
    const double P = boost::math::gamma_p(s.mu + static_cast<double>(n), y);
    sum += w * P;
    weight_sum += w;
    const double tail = (1.0 - weight_sum) * P;
    if (s.log_1mp == -INFINITY) break;
    if (n > 0 && (tail <= 1e-17 * sum || P == 0.0 || weight_sum >= 1.0)) break;
    lw += std::log((s.m + n) / (n + 1.0)) + s.log_1mp;
  }
  return sum;
}

double pdf_series(const KmuShadowedParams& p, double gamma) {
  if (gamma < 0) throw DomainError("pdf_series: gamma must be >= 0");
  const NbSeries s = nb_series(p);
  if (gamma == 0) return s.mu == 1 ? std::exp(s.log_p) / s.delta1 : 0.0;
  const double y = gamma / s.delta1;
  double sum = 0.0, weight_sum = 0.0, peak = 0.0;
  double lw = s.log_p;
  int sign = 0;
  for (int n = 0; n < 1000000; ++n) {
    const double a = s.mu + static_cast<double>(n);
    const double term = std::exp(lw + (a - 1) * std::log(y) - y - boost::math::lgamma(a, &sign)) / s.delta1;
    sum += term;
    weight_sum += std::exp(lw);
    peak = std::max(peak, term);
    if (s.log_1mp == -INFINITY) break;
    // Past the peak the gamma densities decay geometrically in n.
    if (a > y + 1 && term <= 1e-18 * sum) break;
    if (weight_sum >= 1.0 - 1e-18 && a > y + 1) break;
    lw += std::log((s.m + n) / (n + 1.0)) + s.log_1mp;
  }
  return sum;
}

double cdf_tail_accurate(const KmuShadowedParams& p, double gamma) {
  const double c = cdf(p, gamma);
  if (c <= 0.5) return cdf_series(p, gamma);
  return c;
}

double ccdf_tail_accurate(const KmuShadowedParams& p, double gamma) {
  const double c = cdf(p, gamma);
  if (c <= 0.5) return 1.0 - cdf_series(p, gamma);
  return ccdf(p, gamma);
}

KmuShadowedParams scale_for_mrc(const KmuShadowedParams& p, int n_branches) {
  if (n_branches < 1) throw DomainError("scale_for_mrc: n_branches must be >= 1");
  return {p.gamma_bar * n_branches, p.kappa, p.mu * n_branches, p.m * n_branches};
}

KmuSampler::KmuSampler(const KmuShadowedParams& p)
    : scale_(p.gamma_bar / (p.mu * (1.0 + p.kappa))),
      los_(std::sqrt(p.kappa)),
      mu_(p.mu),
      shadowed_(p.kappa > 0),
      xi_(p.m, 1.0 / p.m),
      normal_(0.0, std::sqrt(0.5)) {
  validate(p, false);
}

double KmuSampler::operator()(Rng& rng) {
  const double amp = shadowed_ ? los_ * std::sqrt(xi_(rng)) : 0.0;
  double s = 0.0;
  for (int i = 0; i < mu_; ++i) {
    const double re = normal_(rng) + amp;
    const double im = normal_(rng);
    s += re * re + im * im;
  }
  return s * scale_;
}

double sample(const KmuShadowedParams& p, Rng& rng) {
  KmuSampler s(p);
  return s(rng);
}

}  // namespace kmusec
