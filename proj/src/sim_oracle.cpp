#include "kmusec/sim_oracle.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "detail/link_model.hpp"
#include "kmusec/errors.hpp"
#include "kmusec/quadrature.hpp"

namespace kmusec {

namespace {

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> tol{1e-10};
  return tol;
}

// Point evaluation of one link's distribution, independent of the Bob
// expansion: closed-form mixture for the upper part, negative-binomial series
// for the lower tail.  Never subject to the coefficient fault injection, so it
// stays a reference when the closed forms are deliberately corrupted.
class LinkEval {
 public:
  explicit LinkEval(const KmuShadowedParams& p) : p_(p), L_(detail::make_link_model<double>(p, false)) {}

  double mixture_ccdf(double x) const {
    if (x <= 0) return 1.0;
    double s = 0.0;
    for (const auto& t : L_.mixture) s += t.weight * boost::math::gamma_q(static_cast<double>(t.shape), t.rate * x);
    return s;
  }
  double cdf(double x) const {
    if (x <= 0) return 0.0;
    const double c = 1.0 - mixture_ccdf(x);
    return c <= 0.5 ? cdf_series(p_, x) : c;
  }
  double ccdf(double x) const {
    if (x <= 0) return 1.0;
    const double q = mixture_ccdf(x);
    return q >= 0.5 ? 1.0 - cdf_series(p_, x) : q;
  }
  double pdf(double x) const {
    if (x < 0) return 0.0;
    double s = 0.0;
    for (const auto& t : L_.mixture) {
      if (x == 0) {
        if (t.shape == 1) s += t.weight * t.rate;
        continue;
      }
      int sign = 0;
      s += t.weight * std::exp(t.shape * std::log(t.rate) + (t.shape - 1) * std::log(x) - t.rate * x -
                               boost::math::lgamma(static_cast<double>(t.shape), &sign));
    }
    return s;
  }
  double mean() const { return p_.gamma_bar; }

 private:
  KmuShadowedParams p_;
  detail::LinkModel<double> L_;
};

// Bob's SNR after selection: F_B = F_1^{N_A}.
struct BobEval {
  LinkEval branch;
  int n_a;
  double cdf(double x) const { return std::pow(branch.cdf(x), n_a); }
  double ccdf(double x) const {
    const double f = branch.cdf(x);
    if (f <= 0.5) return -std::expm1(n_a * std::log(f));
    return -std::expm1(n_a * std::log1p(-branch.ccdf(x)));
  }
};

QuadOptions options() {
  QuadOptions o;
  o.rel_tol = quadrature_tolerance();
  return o;
}

MetricResult quad_result(const QuadResult& r, double scale = 1.0) {
  return {r.value * scale, Method::Quadrature, 0.0, static_cast<std::uint64_t>(r.panels)};
}

MetricResult quad_sop_impl(const WiretapConfig& c, bool shifted) {
  validate(c);
  const BobEval bob{LinkEval(bob_branch_sum(c)), c.n_a};
  const LinkEval eve(eve_sum(c));
  const double tau = std::exp2(c.rate_s);
  const double shift = shifted ? tau - 1.0 : 0.0;
  auto f = [&](double y) { return bob.cdf(tau * y + shift) * eve.pdf(y); };
  const auto r = integrate_to_infinity(f, 0.0, eve.mean(), options());
  return quad_result(r);
}

double eval_ln2() { return std::log(2.0); }

}  // namespace

void set_quadrature_tolerance(double rel_tol) {
  if (!(rel_tol > 0) || !(rel_tol < 1)) throw DomainError("quadrature tolerance must lie in (0, 1)");
  tolerance_slot().store(rel_tol);
}

double quadrature_tolerance() { return tolerance_slot().load(); }

MetricResult quad_sop(const WiretapConfig& c) { return quad_sop_impl(c, true); }

MetricResult quad_sop_bound(const WiretapConfig& c) { return quad_sop_impl(c, false); }

MetricResult quad_cap_main(const WiretapConfig& c) {
  validate(c);
  const BobEval bob{LinkEval(bob_branch_sum(c)), c.n_a};
  auto f = [&](double x) { return bob.ccdf(x) / (1.0 + x); };
  return quad_result(integrate_to_infinity(f, 0.0, 1.0, options()), 1.0 / eval_ln2());
}

MetricResult quad_cap_eve(const WiretapConfig& c) {
  validate(c);
  const LinkEval eve(eve_sum(c));
  auto f = [&](double x) { return eve.ccdf(x) / (1.0 + x); };
  return quad_result(integrate_to_infinity(f, 0.0, 1.0, options()), 1.0 / eval_ln2());
}

MetricResult quad_asc_loss(const WiretapConfig& c) {
  validate(c);
  const BobEval bob{LinkEval(bob_branch_sum(c)), c.n_a};
  const LinkEval eve(eve_sum(c));
  auto f = [&](double x) { return eve.ccdf(x) * bob.ccdf(x) / (1.0 + x); };
  return quad_result(integrate_to_infinity(f, 0.0, 1.0, options()), 1.0 / eval_ln2());
}

MetricResult quad_asc(const WiretapConfig& c) {
  validate(c);
  // C_B - L collapses to a single nonnegative integrand Fbar_B F_E / (1 + x).
  const BobEval bob{LinkEval(bob_branch_sum(c)), c.n_a};
  const LinkEval eve(eve_sum(c));
  auto f = [&](double x) { return bob.ccdf(x) * eve.cdf(x) / (1.0 + x); };
  return quad_result(integrate_to_infinity(f, 0.0, 1.0, options()), 1.0 / eval_ln2());
}

namespace {

constexpr std::uint64_t kBatch = 1u << 16;

Rng batch_stream(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32),
                    0x6b6d7573u};
  return Rng(seq);
}

struct TrialSampler {
  explicit TrialSampler(const WiretapConfig& c) : cfg(c), bob(c.bob), eve(c.eve) {}
  SnrDraw operator()(Rng& rng) {
    double best = -1.0;
    for (int k = 0; k < cfg.n_a; ++k) {
      double s = 0.0;
      for (int l = 0; l < cfg.n_b; ++l) s += bob(rng);
      if (s > best) best = s;
    }
    double e = 0.0;
    for (int f = 0; f < cfg.n_e; ++f) e += eve(rng);
    return {best, e};
  }
  WiretapConfig cfg;
  KmuSampler bob;
  KmuSampler eve;
};

struct BatchStats {
  std::uint64_t n = 0;
  std::uint64_t outages = 0;
  double asc_sum = 0.0;
  double asc_sq = 0.0;
};

}  // namespace

SimulationResult simulate(const WiretapConfig& c, std::uint64_t n_trials, std::uint64_t seed, unsigned threads) {
  validate(c, false);
  if (n_trials < 1) throw DomainError("simulate: n_trials must be >= 1");
  const std::uint64_t n_batches = (n_trials + kBatch - 1) / kBatch;
  std::vector<BatchStats> stats(n_batches);
  std::atomic<std::uint64_t> next{0};
  const double rate = c.rate_s;

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= n_batches) return;
      // Fresh sampler per batch: the normal and gamma distributions cache state.
      TrialSampler draw(c);
      Rng rng = batch_stream(seed, b);
      const std::uint64_t lo = b * kBatch;
      const std::uint64_t hi = std::min(n_trials, lo + kBatch);
      BatchStats s;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const SnrDraw d = draw(rng);
        const double cs = std::log2((1.0 + d.bob) / (1.0 + d.eve));
        if (cs < rate) ++s.outages;
        const double pos = cs > 0 ? cs : 0.0;
        s.asc_sum += pos;
        s.asc_sq += pos * pos;
        ++s.n;
      }
      stats[b] = s;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_batches));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::uint64_t outages = 0;
  double sum = 0.0, sq = 0.0;
  for (const auto& s : stats) {
    outages += s.outages;
    sum += s.asc_sum;
    sq += s.asc_sq;
  }
  const double n = static_cast<double>(n_trials);
  SimulationResult r;
  r.sop.n_trials = r.asc.n_trials = n_trials;
  r.sop.seed = r.asc.seed = seed;
  r.sop.mean = outages / n;
  r.asc.mean = sum / n;
  if (n_trials > 1) {
    const double vs = r.sop.mean * (1.0 - r.sop.mean) * n / (n - 1.0);
    const double va = std::max(0.0, (sq - sum * sum / n) / (n - 1.0));
    r.sop.std_error = std::sqrt(vs / n);
    r.asc.std_error = std::sqrt(va / n);
  }
  return r;
}

std::vector<SnrDraw> simulate_snrs(const WiretapConfig& c, std::uint64_t n_trials, std::uint64_t seed) {
  validate(c, false);
  std::vector<SnrDraw> out;
  out.reserve(n_trials);
  for (std::uint64_t b = 0; b * kBatch < n_trials; ++b) {
    TrialSampler draw(c);
    Rng rng = batch_stream(seed, b);
    const std::uint64_t hi = std::min(n_trials, (b + 1) * kBatch);
    for (std::uint64_t i = b * kBatch; i < hi; ++i) out.push_back(draw(rng));
  }
  return out;
}

}  // namespace kmusec
