#pragma once

#include <random>
#include <vector>

namespace kmusec {

// Per-link fading parameters; gamma_bar is linear.  m is integer-valued for
// every closed form; the sampler also accepts real m >= 0.5.
struct KmuShadowedParams {
  double gamma_bar = 1.0;
  double kappa = 0.0;
  int mu = 1;
  double m = 1.0;
};

enum class Regime { MBelowMu, MAtLeastMu };

struct MixtureTerm {
  double log_weight;
  int weight_sign;
  int shape;
  double scale;  // gamma scale; the term's mean is shape * scale
};

struct GammaMixture {
  Regime regime;
  std::vector<MixtureTerm> terms;
  double delta1;
  double delta2;
};

void validate(const KmuShadowedParams& p, bool require_integer_m = true);

// Regime actually used by the closed forms (kappa = 0 is Nakagami-mu).
Regime effective_regime(const KmuShadowedParams& p);

GammaMixture build_mixture(const KmuShadowedParams& p);

double pdf(const KmuShadowedParams& p, double gamma);
double cdf(const KmuShadowedParams& p, double gamma);
double ccdf(const KmuShadowedParams& p, double gamma);
double cdf_rewritten(const KmuShadowedParams& p, double gamma);

// Positive negative-binomial mixture of gammas; accurate in the lower tail
// and valid for real m.
double cdf_series(const KmuShadowedParams& p, double gamma);
double pdf_series(const KmuShadowedParams& p, double gamma);

// cdf_series below the median, closed-form CCDF above it.
double cdf_tail_accurate(const KmuShadowedParams& p, double gamma);
double ccdf_tail_accurate(const KmuShadowedParams& p, double gamma);

KmuShadowedParams scale_for_mrc(const KmuShadowedParams& p, int n_branches);

using Rng = std::mt19937_64;

double sample(const KmuShadowedParams& p, Rng& rng);

// Reusable sampler: holds the distribution objects for one parameter set.
class KmuSampler {
 public:
  explicit KmuSampler(const KmuShadowedParams& p);
  double operator()(Rng& rng);

 private:
  double scale_;
  double los_;
  int mu_;
  bool shadowed_;
  std::gamma_distribution<double> xi_;
  std::normal_distribution<double> normal_;
};

namespace testing {
// Flips the sign of the first mixture coefficient everywhere (mutation smoke test).
void set_coefficient_fault(bool on);
bool coefficient_fault();
}  // namespace testing

}  // namespace kmusec
