#pragma once

#include "kmusec/kmu_channel.hpp"

namespace kmusec {

struct WiretapConfig {
  int n_a = 1;
  int n_b = 1;
  int n_e = 1;
  KmuShadowedParams bob;
  KmuShadowedParams eve;
  double rate_s = 0.0;  // bits/s/Hz
};

void validate(const WiretapConfig& c, bool require_integer_m = true);

// Per-antenna MRC sums: (N gamma_bar, kappa, N mu, N m).
KmuShadowedParams bob_branch_sum(const WiretapConfig& c);
KmuShadowedParams eve_sum(const WiretapConfig& c);

double cdf_bob(const WiretapConfig& c, double gamma);
double pdf_bob(const WiretapConfig& c, double gamma);
double cdf_eve(const WiretapConfig& c, double gamma);
double pdf_eve(const WiretapConfig& c, double gamma);

// Number of (coefficient, power, rate) entries in Bob's CDF expansion.
std::size_t bob_term_count(const WiretapConfig& c);

}  // namespace kmusec
