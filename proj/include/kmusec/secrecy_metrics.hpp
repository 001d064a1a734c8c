#pragma once

#include <cstdint>

#include "kmusec/tas_mrc_stats.hpp"

namespace kmusec {

enum class Method { Exact, Asymptotic, Quadrature, MonteCarlo };

const char* to_string(Method m);

struct MetricResult {
  double value = 0.0;
  Method method = Method::Exact;
  double ci_halfwidth = 0.0;
  std::uint64_t term_count = 0;
};

// True when Bob and Eve fall in the same closed-form regime.
bool regimes_match(const WiretapConfig& c);

MetricResult sop_exact(const WiretapConfig& c);
MetricResult sop_high_snr_bound(const WiretapConfig& c);
MetricResult sop_asymptotic(const WiretapConfig& c);
int diversity_order(const WiretapConfig& c);

MetricResult cap_main(const WiretapConfig& c);
MetricResult cap_eve(const WiretapConfig& c);
MetricResult asc_loss(const WiretapConfig& c);
MetricResult asc_exact(const WiretapConfig& c);
MetricResult asc_asymptotic(const WiretapConfig& c);

}  // namespace kmusec
