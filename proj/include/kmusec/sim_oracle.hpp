#pragma once

#include <cstdint>
#include <vector>

#include "kmusec/secrecy_metrics.hpp"

namespace kmusec {

// Default relative tolerance for every quadrature-backed metric.
void set_quadrature_tolerance(double rel_tol);
double quadrature_tolerance();

MetricResult quad_sop(const WiretapConfig& c);
MetricResult quad_sop_bound(const WiretapConfig& c);  // Pr{gamma_B < tau gamma_E}
MetricResult quad_asc(const WiretapConfig& c);
MetricResult quad_cap_main(const WiretapConfig& c);
MetricResult quad_cap_eve(const WiretapConfig& c);
MetricResult quad_asc_loss(const WiretapConfig& c);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
};

struct SimulationResult {
  McEstimate sop;
  McEstimate asc;
};

// threads = 0 uses the hardware concurrency.  The result does not depend on
// the number of threads.
SimulationResult simulate(const WiretapConfig& c, std::uint64_t n_trials, std::uint64_t seed,
                          unsigned threads = 0);

// One trial's (gamma_B, gamma_E) pair stream, exposed for distribution tests.
struct SnrDraw {
  double bob;
  double eve;
};
std::vector<SnrDraw> simulate_snrs(const WiretapConfig& c, std::uint64_t n_trials, std::uint64_t seed);

}  // namespace kmusec
