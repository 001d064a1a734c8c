#pragma once

namespace kmusec {

struct EvalPolicy {
  double rel_tolerance = 1e-12;
  int max_terms = 10000;
};

double ln_gamma(double x);

// Gamma(a, x), non-normalized; negative a allowed for x > 0.
double upper_gamma(double a, double x);

// e^x * Gamma(a, x) without forming either factor.
double upper_gamma_scaled(double a, double x);

// P(a, x) = gamma(a, x) / Gamma(a).
double lower_gamma_regularized(double a, double x);

// e^x * E_n(x), n >= 0, x > 0 (x >= 0 for n >= 2).
double expint_scaled(int n, double x);

double gauss_2f1(double a, double b, double c, double z, const EvalPolicy& policy = {});

double kummer_1f1(double a, double b, double z, const EvalPolicy& policy = {});

}  // namespace kmusec
