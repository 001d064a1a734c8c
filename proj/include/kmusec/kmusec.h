#ifndef KMUSEC_KMUSEC_H
#define KMUSEC_KMUSEC_H

/* C interface to libkmusec: secrecy outage probability and average secrecy
 * capacity of TAS/MRC wiretap links over kappa-mu shadowed fading.
 *
 * Every function returns a kmusec_status; on failure kmusec_last_error()
 * gives a message for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(KMUSEC_BUILDING_LIBRARY)
#define KMUSEC_API __attribute__((visibility("default")))
#else
#define KMUSEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct kmusec_config kmusec_config;

typedef enum kmusec_status {
  KMUSEC_OK = 0,
  KMUSEC_E_DOMAIN = 1,
  KMUSEC_E_DEGENERATE = 2,
  KMUSEC_E_CONVERGENCE = 3,
  KMUSEC_E_TERM_BUDGET = 4,
  KMUSEC_E_NUMERIC = 5,
  KMUSEC_E_IO = 6,
  KMUSEC_E_PARSE = 7,
  KMUSEC_E_INVALID_ARGUMENT = 8,
  KMUSEC_E_INTERNAL = 99
} kmusec_status;

typedef enum kmusec_method {
  KMUSEC_METHOD_EXACT = 0,
  KMUSEC_METHOD_ASYMPTOTIC = 1,
  KMUSEC_METHOD_QUADRATURE = 2,
  KMUSEC_METHOD_MONTE_CARLO = 3
} kmusec_method;

typedef enum kmusec_metric_id {
  KMUSEC_SOP_EXACT = 0,
  KMUSEC_SOP_BOUND = 1,
  KMUSEC_SOP_ASYMPTOTIC = 2,
  KMUSEC_CAP_MAIN = 3,
  KMUSEC_CAP_EVE = 4,
  KMUSEC_ASC_LOSS = 5,
  KMUSEC_ASC_EXACT = 6,
  KMUSEC_ASC_ASYMPTOTIC = 7,
  KMUSEC_QUAD_SOP = 8,
  KMUSEC_QUAD_ASC = 9
} kmusec_metric_id;

/* One link: average SNR (linear), kappa >= 0, integer mu >= 1, m >= 1. */
typedef struct kmusec_link {
  double gamma_bar;
  double kappa;
  int mu;
  double m;
} kmusec_link;

typedef struct kmusec_metric {
  double value;
  kmusec_method method;
  double ci_halfwidth;
  uint64_t term_count;
} kmusec_metric;

typedef struct kmusec_mc_estimate {
  double mean;
  double std_error;
  uint64_t n_trials;
  uint64_t seed;
} kmusec_mc_estimate;

typedef void (*kmusec_line_fn)(const char* line, void* user);

typedef struct kmusec_run_options {
  unsigned threads;      /* 0: hardware concurrency */
  int override_trials;   /* nonzero: use trials instead of the sweep file's value */
  uint64_t trials;
  int override_seed;     /* nonzero: use seed instead of the sweep file's value */
  uint64_t seed;
  kmusec_line_fn progress; /* optional, called with one line per event */
  void* user;
} kmusec_run_options;

KMUSEC_API const char* kmusec_version(void);
KMUSEC_API const char* kmusec_status_message(kmusec_status status);
KMUSEC_API const char* kmusec_last_error(void);

KMUSEC_API kmusec_status kmusec_config_create(int n_a, int n_b, int n_e, const kmusec_link* bob,
                                              const kmusec_link* eve, double rate_s, kmusec_config** out);
/* key = value text, same keys as the base block of a sweep file. */
KMUSEC_API kmusec_status kmusec_config_parse(const char* text, kmusec_config** out);
KMUSEC_API kmusec_status kmusec_config_get(const kmusec_config* cfg, int* n_a, int* n_b, int* n_e,
                                           kmusec_link* bob, kmusec_link* eve, double* rate_s);
KMUSEC_API void kmusec_config_destroy(kmusec_config* cfg);

KMUSEC_API kmusec_status kmusec_evaluate(const kmusec_config* cfg, kmusec_metric_id metric, kmusec_metric* out);
KMUSEC_API kmusec_status kmusec_diversity_order(const kmusec_config* cfg, int* out);
KMUSEC_API kmusec_status kmusec_simulate(const kmusec_config* cfg, uint64_t trials, uint64_t seed, unsigned threads,
                                         kmusec_mc_estimate* sop, kmusec_mc_estimate* asc);

KMUSEC_API kmusec_status kmusec_cdf_bob(const kmusec_config* cfg, double gamma, double* out);
KMUSEC_API kmusec_status kmusec_pdf_bob(const kmusec_config* cfg, double gamma, double* out);
KMUSEC_API kmusec_status kmusec_cdf_eve(const kmusec_config* cfg, double gamma, double* out);
KMUSEC_API kmusec_status kmusec_pdf_eve(const kmusec_config* cfg, double gamma, double* out);
KMUSEC_API kmusec_status kmusec_link_pdf(const kmusec_link* link, double gamma, double* out);
KMUSEC_API kmusec_status kmusec_link_cdf(const kmusec_link* link, double gamma, double* out);

KMUSEC_API kmusec_status kmusec_set_quadrature_tolerance(double rel_tol);

/* Runs a sweep file; output_path overrides its output key when non-NULL. */
KMUSEC_API kmusec_status kmusec_sweep_file(const char* spec_path, const char* output_path,
                                           const kmusec_run_options* opt);
/* preset: "fig2" .. "fig8" or "all". */
KMUSEC_API kmusec_status kmusec_figures(const char* preset, const char* outdir, int svg,
                                        const kmusec_run_options* opt);
KMUSEC_API size_t kmusec_preset_count(void);
KMUSEC_API const char* kmusec_preset_name(size_t index);
/* Writes the preset parameter manifest; the buffer is owned by the library
 * and valid until the next call on the same thread. */
KMUSEC_API const char* kmusec_preset_manifest(void);

/* Runs the verification suite; *passed is 1 when every check passes. */
KMUSEC_API kmusec_status kmusec_verify(int full, const kmusec_run_options* opt, int* passed);

#ifdef __cplusplus
}
#endif

#endif
