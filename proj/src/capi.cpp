#include "kmusec/kmusec.h"

#include <string>

#include "kmusec/errors.hpp"
#include "kmusec/sim_oracle.hpp"
#include "kmusec/sweep.hpp"

struct kmusec_config {
  kmusec::WiretapConfig c;
};

namespace {

thread_local std::string last_error;
thread_local std::string manifest_buffer;

kmusec_status fail(kmusec_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
kmusec_status guard(F&& f) {
  try {
    last_error.clear();
    f();
    return KMUSEC_OK;
  } catch (const kmusec::Error& e) {
    return fail(static_cast<kmusec_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KMUSEC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KMUSEC_E_INTERNAL, e.what());
  } catch (...) {
    return fail(KMUSEC_E_INTERNAL, "unknown error");
  }
}

kmusec::KmuShadowedParams to_params(const kmusec_link& l) { return {l.gamma_bar, l.kappa, l.mu, l.m}; }
kmusec_link to_link(const kmusec::KmuShadowedParams& p) { return {p.gamma_bar, p.kappa, p.mu, p.m}; }

kmusec_metric to_metric(const kmusec::MetricResult& r) {
  return {r.value, static_cast<kmusec_method>(r.method), r.ci_halfwidth, r.term_count};
}

kmusec::RunOptions run_options(const kmusec_run_options* opt) {
  kmusec::RunOptions o;
  if (!opt) return o;
  o.threads = opt->threads;
  if (opt->progress) {
    const kmusec_line_fn fn = opt->progress;
    void* user = opt->user;
    o.progress = [fn, user](const std::string& s) { fn(s.c_str(), user); };
  }
  return o;
}

#define KMUSEC_REQUIRE(cond, what) \
  if (!(cond)) return fail(KMUSEC_E_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* kmusec_version(void) { return "1.0.0"; }

const char* kmusec_status_message(kmusec_status s) {
  switch (s) {
    case KMUSEC_OK: return "ok";
    case KMUSEC_E_DOMAIN: return "parameter outside its domain";
    case KMUSEC_E_DEGENERATE: return "degenerate parameter combination";
    case KMUSEC_E_CONVERGENCE: return "numerical method did not converge";
    case KMUSEC_E_TERM_BUDGET: return "term budget exceeded";
    case KMUSEC_E_NUMERIC: return "numeric instability";
    case KMUSEC_E_IO: return "I/O error";
    case KMUSEC_E_PARSE: return "parse error";
    case KMUSEC_E_INVALID_ARGUMENT: return "invalid argument";
    case KMUSEC_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* kmusec_last_error(void) { return last_error.c_str(); }

kmusec_status kmusec_config_create(int n_a, int n_b, int n_e, const kmusec_link* bob, const kmusec_link* eve,
                                   double rate_s, kmusec_config** out) {
  KMUSEC_REQUIRE(bob && eve && out, "null argument");
  return guard([&] {
    kmusec::WiretapConfig c{n_a, n_b, n_e, to_params(*bob), to_params(*eve), rate_s};
    kmusec::validate(c, false);
    *out = new kmusec_config{c};
  });
}

kmusec_status kmusec_config_parse(const char* text, kmusec_config** out) {
  KMUSEC_REQUIRE(text && out, "null argument");
  return guard([&] {
    const auto c = kmusec::parse_config(text);
    kmusec::validate(c, false);
    *out = new kmusec_config{c};
  });
}

kmusec_status kmusec_config_get(const kmusec_config* cfg, int* n_a, int* n_b, int* n_e, kmusec_link* bob,
                                kmusec_link* eve, double* rate_s) {
  KMUSEC_REQUIRE(cfg, "null config");
  if (n_a) *n_a = cfg->c.n_a;
  if (n_b) *n_b = cfg->c.n_b;
  if (n_e) *n_e = cfg->c.n_e;
  if (bob) *bob = to_link(cfg->c.bob);
  if (eve) *eve = to_link(cfg->c.eve);
  if (rate_s) *rate_s = cfg->c.rate_s;
  return KMUSEC_OK;
}

void kmusec_config_destroy(kmusec_config* cfg) { delete cfg; }

kmusec_status kmusec_evaluate(const kmusec_config* cfg, kmusec_metric_id metric, kmusec_metric* out) {
  KMUSEC_REQUIRE(cfg && out, "null argument");
  return guard([&] {
    using namespace kmusec;
    const WiretapConfig& c = cfg->c;
    switch (metric) {
      case KMUSEC_SOP_EXACT: *out = to_metric(sop_exact(c)); return;
      case KMUSEC_SOP_BOUND: *out = to_metric(sop_high_snr_bound(c)); return;
      case KMUSEC_SOP_ASYMPTOTIC: *out = to_metric(sop_asymptotic(c)); return;
      case KMUSEC_CAP_MAIN: *out = to_metric(cap_main(c)); return;
      case KMUSEC_CAP_EVE: *out = to_metric(cap_eve(c)); return;
      case KMUSEC_ASC_LOSS: *out = to_metric(asc_loss(c)); return;
      case KMUSEC_ASC_EXACT: *out = to_metric(asc_exact(c)); return;
      case KMUSEC_ASC_ASYMPTOTIC: *out = to_metric(asc_asymptotic(c)); return;
      case KMUSEC_QUAD_SOP: *out = to_metric(quad_sop(c)); return;
      case KMUSEC_QUAD_ASC: *out = to_metric(quad_asc(c)); return;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown metric id");
  });
}

kmusec_status kmusec_diversity_order(const kmusec_config* cfg, int* out) {
  KMUSEC_REQUIRE(cfg && out, "null argument");
  return guard([&] { *out = kmusec::diversity_order(cfg->c); });
}

kmusec_status kmusec_simulate(const kmusec_config* cfg, uint64_t trials, uint64_t seed, unsigned threads,
                              kmusec_mc_estimate* sop, kmusec_mc_estimate* asc) {
  KMUSEC_REQUIRE(cfg, "null config");
  return guard([&] {
    const auto r = kmusec::simulate(cfg->c, trials, seed, threads);
    if (sop) *sop = {r.sop.mean, r.sop.std_error, r.sop.n_trials, r.sop.seed};
    if (asc) *asc = {r.asc.mean, r.asc.std_error, r.asc.n_trials, r.asc.seed};
  });
}

kmusec_status kmusec_cdf_bob(const kmusec_config* cfg, double gamma, double* out) {
  KMUSEC_REQUIRE(cfg && out, "null argument");
  return guard([&] { *out = kmusec::cdf_bob(cfg->c, gamma); });
}

kmusec_status kmusec_pdf_bob(const kmusec_config* cfg, double gamma, double* out) {
  KMUSEC_REQUIRE(cfg && out, "null argument");
  return guard([&] { *out = kmusec::pdf_bob(cfg->c, gamma); });
}

kmusec_status kmusec_cdf_eve(const kmusec_config* cfg, double gamma, double* out) {
  KMUSEC_REQUIRE(cfg && out, "null argument");
  return guard([&] { *out = kmusec::cdf_eve(cfg->c, gamma); });
}

kmusec_status kmusec_pdf_eve(const kmusec_config* cfg, double gamma, double* out) {
  KMUSEC_REQUIRE(cfg && out, "null argument");
  return guard([&] { *out = kmusec::pdf_eve(cfg->c, gamma); });
}

kmusec_status kmusec_link_pdf(const kmusec_link* link, double gamma, double* out) {
  KMUSEC_REQUIRE(link && out, "null argument");
  return guard([&] { *out = kmusec::pdf(to_params(*link), gamma); });
}

kmusec_status kmusec_link_cdf(const kmusec_link* link, double gamma, double* out) {
  KMUSEC_REQUIRE(link && out, "null argument");
  return guard([&] { *out = kmusec::cdf(to_params(*link), gamma); });
}

kmusec_status kmusec_set_quadrature_tolerance(double rel_tol) {
  return guard([&] { kmusec::set_quadrature_tolerance(rel_tol); });
}

kmusec_status kmusec_sweep_file(const char* spec_path, const char* output_path, const kmusec_run_options* opt) {
  KMUSEC_REQUIRE(spec_path, "null spec path");
  return guard([&] {
    auto spec = kmusec::load_sweep_spec(spec_path);
    if (output_path) spec.output = output_path;
    if (opt && opt->override_trials) spec.mc_trials = opt->trials;
    if (opt && opt->override_seed) spec.seed = opt->seed;
    kmusec::run_sweep_to_file(spec, run_options(opt));
  });
}

kmusec_status kmusec_figures(const char* preset, const char* outdir, int svg, const kmusec_run_options* opt) {
  KMUSEC_REQUIRE(preset, "null preset");
  return guard([&] {
    const std::uint64_t* trials = opt && opt->override_trials ? &opt->trials : nullptr;
    const std::uint64_t* seed = opt && opt->override_seed ? &opt->seed : nullptr;
    kmusec::figures(preset, outdir ? outdir : ".", svg != 0, run_options(opt), trials, seed);
  });
}

size_t kmusec_preset_count(void) { return kmusec::preset_names().size(); }

const char* kmusec_preset_name(size_t index) {
  static const std::vector<std::string> names = kmusec::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

const char* kmusec_preset_manifest(void) {
  try {
    manifest_buffer = kmusec::preset_manifest();
  } catch (const std::exception& e) {
    last_error = e.what();
    return nullptr;
  }
  return manifest_buffer.c_str();
}

kmusec_status kmusec_verify(int full, const kmusec_run_options* opt, int* passed) {
  return guard([&] {
    const auto rep = kmusec::verify(full != 0, run_options(opt));
    if (passed) *passed = rep.passed ? 1 : 0;
  });
}

}  // extern "C"
