// kmusec command-line front end; links only the C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kmusec/kmusec.h"

namespace {

struct Globals {
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 0xC0FFEE;
  unsigned threads = 0;
  double tolerance = 0;
  bool trials_set = false;
  bool seed_set = false;
  bool quiet = false;
};

void print_line(const char* line, void*) { std::printf("%s\n", line); }
void progress_line(const char* line, void*) { std::fprintf(stderr, "%s\n", line); }

int report(kmusec_status s) {
  if (s == KMUSEC_OK) return 0;
  std::fprintf(stderr, "error: %s: %s\n", kmusec_status_message(s), kmusec_last_error());
  return 1;
}

kmusec_run_options options(const Globals& g, kmusec_line_fn fn) {
  kmusec_run_options o{};
  o.threads = g.threads;
  o.override_trials = g.trials_set;
  o.trials = g.trials;
  o.override_seed = g.seed_set;
  o.seed = g.seed;
  o.progress = g.quiet ? nullptr : fn;
  return o;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* method_name(kmusec_method m) {
  switch (m) {
    case KMUSEC_METHOD_EXACT: return "Exact";
    case KMUSEC_METHOD_ASYMPTOTIC: return "Asymptotic";
    case KMUSEC_METHOD_QUADRATURE: return "Quadrature";
    case KMUSEC_METHOD_MONTE_CARLO: return "MonteCarlo";
  }
  return "?";
}

// One-shot evaluation: params are key=value tokens with the sweep-spec keys.
int one_shot(const Globals& g, const std::vector<std::string>& params, bool sop, bool with_mc, bool with_quad) {
  std::string text;
  for (const auto& p : params) text += p + "\n";
  kmusec_config* cfg = nullptr;
  if (int rc = report(kmusec_config_parse(text.c_str(), &cfg))) return rc;

  struct Item {
    const char* name;
    kmusec_metric_id id;
  };
  std::vector<Item> items;
  if (sop) {
    items = {{"sop_exact", KMUSEC_SOP_EXACT}, {"sop_asymptotic", KMUSEC_SOP_ASYMPTOTIC}, {"sop_bound", KMUSEC_SOP_BOUND}};
    if (with_quad) items.push_back({"quad_sop", KMUSEC_QUAD_SOP});
  } else {
    items = {{"asc_exact", KMUSEC_ASC_EXACT}, {"asc_asymptotic", KMUSEC_ASC_ASYMPTOTIC}, {"cap_main", KMUSEC_CAP_MAIN},
             {"cap_eve", KMUSEC_CAP_EVE},     {"asc_loss", KMUSEC_ASC_LOSS}};
    if (with_quad) items.push_back({"quad_asc", KMUSEC_QUAD_ASC});
  }

  int rc = 0;
  std::printf("metric,method,value,ci_halfwidth,term_count,reason\n");
  for (const auto& it : items) {
    kmusec_metric m{};
    const kmusec_status s = kmusec_evaluate(cfg, it.id, &m);
    if (s != KMUSEC_OK) {
      std::printf("%s,Error,,,0,\"%s\"\n", it.name, kmusec_last_error());
      rc = 1;
      continue;
    }
    std::printf("%s,%s,%s,%s,%llu,\n", it.name, method_name(m.method), csv_number(m.value).c_str(),
                csv_number(m.ci_halfwidth).c_str(), static_cast<unsigned long long>(m.term_count));
  }
  if (sop) {
    int gd = 0;
    if (kmusec_diversity_order(cfg, &gd) == KMUSEC_OK) std::printf("diversity_order,Exact,%d,0,0,\n", gd);
  }
  if (with_mc) {
    kmusec_mc_estimate s{}, a{};
    const kmusec_status st = kmusec_simulate(cfg, g.trials, g.seed, g.threads, &s, &a);
    if (st != KMUSEC_OK) {
      rc = report(st);
    } else {
      const kmusec_mc_estimate& e = sop ? s : a;
      std::printf("%s,MonteCarlo,%s,%s,%llu,\n", sop ? "mc_sop" : "mc_asc", csv_number(e.mean).c_str(),
                  csv_number(1.96 * e.std_error).c_str(), static_cast<unsigned long long>(e.n_trials));
    }
  }
  kmusec_config_destroy(cfg);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy outage probability and average secrecy capacity of TAS/MRC links over kappa-mu shadowed fading",
               "kmusec"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--trials", g.trials, "Monte Carlo trials")->check(CLI::PositiveNumber)->each([&](const std::string&) {
    g.trials_set = true;
  });
  app.add_option("--seed", g.seed, "Monte Carlo seed (64-bit)")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--tolerance", g.tolerance, "Relative quadrature tolerance")->check(CLI::Range(1e-15, 0.1));
  app.add_flag("-q,--quiet", g.quiet, "Suppress progress output");
  app.fallthrough();

  auto* sweep = app.add_subcommand("sweep", "Run a sweep spec file and write its CSV");
  std::string spec_path, output;
  sweep->add_option("spec-file", spec_path, "Sweep spec (key = value)")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", output, "Override the sweep file's output path");

  auto* verify = app.add_subcommand("verify", "Oracle-equivalence and Monte Carlo consistency checks");
  bool full = false;
  verify->add_flag("--full", full, "Full grid (about 10 minutes)");

  auto* figs = app.add_subcommand("figures", "Reproduce a figure preset (fig2 .. fig8, all)");
  std::string preset, outdir = ".";
  bool svg = false, manifest = false;
  figs->add_option("preset", preset, "Preset name");
  figs->add_option("--outdir", outdir, "Output directory");
  figs->add_flag("--svg", svg, "Also write an SVG plot");
  figs->add_flag("--manifest", manifest, "Print the preset parameter manifest and exit");

  std::vector<std::string> params;
  bool mc = false, quad = false;
  auto* sop = app.add_subcommand("sop", "One-shot SOP: key=value parameters");
  auto* asc = app.add_subcommand("asc", "One-shot ASC: key=value parameters");
  for (auto* sc : {sop, asc}) {
    sc->add_option("params", params, "e.g. n_a=2 bob.gamma_bar_db=20 both.mu=2 both.m=3 both.kappa=2 rate_s=1")
        ->required();
    sc->add_flag("--mc", mc, "Add a Monte Carlo estimate (--trials, --seed)");
    sc->add_flag("--quad", quad, "Add the quadrature oracle");
  }

  CLI11_PARSE(app, argc, argv);

  if (g.tolerance > 0)
    if (int rc = report(kmusec_set_quadrature_tolerance(g.tolerance))) return rc;

  if (*sweep) {
    const auto o = options(g, progress_line);
    return report(kmusec_sweep_file(spec_path.c_str(), output.empty() ? nullptr : output.c_str(), &o));
  }
  if (*verify) {
    kmusec_run_options o = options(g, print_line);
    o.progress = print_line;
    int passed = 0;
    if (int rc = report(kmusec_verify(full, &o, &passed))) return rc;
    return passed ? 0 : 1;
  }
  if (*figs) {
    if (manifest) {
      const char* m = kmusec_preset_manifest();
      if (!m) return report(KMUSEC_E_INTERNAL);
      std::fputs(m, stdout);
      return 0;
    }
    if (preset.empty()) {
      std::fprintf(stderr, "error: figures needs a preset:");
      for (size_t i = 0; i < kmusec_preset_count(); ++i) std::fprintf(stderr, " %s", kmusec_preset_name(i));
      std::fprintf(stderr, " all\n");
      return 2;
    }
    const auto o = options(g, progress_line);
    return report(kmusec_figures(preset.c_str(), outdir.c_str(), svg, &o));
  }
  if (*sop) return one_shot(g, params, true, mc, quad);
  if (*asc) return one_shot(g, params, false, mc, quad);
  return 2;
}
