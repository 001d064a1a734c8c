#include <filesystem>
#include <fstream>
#include <sstream>

#include "kmusec/errors.hpp"
#include "kmusec/sweep.hpp"

namespace kmusec {

namespace {

// Every preset shares: gamma_bar_E = 8 dB, gamma_bar_B axis 0..60 dB step 2,
// 10^6 Monte Carlo trials with seed 0xC0FFEE, markers every 10 dB.
SweepSpec snr_sweep(const char* title, const std::string& body) {
  std::string text = std::string("title = ") + title + "\n" +
                     "eve.gamma_bar_db = 8\n"
                     "axis = gamma_bar_b_db\n"
                     "range = 0, 60, 2\n"
                     "mc_trials = 1000000\n"
                     "seed = 0xC0FFEE\n"
                     "mc_every = 5\n" +
                     body;
  return parse_sweep_spec(text);
}

SweepSpec fig2() {
  return snr_sweep("SOP vs gamma_bar_B for N_A in {2,3,4}",
                   "n_b = 2\nn_e = 2\nrate_s = 1\n"
                   "both.mu = 2\nboth.kappa = 2\nboth.m = 3\n"
                   "variant.n_a_2 = n_a=2\nvariant.n_a_3 = n_a=3\nvariant.n_a_4 = n_a=4\n"
                   "metrics = sop_exact, sop_asymptotic, mc_sop\n"
                   "mc_min_sop = 1e-5\n");
}

SweepSpec fig3() {
  std::string v;
  for (int m : {1, 10})
    for (int ne : {1, 2, 3})
      v += "variant.n_e_" + std::to_string(ne) + "_m_" + std::to_string(m) + " = n_e=" + std::to_string(ne) +
           "; both.m=" + std::to_string(m) + "\n";
  return snr_sweep("SOP vs gamma_bar_B for N_E in {1,2,3}, light and heavy LOS shadowing",
                   "n_a = 2\nn_b = 2\nrate_s = 1\n"
                   "both.mu = 3\nboth.kappa = 5\n" +
                       v + "metrics = sop_exact, sop_asymptotic, mc_sop\nmc_min_sop = 1e-5\n");
}

SweepSpec fig4() {
  std::string v;
  for (const char* k : {"1.5", "10"})
    for (int nb : {1, 2, 3})
      v += "variant.n_b_" + std::to_string(nb) + "_kappa_" + k + " = n_b=" + std::to_string(nb) + "; both.kappa=" + k +
           "\n";
  return snr_sweep("SOP vs gamma_bar_B for N_B in {1,2,3}, small and large LOS power",
                   "n_a = 2\nn_e = 2\nrate_s = 2\n"
                   "both.mu = 1\nboth.m = 2\n" +
                       v + "metrics = sop_exact, sop_asymptotic, mc_sop\nmc_min_sop = 1e-5\n");
}

SweepSpec fig5() {
  std::string v;
  for (int mu = 2; mu <= 5; ++mu)
    v += "variant.mu_b_" + std::to_string(mu) + " = bob.mu=" + std::to_string(mu) + "; eve.mu=2\n";
  for (int mu = 2; mu <= 5; ++mu)
    v += "variant.mu_e_" + std::to_string(mu) + " = bob.mu=2; eve.mu=" + std::to_string(mu) + "\n";
  return snr_sweep("SOP vs gamma_bar_B for mu_B in {2..5} and mu_E in {2..5}",
                   "n_a = 2\nn_b = 2\nn_e = 3\nrate_s = 2\n"
                   "both.kappa = 4\nboth.m = 5\n" +
                       v + "metrics = sop_exact, sop_asymptotic\n");
}

SweepSpec fig6() {
  return parse_sweep_spec(
      "title = SOP vs kappa for mu below, equal to and above m\n"
      "n_a = 3\nn_b = 2\nn_e = 2\nrate_s = 3\n"
      "bob.gamma_bar_db = 25\neve.gamma_bar_db = 8\n"
      "both.m = 3\nboth.kappa = 0.5\n"
      "axis = kappa_both\n"
      "range = 0.5, 10, 0.5\n"
      "variant.mu_2 = both.mu=2\nvariant.mu_3 = both.mu=3\nvariant.mu_5 = both.mu=5\n"
      "metrics = sop_exact, mc_sop\n"
      "mc_trials = 1000000\nseed = 0xC0FFEE\nmc_every = 2\nmc_min_sop = 1e-5\n");
}

SweepSpec fig7() {
  return snr_sweep("ASC vs gamma_bar_B for several (N_A, N_B, N_E)",
                   "rate_s = 0\n"
                   "both.mu = 2\nboth.m = 1\nboth.kappa = 5\n"
                   "variant.a1_b3_e1 = n_a=1; n_b=3; n_e=1\n"
                   "variant.a3_b1_e1 = n_a=3; n_b=1; n_e=1\n"
                   "variant.a2_b2_e1 = n_a=2; n_b=2; n_e=1\n"
                   "variant.a2_b2_e3 = n_a=2; n_b=2; n_e=3\n"
                   "metrics = asc_exact, asc_asymptotic, mc_asc\n");
}

SweepSpec fig8() {
  std::string v;
  for (const char* k : {"1.5", "10"})
    for (int nb : {1, 2, 3})
      v += "variant.n_b_" + std::to_string(nb) + "_kappa_" + k + " = n_b=" + std::to_string(nb) + "; both.kappa=" + k +
           "\n";
  return snr_sweep("ASC vs gamma_bar_B for N_B in {1,2,3}, mu = m = 2",
                   "n_a = 2\nn_e = 2\nrate_s = 0\n"
                   "both.mu = 2\nboth.m = 2\n" +
                       v + "metrics = asc_exact, asc_asymptotic, mc_asc\n");
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}; }

SweepSpec preset(const std::string& name) {
  SweepSpec s;
  if (name == "fig2") s = fig2();
  else if (name == "fig3") s = fig3();
  else if (name == "fig4") s = fig4();
  else if (name == "fig5") s = fig5();
  else if (name == "fig6") s = fig6();
  else if (name == "fig7") s = fig7();
  else if (name == "fig8") s = fig8();
  else throw DomainError("unknown preset '" + name + "' (expected fig2 .. fig8)");
  s.output = name + ".csv";
  return s;
}

std::string preset_manifest() {
  std::ostringstream o;
  for (const auto& n : preset_names()) o << '[' << n << "]\n" << format_sweep_spec(preset(n)) << '\n';
  return o.str();
}

void figures(const std::string& name, const std::string& outdir, bool svg, const RunOptions& opt,
             const std::uint64_t* trials_override, const std::uint64_t* seed_override) {
  if (name == "all") {
    for (const auto& n : preset_names()) figures(n, outdir, svg, opt, trials_override, seed_override);
    return;
  }
  SweepSpec spec = preset(name);
  if (trials_override) spec.mc_trials = *trials_override;
  if (seed_override) spec.seed = *seed_override;
  const std::filesystem::path dir(outdir.empty() ? "." : outdir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");

  const auto rows = run_sweep(spec, opt);
  {
    std::ofstream out(dir / (name + ".csv"), std::ios::binary);
    if (!out) throw IoError("cannot write '" + (dir / (name + ".csv")).string() + "'");
    write_csv(rows, out);
  }
  if (svg) {
    std::ofstream out(dir / (name + ".svg"), std::ios::binary);
    if (!out) throw IoError("cannot write '" + (dir / (name + ".svg")).string() + "'");
    out << render_svg(spec, rows);
  }
}

}  // namespace kmusec
