#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "kmusec/sim_oracle.hpp"
#include "kmusec/sweep.hpp"

namespace kmusec {

namespace {

struct MuM {
  int mu;
  int m;
};

// (mu, m) pairs from {1,2,3,5}^2, split by regime.
constexpr MuM kBelow[] = {{2, 1}, {3, 1}, {3, 2}, {5, 1}, {5, 2}, {5, 3}};
constexpr MuM kAtLeast[] = {{1, 1}, {1, 2}, {1, 3}, {1, 5}, {2, 2}, {2, 3}, {2, 5}, {3, 3}, {3, 5}, {5, 5}};
constexpr double kKappa[] = {0.5, 2.0, 5.0};
constexpr double kRate[] = {1.0, 2.0};
constexpr double kGammaBdB[] = {10.0, 20.0, 30.0};

double db(double v) { return std::pow(10.0, v / 10.0); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string describe(const WiretapConfig& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "N=(%d,%d,%d) B(%.4gdB,k=%g,mu=%d,m=%g) E(%.4gdB,k=%g,mu=%d,m=%g) Rs=%g", c.n_a,
                c.n_b, c.n_e, 10 * std::log10(c.bob.gamma_bar), c.bob.kappa, c.bob.mu, c.bob.m,
                10 * std::log10(c.eve.gamma_bar), c.eve.kappa, c.eve.mu, c.eve.m, c.rate_s);
  return buf;
}

}  // namespace

std::vector<WiretapConfig> oracle_grid(std::size_t count) {
  // Deterministic draw; raw engine output keeps it identical across
  // standard library implementations.  Even entries use m < mu on both links,
  // odd entries m >= mu on both.
  std::mt19937 eng(20240611u);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(eng() % n); };
  std::vector<WiretapConfig> out;
  for (std::size_t i = 0; i < count; ++i) {
    const bool below = i % 2 == 0;
    auto link = [&]() {
      const MuM mm = below ? kBelow[pick(std::size(kBelow))] : kAtLeast[pick(std::size(kAtLeast))];
      KmuShadowedParams p;
      p.mu = mm.mu;
      p.m = mm.m;
      p.kappa = kKappa[pick(std::size(kKappa))];
      return p;
    };
    WiretapConfig c;
    c.n_a = 1 + static_cast<int>(pick(3));
    c.n_b = 1 + static_cast<int>(pick(3));
    c.n_e = 1 + static_cast<int>(pick(3));
    c.bob = link();
    c.eve = link();
    c.bob.gamma_bar = db(kGammaBdB[pick(std::size(kGammaBdB))]);
    c.eve.gamma_bar = db(8.0);
    c.rate_s = kRate[pick(std::size(kRate))];
    out.push_back(c);
  }
  return out;
}

std::vector<WiretapConfig> mc_suite() {
  auto cfg = [](int na, int nb, int ne, double gb_db, double kb, int mub, int mb, double ke, int mue, int me,
                double rs) {
    WiretapConfig c;
    c.n_a = na;
    c.n_b = nb;
    c.n_e = ne;
    c.bob = {db(gb_db), kb, mub, static_cast<double>(mb)};
    c.eve = {db(8.0), ke, mue, static_cast<double>(me)};
    c.rate_s = rs;
    return c;
  };
  return {
      cfg(2, 2, 2, 15, 2, 2, 3, 2, 2, 3, 1),     // m >= mu, small diversity
      cfg(1, 1, 1, 10, 0.5, 1, 1, 0.5, 1, 1, 1),  // Rayleigh-like LOS
      cfg(2, 2, 1, 15, 5, 2, 1, 5, 2, 1, 1),      // m < mu, heavy shadowing
      cfg(3, 1, 2, 12, 5, 3, 1, 2, 3, 2, 2),      // m < mu, mixed kappa
      cfg(1, 3, 1, 10, 5, 2, 1, 5, 2, 1, 1),      // Bob antennas > Alice antennas
      cfg(2, 2, 3, 12, 4, 2, 5, 4, 3, 5, 2),      // large m
      cfg(2, 1, 2, 15, 1.5, 1, 2, 1.5, 1, 2, 2),  // mu = 1
      cfg(1, 2, 2, 10, 2, 3, 3, 2, 3, 3, 1),      // mu = m
      cfg(3, 2, 2, 12, 0.5, 2, 10, 0.5, 2, 10, 1),  // light shadowing
      cfg(2, 2, 2, 8, 10, 1, 2, 10, 1, 2, 1),     // strong LOS, low SNR
  };
}

VerifyReport verify(bool full, const RunOptions& opt) {
  VerifyReport rep;
  auto line = [&](const std::string& s) {
    rep.lines.push_back(s);
    if (opt.progress) opt.progress(s);
  };
  const auto t0 = std::chrono::steady_clock::now();

  // Oracle equivalence: closed forms against quadrature.
  {
    const auto grid = oracle_grid(full ? 60 : 12);
    double worst_sop = 0, worst_asc = 0;
    std::string where_sop, where_asc, failure;
    for (const auto& c : grid) {
      try {
        const double se = sop_exact(c).value, sq = quad_sop(c).value;
        const double ae = asc_exact(c).value, aq = quad_asc(c).value;
        const double es = std::abs(se - sq) / std::abs(sq);
        const double ea = std::abs(ae - aq) / std::abs(aq);
        if (!(es <= worst_sop)) worst_sop = es, where_sop = describe(c);
        if (!(ea <= worst_asc)) worst_asc = ea, where_asc = describe(c);
      } catch (const std::exception& e) {
        failure = describe(c) + ": " + e.what();
      }
    }
    const bool sop_ok = failure.empty() && worst_sop <= 1e-6;
    const bool asc_ok = failure.empty() && worst_asc <= 1e-5;
    line(std::string(sop_ok ? "PASS" : "FAIL") + " oracle sop: " + std::to_string(grid.size()) +
         " configs, worst |exact-quad|/quad = " + fmt("%.3e", worst_sop) + " (limit 1e-6) at " + where_sop);
    line(std::string(asc_ok ? "PASS" : "FAIL") + " oracle asc: " + std::to_string(grid.size()) +
         " configs, worst |exact-quad|/quad = " + fmt("%.3e", worst_asc) + " (limit 1e-5) at " + where_asc);
    if (!failure.empty()) line("FAIL oracle evaluation error: " + failure);
    rep.passed = rep.passed && sop_ok && asc_ok;
  }

  // Monte Carlo consistency within 3 standard errors.
  {
    auto suite = mc_suite();
    if (!full) suite.resize(3);
    const std::uint64_t trials = full ? 1000000 : 200000;
    double worst = 0;
    std::string where, failure;
    int checks = 0;
    for (const auto& c : suite) {
      try {
        const auto sim = simulate(c, trials, 0xC0FFEE, opt.threads);
        const double se = sop_exact(c).value, ae = asc_exact(c).value;
        if (se >= 1e-4) {
          const double z = std::abs(se - sim.sop.mean) / sim.sop.std_error;
          ++checks;
          if (!(z <= worst)) worst = z, where = "sop " + describe(c);
        }
        const double z = std::abs(ae - sim.asc.mean) / sim.asc.std_error;
        ++checks;
        if (!(z <= worst)) worst = z, where = "asc " + describe(c);
      } catch (const std::exception& e) {
        failure = describe(c) + ": " + e.what();
      }
    }
    const bool ok = failure.empty() && worst <= 3.0;
    line(std::string(ok ? "PASS" : "FAIL") + " monte carlo: " + std::to_string(checks) + " checks at " +
         std::to_string(trials) + " trials, worst |exact-mc|/se = " + fmt("%.3f", worst) + " (limit 3) at " + where);
    if (!failure.empty()) line("FAIL monte carlo evaluation error: " + failure);
    rep.passed = rep.passed && ok;
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  line(std::string(rep.passed ? "verify: all checks passed" : "verify: FAILED") + " in " + fmt("%.1f", secs) + " s");
  return rep;
}

}  // namespace kmusec
