// Exercises the shared library through the C interface only.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "kmusec/kmusec.h"

namespace {

kmusec_config* fig2_config() {
  const kmusec_link bob{100.0, 2.0, 2, 3.0};
  const kmusec_link eve{std::pow(10.0, 0.8), 2.0, 2, 3.0};
  kmusec_config* c = nullptr;
  EXPECT_EQ(kmusec_config_create(2, 2, 2, &bob, &eve, 1.0, &c), KMUSEC_OK);
  return c;
}

}  // namespace

TEST(CApi, EvaluateMetrics) {
  kmusec_config* c = fig2_config();
  ASSERT_NE(c, nullptr);
  kmusec_metric m{};
  ASSERT_EQ(kmusec_evaluate(c, KMUSEC_SOP_EXACT, &m), KMUSEC_OK);
  EXPECT_EQ(m.method, KMUSEC_METHOD_EXACT);
  EXPECT_NEAR(m.value / 3.6095088670065989375e-05, 1.0, 1e-9);
  kmusec_metric q{};
  ASSERT_EQ(kmusec_evaluate(c, KMUSEC_QUAD_SOP, &q), KMUSEC_OK);
  EXPECT_EQ(q.method, KMUSEC_METHOD_QUADRATURE);
  int gd = 0;
  ASSERT_EQ(kmusec_diversity_order(c, &gd), KMUSEC_OK);
  EXPECT_EQ(gd, 8);
  double f = 0;
  ASSERT_EQ(kmusec_cdf_bob(c, 0.0, &f), KMUSEC_OK);
  EXPECT_EQ(f, 0.0);
  kmusec_mc_estimate s{}, a{};
  ASSERT_EQ(kmusec_simulate(c, 10000, 5, 1, &s, &a), KMUSEC_OK);
  EXPECT_EQ(s.n_trials, 10000u);
  EXPECT_GT(a.mean, 0.0);
  kmusec_config_destroy(c);
}

TEST(CApi, ErrorCodesAndMessages) {
  const kmusec_link bad{-1.0, 2.0, 2, 3.0};
  const kmusec_link ok{1.0, 2.0, 2, 3.0};
  kmusec_config* c = nullptr;
  EXPECT_EQ(kmusec_config_create(1, 1, 1, &bad, &ok, 1.0, &c), KMUSEC_E_DOMAIN);
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(std::string(kmusec_last_error()).find("gamma_bar"), std::string::npos);
  EXPECT_EQ(kmusec_config_create(1, 1, 1, nullptr, &ok, 1.0, &c), KMUSEC_E_INVALID_ARGUMENT);
  EXPECT_EQ(kmusec_config_parse("n_a = 2\nbogus = 1\n", &c), KMUSEC_E_PARSE);
  EXPECT_EQ(kmusec_set_quadrature_tolerance(-1.0), KMUSEC_E_DOMAIN);
  const kmusec_link degenerate{1.0, 0.0, 3, 1.0};
  double v = 0;
  EXPECT_EQ(kmusec_link_pdf(&degenerate, 1.0, &v), KMUSEC_E_DEGENERATE);
  EXPECT_STREQ(kmusec_status_message(KMUSEC_E_TERM_BUDGET), "term budget exceeded");
}

TEST(CApi, ParseAndGet) {
  kmusec_config* c = nullptr;
  ASSERT_EQ(kmusec_config_parse("n_a = 3\nbob.gamma_bar_db = 10\nboth.mu = 2\nboth.m = 2\nrate_s = 2\n", &c), KMUSEC_OK);
  int na = 0;
  kmusec_link bob{}, eve{};
  double rs = 0;
  ASSERT_EQ(kmusec_config_get(c, &na, nullptr, nullptr, &bob, &eve, &rs), KMUSEC_OK);
  EXPECT_EQ(na, 3);
  EXPECT_NEAR(bob.gamma_bar, 10.0, 1e-12);
  EXPECT_EQ(eve.mu, 2);
  EXPECT_EQ(rs, 2.0);
  kmusec_config_destroy(c);
}

TEST(CApi, PresetsAndSweepFile) {
  EXPECT_EQ(kmusec_preset_count(), 7u);
  EXPECT_STREQ(kmusec_preset_name(0), "fig2");
  EXPECT_EQ(kmusec_preset_name(99), nullptr);
  ASSERT_NE(kmusec_preset_manifest(), nullptr);

  const auto dir = std::filesystem::temp_directory_path() / "kmusec_capi_test";
  std::filesystem::create_directories(dir);
  const auto spec = dir / "spec.txt";
  {
    std::ofstream o(spec);
    o << "n_a = 2\nbob.gamma_bar_db = 20\neve.gamma_bar_db = 8\nboth.kappa = 2\nboth.mu = 2\nboth.m = 3\n"
         "rate_s = 1\naxis = gamma_bar_b_db\nrange = 10, 20, 10\nmetrics = sop_exact, asc_exact\n";
  }
  const auto out = dir / "out.csv";
  ASSERT_EQ(kmusec_sweep_file(spec.c_str(), out.c_str(), nullptr), KMUSEC_OK) << kmusec_last_error();
  std::ifstream in(out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 5);
  EXPECT_EQ(kmusec_sweep_file((dir / "missing.txt").c_str(), nullptr, nullptr), KMUSEC_E_IO);
  EXPECT_EQ(kmusec_figures("fig99", dir.c_str(), 0, nullptr), KMUSEC_E_DOMAIN);
  std::filesystem::remove_all(dir);
}
