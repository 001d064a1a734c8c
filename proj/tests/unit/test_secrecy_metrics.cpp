#include <cmath>

#include <gtest/gtest.h>

#include "kmusec/errors.hpp"
#include "kmusec/secrecy_metrics.hpp"
#include "kmusec/sim_oracle.hpp"

using namespace kmusec;

namespace {

double db(double v) { return std::pow(10.0, v / 10.0); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

WiretapConfig fig2(int na, double gb_db) {
  return {na, 2, 2, {db(gb_db), 2.0, 2, 3.0}, {db(8), 2.0, 2, 3.0}, 1.0};
}

WiretapConfig fig8(int nb, double kappa, double gb_db) {
  return {2, nb, 2, {db(gb_db), kappa, 2, 2.0}, {db(8), kappa, 2, 2.0}, 0.0};
}

WiretapConfig fig7(int na, int nb, int ne, double gb_db) {
  return {na, nb, ne, {db(gb_db), 5.0, 2, 1.0}, {db(8), 5.0, 2, 1.0}, 0.0};
}

}  // namespace

TEST(SopExact, Fig2ConfigMatchesOracles) {
  const auto c = fig2(2, 20);
  const auto r = sop_exact(c);
  EXPECT_EQ(r.method, Method::Exact);
  EXPECT_GT(r.term_count, 0u);
  EXPECT_LE(rel(r.value, 3.6095088670065989375e-05), 1e-9);  // mpmath quadrature
  EXPECT_LE(rel(r.value, quad_sop(c).value), 1e-6);
}

TEST(SopExact, VanishesAsBobSnrGrows) {
  WiretapConfig c{1, 1, 1, {db(20), 1.0, 1, 1.0}, {db(8), 1.0, 1, 1.0}, 0.0};
  double prev = 1.0;
  for (double g : {20.0, 40.0, 60.0}) {
    c.bob.gamma_bar = db(g);
    const double v = sop_exact(c).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(SopExact, KappaInvariantWhenMuEqualsM) {
  auto c = fig2(2, 20);
  c.bob.m = c.eve.m = 2;
  c.bob.kappa = c.eve.kappa = 1.5;
  const double a = sop_exact(c).value;
  c.bob.kappa = c.eve.kappa = 10;
  EXPECT_LE(rel(sop_exact(c).value, a), 1e-10);
}

TEST(SopExact, MixedRegimeRoutesToQuadrature) {
  WiretapConfig c{2, 2, 2, {db(15), 2.0, 3, 1.0}, {db(8), 2.0, 2, 3.0}, 1.0};
  EXPECT_FALSE(regimes_match(c));
  EXPECT_EQ(sop_exact(c).method, Method::Quadrature);
  EXPECT_EQ(asc_exact(c).method, Method::Quadrature);
}

TEST(SopBound, SymmetricHalfAndOrdering) {
  WiretapConfig c{1, 1, 1, {db(5), 2.0, 2, 3.0}, {db(5), 2.0, 2, 3.0}, 0.0};
  EXPECT_NEAR(sop_high_snr_bound(c).value, 0.5, 1e-9);
  for (double g : {10.0, 20.0, 30.0}) {
    const auto f = fig2(3, g);
    EXPECT_LE(sop_high_snr_bound(f).value, sop_exact(f).value);
  }
  // Relative gap (sop - bound)/sop at 30 dB, frozen from mpmath.
  const double gap30[] = {0.12114002620564255553, 0.13599001648009001549, 0.14504142133775803502};
  for (int na : {2, 3, 4}) {
    const auto g = fig2(na, 30);
    const double e = sop_exact(g).value;
    EXPECT_NEAR((e - sop_high_snr_bound(g).value) / e, gap30[na - 2], 1e-6) << na;
  }
  // At high SNR exact/bound tends to E[(tau g_E + tau - 1)^G]/E[(tau g_E)^G] (mpmath: 1.13844).
  const auto f = fig2(2, 60);
  EXPECT_NEAR(sop_exact(f).value / sop_high_snr_bound(f).value, 1.13844, 2e-3);
}

TEST(SopAsymptotic, PowerLawSlope) {
  for (int na : {2, 3, 4}) {
    const double a = sop_asymptotic(fig2(na, 50)).value, b = sop_asymptotic(fig2(na, 60)).value;
    EXPECT_NEAR(std::log10(b) - std::log10(a), -diversity_order(fig2(na, 50)), 1e-9);
  }
}

TEST(DiversityOrder, Values) {
  EXPECT_EQ(diversity_order({1, 1, 1, {1.0, 1.0, 1, 1.0}, {1.0, 1.0, 1, 1.0}, 1.0}), 1);
  EXPECT_EQ(diversity_order(fig2(2, 20)), 8);
  auto c = fig2(2, 20);
  c.eve.mu = 2;
  const int a = diversity_order(c);
  c.eve.mu = 5;
  EXPECT_EQ(diversity_order(c), a);
}

TEST(CapMain, MatchesOracle) {
  WiretapConfig c{2, 2, 1, {db(10), 5.0, 3, 10.0}, {db(8), 1.0, 1, 1.0}, 1.0};
  EXPECT_LE(rel(cap_main(c).value, 4.566901068403245948), 1e-9);  // mpmath
  EXPECT_LE(rel(cap_main(c).value, quad_cap_main(c).value), 1e-6);
}

TEST(AscLoss, MatchesOracleAndBounds) {
  const auto c = fig8(2, 1.5, 20);
  const double l = asc_loss(c).value;
  EXPECT_LE(rel(l, 3.611822702420709914), 1e-9);  // mpmath
  EXPECT_LE(rel(l, quad_asc_loss(c).value), 1e-6);
  EXPECT_GE(l, 0.0);
  EXPECT_LE(l, cap_main(c).value);
  auto tiny = c;
  tiny.eve.gamma_bar = 1e-9;
  EXPECT_LT(asc_loss(tiny).value, 1e-8);
}

TEST(AscExact, DecompositionAndOracle) {
  for (const auto& c : {fig8(2, 1.5, 20), fig7(1, 3, 1, 30), fig2(3, 10)}) {
    const double a = asc_exact(c).value;
    EXPECT_GE(a, 0.0);
    EXPECT_NEAR(a, cap_main(c).value - asc_loss(c).value, 1e-9);
    EXPECT_LE(rel(a, quad_asc(c).value), 1e-6);
  }
}

TEST(AscExact, KappaInvariantWhenMuEqualsM) {
  EXPECT_LE(rel(asc_exact(fig8(2, 10, 20)).value, asc_exact(fig8(2, 1.5, 20)).value), 1e-10);
}

TEST(AscExact, EqualLinksMatchesMonteCarlo) {
  WiretapConfig c{1, 1, 1, {db(10), 2.0, 2, 3.0}, {db(10), 2.0, 2, 3.0}, 0.0};
  const double a = asc_exact(c).value;
  const auto sim = simulate(c, 10000000, 0xC0FFEE);
  EXPECT_GT(a, 0.0);
  EXPECT_LE(std::abs(a - sim.asc.mean), 3 * sim.asc.std_error);
}

TEST(AscAsymptotic, GapAndSlope) {
  const auto c = fig7(2, 2, 1, 50);
  EXPECT_LT(std::abs(asc_exact(c).value - asc_asymptotic(c).value), 0.05);
  const double a = asc_asymptotic(fig7(2, 2, 1, 50)).value;
  const double b = asc_asymptotic(fig7(2, 2, 1, 50 + 10 * std::log10(2.0))).value;
  EXPECT_NEAR(b - a, 1.0, 1e-9);
}

TEST(Metrics, RejectNonIntegerM) {
  WiretapConfig c = fig2(2, 20);
  c.bob.m = 2.5;
  EXPECT_THROW(sop_exact(c), DomainError);
}
