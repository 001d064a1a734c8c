#pragma once

// Bob's post-selection CDF F_B(x) = (1 - Fbar_1(x))^{N_A} expanded into
// sum_i C_i x^{D_i} e^{-lambda_i x}.  Outer binomial over k (antennas in the
// CCDF product), inner split c between the delta2 and delta1 blocks, and the
// multinomial expansions of each block power enumerated by compositions.

#include <cstdint>
#include <vector>

#include "detail/link_model.hpp"
#include "detail/real.hpp"
#include "kmusec/combinat.hpp"

namespace kmusec::detail {

template <class R>
struct BobTable {
  // k = 0 is the first entry: coef 1, power 0, rate 0.
  std::vector<ExpPolyTerm<R>> terms;
  std::vector<int> outer_k;
  std::uint64_t enumerated = 0;
};

inline std::uint64_t bob_table_estimate(int n_a, int eta, int nu) {
  std::uint64_t total = 0;
  for (int k = 1; k <= n_a; ++k) {
    for (int c = 0; c <= k; ++c) {
      const std::uint64_t na = (k - c == 0) ? 1 : (eta == 0 ? 0 : composition_count(k - c, eta));
      const std::uint64_t nb = (c == 0) ? 1 : (nu == 0 ? 0 : composition_count(c, nu));
      const std::uint64_t la = static_cast<std::uint64_t>(k - c) * std::max(eta - 1, 0) + 1;
      const std::uint64_t lb = static_cast<std::uint64_t>(c) * std::max(nu - 1, 0) + 1;
      total += na + nb + la * lb;
    }
  }
  return total + 1;
}

// Coefficients of (sum_t coef_t x^{len-t})^{power}, indexed by the power of x.
template <class R>
std::vector<R> block_power(const std::vector<R>& coef, int power, const std::vector<R>& fact,
                           std::uint64_t& enumerated) {
  const int len = static_cast<int>(coef.size());
  if (power == 0) return {R(1)};
  std::vector<R> out(static_cast<std::size_t>(power) * (len - 1) + 1, R(0));
  // pow_table[t][s] = coef_t^s
  std::vector<std::vector<R>> pw(len, std::vector<R>(power + 1));
  for (int t = 0; t < len; ++t) {
    pw[t][0] = 1;
    for (int s = 1; s <= power; ++s) pw[t][s] = pw[t][s - 1] * coef[t];
  }
  for (const auto& comp : Compositions(power, len)) {
    ++enumerated;
    R w = fact[power];
    int deg = 0;
    for (int t = 0; t < len; ++t) {
      const int s = comp.parts[t];
      if (s == 0) continue;
      w *= pw[t][s] / fact[s];
      deg += (len - 1 - t) * s;
    }
    out[deg] += w;
  }
  return out;
}

template <class R>
BobTable<R> make_bob_table(int n_a, const LinkModel<R>& link) {
  check_term_budget(bob_table_estimate(n_a, link.eta, link.nu), "cdf_bob expansion");
  BobTable<R> T;
  T.terms.push_back({R(1), 0, R(0)});
  T.outer_k.push_back(0);
  const auto fact = factorial_table<R>(n_a + 1);
  for (int k = 1; k <= n_a; ++k) {
    R outer = binomial<R>(n_a, k);
    if (k % 2 == 1) outer = -outer;
    for (int c = 0; c <= k; ++c) {
      const int ka = k - c;
      if (ka > 0 && link.eta == 0) continue;
      if (c > 0 && link.nu == 0) continue;
      const auto pa = block_power(link.a, ka, fact, T.enumerated);
      const auto pb = block_power(link.b, c, fact, T.enumerated);
      const R pre = outer * binomial<R>(k, c);
      const R rate = R(ka) / link.delta1 + R(c) / link.delta2;
      std::vector<R> conv(pa.size() + pb.size() - 1, R(0));
      for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j) conv[i + j] += pa[i] * pb[j];
      T.enumerated += pa.size() * pb.size();
      for (std::size_t d = 0; d < conv.size(); ++d) {
        if (conv[d] == 0) continue;
        T.terms.push_back({pre * conv[d], static_cast<int>(d), rate});
        T.outer_k.push_back(k);
      }
    }
  }
  return T;
}

template <class R>
struct EvalSum {
  R value;
  R max_abs;
  bool ok;
};

template <class R>
EvalSum<R> eval_bob_cdf(const BobTable<R>& T, const R& x) {
  using std::exp;
  using std::pow;
  TermAccumulator<R> acc;
  for (const auto& t : T.terms) {
    const R xp = t.power == 0 ? R(1) : int_pow(x, t.power);
    acc.add(t.coef * xp * exp(-t.rate * x));
  }
  auto s = acc.finish();
  return {s.sum, s.max_abs, s.finite && cancellation_ok(s.sum, s.max_abs)};
}

template <class R>
EvalSum<R> eval_bob_pdf(const BobTable<R>& T, const R& x) {
  using std::exp;
  TermAccumulator<R> acc;
  for (const auto& t : T.terms) {
    if (t.rate == 0 && t.power == 0) continue;
    const R e = exp(-t.rate * x);
    if (t.power > 0) acc.add(t.coef * t.power * int_pow(x, t.power - 1) * e);
    acc.add(-t.coef * t.rate * int_pow(x, t.power) * e);
  }
  auto s = acc.finish();
  return {s.sum, s.max_abs, s.finite && cancellation_ok(s.sum, s.max_abs)};
}

}  // namespace kmusec::detail
