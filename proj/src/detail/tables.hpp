#pragma once

// Per-configuration caches of link models and Bob expansions, one cache per
// working precision.  Entries are immutable once built.

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "detail/bob_table.hpp"
#include "detail/link_model.hpp"
#include "kmusec/tas_mrc_stats.hpp"

namespace kmusec::detail {

using LinkKey = std::tuple<double, double, int, double, bool>;

inline LinkKey link_key(const KmuShadowedParams& p) {
  return {p.gamma_bar, p.kappa, p.mu, p.m, coefficient_fault_flag().load()};
}

template <class R>
std::shared_ptr<const LinkModel<R>> cached_link(const KmuShadowedParams& p) {
  static std::mutex mtx;
  static std::map<LinkKey, std::shared_ptr<const LinkModel<R>>> cache;
  const auto key = link_key(p);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const LinkModel<R>>(make_link_model<R>(p));
  std::lock_guard<std::mutex> lock(mtx);
  if (cache.size() > 512) cache.clear();
  cache.emplace(key, built);
  return built;
}

template <class R>
std::shared_ptr<const BobTable<R>> cached_bob_table(const WiretapConfig& c) {
  static std::mutex mtx;
  static std::map<std::pair<int, LinkKey>, std::shared_ptr<const BobTable<R>>> cache;
  const auto branch = bob_branch_sum(c);
  const auto key = std::make_pair(c.n_a, link_key(branch));
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto link = cached_link<R>(branch);
  auto built = std::make_shared<const BobTable<R>>(make_bob_table<R>(c.n_a, *link));
  std::lock_guard<std::mutex> lock(mtx);
  if (cache.size() > 512) cache.clear();
  cache.emplace(key, built);
  return built;
}

}  // namespace kmusec::detail
