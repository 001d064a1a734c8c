#pragma once

// Runs a templated evaluation at increasing working precision until its
// cancellation check passes.

#include <cstdint>
#include <string>

#include "detail/real.hpp"
#include "kmusec/errors.hpp"

namespace kmusec::detail {

struct LevelResult {
  bool ok = false;
  double value = 0.0;
  std::uint64_t terms = 0;
};

struct Escalated {
  double value;
  std::uint64_t terms;
  int digits;
};

template <class F>
Escalated escalate(F&& f, const std::string& what) {
  std::uint64_t terms = 0;
  Escalated out{0.0, 0, 0};
  auto run = [&]<class R>() -> bool {
    LevelResult r = f.template operator()<R>();
    terms += r.terms;
    if (r.ok) out = {r.value, terms, digits10_of<R>()};
    return r.ok;
  };
  if (run.template operator()<double>()) return out;
  if (run.template operator()<mp50>()) return out;
  if (run.template operator()<mp120>()) return out;
  if (run.template operator()<mp300>()) return out;
  if (run.template operator()<mp800>()) return out;
  throw NumericInstabilityError(what + ": cancellation persists at 800 significant digits");
}

}  // namespace kmusec::detail
