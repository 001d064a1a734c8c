#include "kmusec/combinat.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "kmusec/errors.hpp"
#include "kmusec/specfun.hpp"

namespace kmusec {

Compositions::Compositions(int total, int parts) : total_(total), parts_(parts) {
  if (parts < 1) throw DomainError("compositions: parts must be >= 1");
  if (total < 0) throw DomainError("compositions: total must be >= 0");
}

Compositions::iterator Compositions::begin() const {
  Composition first;
  first.total = total_;
  first.parts.assign(static_cast<std::size_t>(parts_), 0);
  first.parts.back() = total_;
  return iterator(std::move(first));
}

Compositions::iterator& Compositions::iterator::operator++() {
  auto& p = current_.parts;
  int last = -1;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) {
      last = i;
      break;
    }
  }
  if (last <= 0) {
    done_ = true;
    return *this;
  }
  const int rest = p[last];
  p[last - 1] += 1;
  p[last] = 0;
  p.back() = rest - 1;
  return *this;
}

std::uint64_t composition_count(int total, int parts) {
  // C(total + parts - 1, parts - 1) by the multiplicative formula.
  const int n = total + parts - 1;
  int k = parts - 1;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Compositions::size() const {
  return composition_count(total_, parts_);
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  return ln_gamma(n + 1.0);
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("log_binomial: requires 0 <= k <= n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_multinomial_weight(int total, const Composition& c) {
  int sum = 0;
  double r = log_factorial(total);
  for (int s : c.parts) {
    sum += s;
    r -= log_factorial(s);
  }
  if (sum != total) throw DomainError("log_multinomial_weight: parts do not sum to total");
  return r;
}

std::uint64_t term_budget() {
  constexpr std::uint64_t kDefault = 100000000ULL;
  const char* env = std::getenv("KMUSEC_TERM_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || !(v >= 1)) return kDefault;
  if (v >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v);
}

void check_term_budget(std::uint64_t estimate, const char* what) {
  const std::uint64_t budget = term_budget();
  if (estimate > budget) {
    throw TermBudgetError(std::string(what) + ": estimated " + std::to_string(estimate) +
                          " terms exceeds the budget of " + std::to_string(budget) +
                          " (set KMUSEC_TERM_BUDGET to raise it)");
  }
}

}  // namespace kmusec
