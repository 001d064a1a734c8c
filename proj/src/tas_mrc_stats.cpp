#include "kmusec/tas_mrc_stats.hpp"

#include <cmath>

#include "detail/escalate.hpp"
#include "detail/tables.hpp"
#include "kmusec/errors.hpp"

namespace kmusec {

void validate(const WiretapConfig& c, bool require_integer_m) {
  if (c.n_a < 1 || c.n_b < 1 || c.n_e < 1) throw DomainError("antenna counts must be >= 1");
  if (!(c.rate_s >= 0) || !std::isfinite(c.rate_s)) throw DomainError("rate_s must be >= 0");
  validate(c.bob, require_integer_m);
  validate(c.eve, require_integer_m);
}

KmuShadowedParams bob_branch_sum(const WiretapConfig& c) {
  return scale_for_mrc(c.bob, c.n_b);
}

KmuShadowedParams eve_sum(const WiretapConfig& c) {
  return scale_for_mrc(c.eve, c.n_e);
}

double cdf_bob(const WiretapConfig& c, double gamma) {
  validate(c);
  if (gamma < 0) throw DomainError("cdf_bob: gamma must be >= 0");
  if (gamma == 0) return 0.0;
  auto eval = [&]<class R>() -> detail::LevelResult {
    const auto table = detail::cached_bob_table<R>(c);
    const auto s = detail::eval_bob_cdf<R>(*table, R(gamma));
    return {s.ok, detail::to_double(s.value), table->terms.size()};
  };
  const double v = detail::escalate(eval, "cdf_bob").value;
  return std::min(1.0, std::max(0.0, v));
}

double pdf_bob(const WiretapConfig& c, double gamma) {
  validate(c);
  if (gamma < 0) throw DomainError("pdf_bob: gamma must be >= 0");
  if (gamma == 0) {
    // Nonzero at the origin only for a single exponential branch.
    if (c.n_a == 1 && c.n_b == 1 && c.bob.mu == 1) return pdf(c.bob, 0.0);
    return 0.0;
  }
  auto eval = [&]<class R>() -> detail::LevelResult {
    const auto table = detail::cached_bob_table<R>(c);
    const auto s = detail::eval_bob_pdf<R>(*table, R(gamma));
    return {s.ok, detail::to_double(s.value), table->terms.size()};
  };
  return detail::escalate(eval, "pdf_bob").value;
}

double cdf_eve(const WiretapConfig& c, double gamma) {
  validate(c);
  return cdf(eve_sum(c), gamma);
}

double pdf_eve(const WiretapConfig& c, double gamma) {
  validate(c);
  return pdf(eve_sum(c), gamma);
}

std::size_t bob_term_count(const WiretapConfig& c) {
  validate(c);
  return detail::cached_bob_table<double>(c)->terms.size();
}

}  // namespace kmusec
