#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kmusec/errors.hpp"
#include "kmusec/sweep.hpp"

namespace kmusec {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(d))
    throw ParseError(key + ": expected a number, got '" + v + "'");
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ParseError(key + ": expected an integer, got '" + v + "'");
  return static_cast<int>(d);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const unsigned long long u = std::strtoull(t.c_str(), &end, 0);
  if (t.empty() || t[0] == '-' || *end != '\0' || errno == ERANGE)
    throw ParseError(key + ": expected a non-negative integer, got '" + v + "'");
  return u;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

bool apply_link(KmuShadowedParams& p, const std::string& field, const std::string& key, const std::string& v) {
  if (field == "gamma_bar_db") p.gamma_bar = db_to_linear(to_double(key, v));
  else if (field == "gamma_bar") p.gamma_bar = to_double(key, v);
  else if (field == "kappa") p.kappa = to_double(key, v);
  else if (field == "mu") p.mu = to_int(key, v);
  else if (field == "m") p.m = to_double(key, v);
  else return false;
  return true;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::GammaBarB_dB: return "gamma_bar_b_db";
    case Axis::GammaBarE_dB: return "gamma_bar_e_db";
    case Axis::KappaBoth: return "kappa_both";
    case Axis::KappaB: return "kappa_b";
    case Axis::RateS: return "rate_s";
  }
  return "?";
}

Axis parse_axis(const std::string& s) {
  for (Axis a : {Axis::GammaBarB_dB, Axis::GammaBarE_dB, Axis::KappaBoth, Axis::KappaB, Axis::RateS})
    if (s == axis_name(a)) return a;
  throw ParseError("unknown axis '" + s + "'");
}

std::vector<double> AxisRange::points() const {
  if (!(step > 0)) throw DomainError("range: step must be > 0");
  if (!(start <= stop)) throw DomainError("range: start must be <= stop");
  std::vector<double> out;
  const double n = std::floor((stop - start) / step + 1e-9);
  for (long i = 0; i <= static_cast<long>(n); ++i) out.push_back(start + i * step);
  return out;
}

const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::SopExact: return "sop_exact";
    case MetricKind::SopAsymptotic: return "sop_asymptotic";
    case MetricKind::SopBound: return "sop_bound";
    case MetricKind::AscExact: return "asc_exact";
    case MetricKind::AscAsymptotic: return "asc_asymptotic";
    case MetricKind::CapMain: return "cap_main";
    case MetricKind::CapEve: return "cap_eve";
    case MetricKind::AscLoss: return "asc_loss";
    case MetricKind::QuadSop: return "quad_sop";
    case MetricKind::QuadAsc: return "quad_asc";
    case MetricKind::McSop: return "mc_sop";
    case MetricKind::McAsc: return "mc_asc";
  }
  return "?";
}

std::vector<MetricKind> parse_metrics(const std::string& list) {
  static const MetricKind all[] = {MetricKind::SopExact, MetricKind::SopAsymptotic, MetricKind::SopBound,
                                   MetricKind::AscExact, MetricKind::AscAsymptotic, MetricKind::CapMain,
                                   MetricKind::CapEve,   MetricKind::AscLoss,       MetricKind::QuadSop,
                                   MetricKind::QuadAsc,  MetricKind::McSop,         MetricKind::McAsc};
  std::vector<MetricKind> out;
  auto push = [&](MetricKind k) {
    for (auto e : out)
      if (e == k) return;
    out.push_back(k);
  };
  for (const auto& name : split(list, ',')) {
    if (name.empty()) continue;
    if (name == "quad") {
      push(MetricKind::QuadSop);
      push(MetricKind::QuadAsc);
      continue;
    }
    if (name == "mc") {
      push(MetricKind::McSop);
      push(MetricKind::McAsc);
      continue;
    }
    bool found = false;
    for (auto k : all)
      if (name == metric_name(k)) {
        push(k);
        found = true;
      }
    if (!found) throw ParseError("unknown metric '" + name + "'");
  }
  if (out.empty()) throw ParseError("metrics must be nonempty");
  return out;
}

void apply_setting(WiretapConfig& c, const std::string& key, const std::string& value) {
  if (key == "n_a") c.n_a = to_int(key, value);
  else if (key == "n_b") c.n_b = to_int(key, value);
  else if (key == "n_e") c.n_e = to_int(key, value);
  else if (key == "rate_s") c.rate_s = to_double(key, value);
  else {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ParseError("unknown key '" + key + "'");
    const std::string link = key.substr(0, dot), field = key.substr(dot + 1);
    bool ok = false;
    if (link == "bob") ok = apply_link(c.bob, field, key, value);
    else if (link == "eve") ok = apply_link(c.eve, field, key, value);
    else if (link == "both") ok = apply_link(c.bob, field, key, value) && apply_link(c.eve, field, key, value);
    if (!ok) throw ParseError("unknown key '" + key + "'");
  }
}

void apply_axis(WiretapConfig& c, Axis axis, double v) {
  switch (axis) {
    case Axis::GammaBarB_dB: c.bob.gamma_bar = db_to_linear(v); break;
    case Axis::GammaBarE_dB: c.eve.gamma_bar = db_to_linear(v); break;
    case Axis::KappaBoth: c.bob.kappa = c.eve.kappa = v; break;
    case Axis::KappaB: c.bob.kappa = v; break;
    case Axis::RateS: c.rate_s = v; break;
  }
}

namespace {

template <class F>
void for_each_entry(const std::string& text, F&& f) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      f(key, value);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::string& v) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : split(v, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("variant override '" + item + "' must be key=value");
    out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return out;
}

}  // namespace

WiretapConfig parse_config(const std::string& text) {
  WiretapConfig c;
  for_each_entry(text, [&](const std::string& k, const std::string& v) { apply_setting(c, k, v); });
  return c;
}

SweepSpec parse_sweep_spec(const std::string& text) {
  SweepSpec s;
  bool have_range = false, have_metrics = false;
  for_each_entry(text, [&](const std::string& k, const std::string& v) {
    if (k == "title") s.title = v;
    else if (k == "axis") s.axis = parse_axis(v);
    else if (k == "range") {
      const auto parts = split(v, ',');
      if (parts.size() != 3) throw ParseError("range: expected start, stop, step");
      s.range = {to_double(k, parts[0]), to_double(k, parts[1]), to_double(k, parts[2])};
      have_range = true;
    } else if (k == "metrics") {
      s.metrics = parse_metrics(v);
      have_metrics = true;
    } else if (k == "mc_trials") {
      s.mc_trials = to_u64(k, v);
      if (s.mc_trials < 1) throw ParseError("mc_trials must be positive");
    } else if (k == "seed") s.seed = to_u64(k, v);
    else if (k == "mc_every") {
      s.mc_every = to_int(k, v);
      if (s.mc_every < 1) throw ParseError("mc_every must be >= 1");
    } else if (k == "mc_min_sop") s.mc_min_sop = to_double(k, v);
    else if (k == "output") s.output = v;
    else if (k.rfind("variant.", 0) == 0) {
      Variant var{k.substr(8), parse_overrides(v)};
      if (var.name.empty()) throw ParseError("variant name must be nonempty");
      for (const auto& e : s.variants)
        if (e.name == var.name) throw ParseError("duplicate variant '" + var.name + "'");
      WiretapConfig probe;
      for (const auto& [ok, ov] : var.overrides) apply_setting(probe, ok, ov);
      s.variants.push_back(std::move(var));
    } else apply_setting(s.base, k, v);
  });
  if (!have_range) throw ParseError("missing 'range'");
  if (!have_metrics) throw ParseError("missing 'metrics'");
  s.range.points();
  return s;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sweep_spec(ss.str());
}

std::string format_sweep_spec(const SweepSpec& s) {
  std::ostringstream o;
  if (!s.title.empty()) o << "title = " << s.title << '\n';
  o << "n_a = " << s.base.n_a << '\n' << "n_b = " << s.base.n_b << '\n' << "n_e = " << s.base.n_e << '\n';
  o << "rate_s = " << fmt(s.base.rate_s) << '\n';
  auto link = [&](const char* name, const KmuShadowedParams& p) {
    o << name << ".gamma_bar_db = " << fmt(10.0 * std::log10(p.gamma_bar)) << '\n';
    o << name << ".kappa = " << fmt(p.kappa) << '\n';
    o << name << ".mu = " << p.mu << '\n';
    o << name << ".m = " << fmt(p.m) << '\n';
  };
  link("bob", s.base.bob);
  link("eve", s.base.eve);
  o << "axis = " << axis_name(s.axis) << '\n';
  o << "range = " << fmt(s.range.start) << ", " << fmt(s.range.stop) << ", " << fmt(s.range.step) << '\n';
  for (const auto& v : s.variants) {
    o << "variant." << v.name << " = ";
    for (std::size_t i = 0; i < v.overrides.size(); ++i)
      o << (i ? "; " : "") << v.overrides[i].first << '=' << v.overrides[i].second;
    o << '\n';
  }
  o << "metrics = ";
  for (std::size_t i = 0; i < s.metrics.size(); ++i) o << (i ? ", " : "") << metric_name(s.metrics[i]);
  o << '\n';
  o << "mc_trials = " << s.mc_trials << '\n';
  char seed[32];
  std::snprintf(seed, sizeof seed, "0x%llX", static_cast<unsigned long long>(s.seed));
  o << "seed = " << seed << '\n';
  o << "mc_every = " << s.mc_every << '\n';
  o << "mc_min_sop = " << fmt(s.mc_min_sop) << '\n';
  if (!s.output.empty()) o << "output = " << s.output << '\n';
  return o.str();
}

}  // namespace kmusec
