#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kmusec/secrecy_metrics.hpp"

namespace kmusec {

enum class Axis { GammaBarB_dB, GammaBarE_dB, KappaBoth, KappaB, RateS };

const char* axis_name(Axis a);
Axis parse_axis(const std::string& s);

struct AxisRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;
  std::vector<double> points() const;
};

struct Variant {
  std::string name;
  std::vector<std::pair<std::string, std::string>> overrides;
};

enum class MetricKind {
  SopExact,
  SopAsymptotic,
  SopBound,
  AscExact,
  AscAsymptotic,
  CapMain,
  CapEve,
  AscLoss,
  QuadSop,
  QuadAsc,
  McSop,
  McAsc,
};

const char* metric_name(MetricKind m);
// Accepts the names above plus the aliases "quad" and "mc".
std::vector<MetricKind> parse_metrics(const std::string& list);

struct SweepSpec {
  std::string title;
  WiretapConfig base;
  Axis axis = Axis::GammaBarB_dB;
  AxisRange range;
  std::vector<Variant> variants;
  std::vector<MetricKind> metrics;
  std::uint64_t mc_trials = 1000000;
  std::uint64_t seed = 0xC0FFEE;
  int mc_every = 1;          // Monte Carlo only at every k-th axis point
  double mc_min_sop = 0.0;   // and only where the exact SOP reaches this value
  std::string output;
};

// key = value documents; see docs/sweep-schema.md.
SweepSpec parse_sweep_spec(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);
std::string format_sweep_spec(const SweepSpec& spec);

void apply_setting(WiretapConfig& c, const std::string& key, const std::string& value);
WiretapConfig parse_config(const std::string& text);
void apply_axis(WiretapConfig& c, Axis axis, double value);

struct SweepRow {
  std::string variant;
  std::string axis_name;
  double axis_value = 0.0;
  std::string metric;
  std::string method;  // Exact, Asymptotic, Quadrature, MonteCarlo or Error
  double value = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t term_count = 0;
  std::string reason;
};

struct RunOptions {
  unsigned threads = 0;
  std::function<void(const std::string&)> progress;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RunOptions& opt = {});
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> read_csv(std::istream& in);
void run_sweep_to_file(const SweepSpec& spec, const RunOptions& opt = {});

// Figure presets fig2 .. fig8.
std::vector<std::string> preset_names();
SweepSpec preset(const std::string& name);
std::string preset_manifest();

// Writes <outdir>/<preset>.csv and optionally <outdir>/<preset>.svg.
void figures(const std::string& preset_name, const std::string& outdir, bool svg, const RunOptions& opt = {},
             const std::uint64_t* trials_override = nullptr, const std::uint64_t* seed_override = nullptr);

std::string render_svg(const SweepSpec& spec, const std::vector<SweepRow>& rows);

struct VerifyReport {
  bool passed = true;
  std::vector<std::string> lines;
};

std::vector<WiretapConfig> oracle_grid(std::size_t count);
std::vector<WiretapConfig> mc_suite();

VerifyReport verify(bool full, const RunOptions& opt = {});

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string format_number(double v);

}  // namespace kmusec
