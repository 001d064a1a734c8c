#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "kmusec/errors.hpp"
#include "kmusec/sim_oracle.hpp"
#include "kmusec/sweep.hpp"

namespace kmusec {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent stream per (variant, point) so any subset of points reproduces.
std::uint64_t point_seed(std::uint64_t seed, std::size_t variant, std::size_t point) {
  return splitmix(seed ^ splitmix((static_cast<std::uint64_t>(variant) << 32) | point));
}

bool is_mc(MetricKind k) { return k == MetricKind::McSop || k == MetricKind::McAsc; }

MetricResult evaluate(MetricKind k, const WiretapConfig& c) {
  switch (k) {
    case MetricKind::SopExact: return sop_exact(c);
    case MetricKind::SopAsymptotic: return sop_asymptotic(c);
    case MetricKind::SopBound: return sop_high_snr_bound(c);
    case MetricKind::AscExact: return asc_exact(c);
    case MetricKind::AscAsymptotic: return asc_asymptotic(c);
    case MetricKind::CapMain: return cap_main(c);
    case MetricKind::CapEve: return cap_eve(c);
    case MetricKind::AscLoss: return asc_loss(c);
    case MetricKind::QuadSop: return quad_sop(c);
    case MetricKind::QuadAsc: return quad_asc(c);
    default: break;
  }
  throw DomainError("metric is not a deterministic evaluation");
}

struct Task {
  std::size_t variant;
  std::size_t point;
};

std::vector<SweepRow> run_point(const SweepSpec& spec, const WiretapConfig& base, const std::string& variant,
                                std::size_t vi, std::size_t pi, double x) {
  std::vector<SweepRow> rows;
  WiretapConfig c = base;
  apply_axis(c, spec.axis, x);
  auto row = [&](MetricKind k) {
    SweepRow r;
    r.variant = variant;
    r.axis_name = axis_name(spec.axis);
    r.axis_value = x;
    r.metric = metric_name(k);
    return r;
  };
  auto error_row = [&](MetricKind k, const std::string& why) {
    SweepRow r = row(k);
    r.method = "Error";
    r.reason = why;
    rows.push_back(std::move(r));
  };

  bool want_mc = false;
  for (auto k : spec.metrics) want_mc = want_mc || is_mc(k);
  want_mc = want_mc && pi % static_cast<std::size_t>(spec.mc_every) == 0;

  // The SOP gate needs the exact value; failure to compute it skips the gate.
  bool sop_gate = true;
  if (want_mc && spec.mc_min_sop > 0) {
    try {
      sop_gate = sop_exact(c).value >= spec.mc_min_sop;
    } catch (const std::exception&) {
    }
  }

  SimulationResult sim;
  std::string sim_error;
  bool have_sim = false;
  if (want_mc) {
    try {
      sim = simulate(c, spec.mc_trials, point_seed(spec.seed, vi, pi), 1);
      have_sim = true;
    } catch (const std::exception& e) {
      sim_error = e.what();
    }
  }

  for (auto k : spec.metrics) {
    if (is_mc(k)) {
      if (!want_mc) continue;
      if (k == MetricKind::McSop && !sop_gate) continue;
      if (!have_sim) {
        error_row(k, sim_error);
        continue;
      }
      const McEstimate& e = k == MetricKind::McSop ? sim.sop : sim.asc;
      SweepRow r = row(k);
      r.method = to_string(Method::MonteCarlo);
      r.value = e.mean;
      r.ci_halfwidth = 1.96 * e.std_error;
      r.term_count = e.n_trials;
      rows.push_back(std::move(r));
      continue;
    }
    try {
      const MetricResult m = evaluate(k, c);
      SweepRow r = row(k);
      r.method = to_string(m.method);
      r.value = m.value;
      r.ci_halfwidth = m.ci_halfwidth;
      r.term_count = m.term_count;
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      error_row(k, e.what());
    }
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RunOptions& opt) {
  if (spec.metrics.empty()) throw DomainError("sweep: metrics must be nonempty");
  const std::vector<double> xs = spec.range.points();

  std::vector<Variant> variants = spec.variants;
  if (variants.empty()) variants.push_back({"base", {}});
  std::vector<WiretapConfig> bases;
  for (const auto& v : variants) {
    WiretapConfig c = spec.base;
    for (const auto& [k, val] : v.overrides) apply_setting(c, k, val);
    bases.push_back(c);
  }

  std::vector<Task> tasks;
  for (std::size_t v = 0; v < variants.size(); ++v)
    for (std::size_t p = 0; p < xs.size(); ++p) tasks.push_back({v, p});
  std::vector<std::vector<SweepRow>> results(tasks.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      results[i] = run_point(spec, bases[t.variant], variants[t.variant].name, t.variant, t.point, xs[t.point]);
      const std::size_t n = ++done;
      if (opt.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        opt.progress(variants[t.variant].name + " " + axis_name(spec.axis) + "=" + format_number(xs[t.point]) +
                     " (" + std::to_string(n) + "/" + std::to_string(tasks.size()) + ")");
      }
    }
  };

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<SweepRow> rows;
  for (auto& r : results)
    for (auto& row : r) rows.push_back(std::move(row));
  return rows;
}

void run_sweep_to_file(const SweepSpec& spec, const RunOptions& opt) {
  if (spec.output.empty()) throw IoError("sweep: no output path");
  const auto rows = run_sweep(spec, opt);
  const std::filesystem::path path(spec.output);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + spec.output + "'");
  write_csv(rows, out);
}

}  // namespace kmusec
