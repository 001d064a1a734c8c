#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "kmusec/sweep.hpp"

namespace kmusec {

namespace {

constexpr double kWidth = 860, kHeight = 560;
constexpr double kLeft = 80, kRight = 230, kTop = 40, kBottom = 60;
constexpr double kLogFloor = 1e-10;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '&') o += "&amp;";
    else if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '"') o += "&quot;";
    else o += c;
  }
  return o;
}

std::string dash_for(const std::string& metric) {
  if (metric.find("asymptotic") != std::string::npos) return "8,5";
  if (metric.find("bound") != std::string::npos || metric.rfind("quad", 0) == 0) return "2,4";
  return "";
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= f * mag) return f * mag;
  return 10 * mag;
}

}  // namespace

std::string render_svg(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  struct Series {
    std::string variant, metric;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::string> variants;
  bool log_scale = true;
  for (const auto& r : rows) {
    if (r.method == "Error" || !std::isfinite(r.value)) continue;
    if (r.metric.find("sop") == std::string::npos) log_scale = false;
    const auto key = std::make_pair(r.variant, r.metric);
    if (!index.count(key)) {
      index[key] = series.size();
      series.push_back({r.variant, r.metric, {}});
    }
    if (std::find(variants.begin(), variants.end(), r.variant) == variants.end()) variants.push_back(r.variant);
    series[index[key]].pts.emplace_back(r.axis_value, r.value);
  }

  double xmin = spec.range.start, xmax = spec.range.stop;
  if (!(xmax > xmin)) xmax = xmin + 1;
  double ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series)
    for (auto [x, y] : s.pts) {
      if (log_scale && y <= 0) continue;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!std::isfinite(ymin)) ymin = log_scale ? kLogFloor : 0, ymax = 1;
  if (log_scale) {
    ymin = std::pow(10.0, std::floor(std::log10(std::max(ymin, kLogFloor))));
    ymax = std::pow(10.0, std::ceil(std::log10(ymax)));
    if (ymax <= ymin) ymax = ymin * 10;
  } else {
    ymin = std::min(0.0, ymin);
    const double st = nice_step(std::max(ymax - ymin, 1e-12));
    ymax = std::ceil(ymax / st) * st;
    if (ymax <= ymin) ymax = ymin + 1;
  }

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    double t = log_scale ? (std::log10(std::max(y, ymin)) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin))
                         : (y - ymin) / (ymax - ymin);
    return kTop + (1 - std::clamp(t, 0.0, 1.0)) * ph;
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";

  // Grid and ticks.
  const double xs = nice_step(xmax - xmin);
  for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-9; x += xs) {
    o << "<line x1=\"" << num(px(x)) << "\" y1=\"" << kTop << "\" x2=\"" << num(px(x)) << "\" y2=\"" << kTop + ph
      << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << num(px(x)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << format_number(x)
      << "</text>\n";
  }
  if (log_scale) {
    const int d0 = static_cast<int>(std::round(std::log10(ymin))), d1 = static_cast<int>(std::round(std::log10(ymax)));
    const int every = std::max(1, (d1 - d0) / 10);
    for (int d = d0; d <= d1; d += every) {
      const double y = py(std::pow(10.0, d));
      o << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << num(y)
        << "\" stroke=\"#e0e0e0\"/>\n";
      o << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
  } else {
    const double ys = nice_step(ymax - ymin);
    for (double y = std::ceil(ymin / ys) * ys; y <= ymax + 1e-9; y += ys) {
      o << "<line x1=\"" << kLeft << "\" y1=\"" << num(py(y)) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << num(py(y))
        << "\" stroke=\"#e0e0e0\"/>\n";
      o << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << format_number(y)
        << "</text>\n";
    }
  }
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">"
    << axis_name(spec.axis) << "</text>\n";
  o << "<text transform=\"translate(20," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << (log_scale ? "SOP" : "ASC (bits/s/Hz)") << "</text>\n";

  // Curves and markers.
  for (const auto& s : series) {
    const auto vi = std::find(variants.begin(), variants.end(), s.variant) - variants.begin();
    const char* color = kPalette[vi % (sizeof kPalette / sizeof kPalette[0])];
    std::vector<std::pair<double, double>> pts;
    for (auto p : s.pts)
      if (!log_scale || p.second >= ymin) pts.push_back(p);
    if (s.metric.rfind("mc_", 0) == 0) {
      for (auto [x, y] : pts)
        o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"4\" fill=\"none\" stroke=\"" << color
          << "\"/>\n";
      continue;
    }
    if (pts.empty()) continue;
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
    const std::string dash = dash_for(s.metric);
    if (!dash.empty()) o << " stroke-dasharray=\"" << dash << "\"";
    o << " points=\"";
    for (auto [x, y] : pts) o << num(px(x)) << ',' << num(py(y)) << ' ';
    o << "\"/>\n";
  }

  // Legend: one colour per variant, one style per metric.
  double ly = kTop + 10;
  const double lx = kLeft + pw + 16;
  for (std::size_t i = 0; i < variants.size(); ++i, ly += 18) {
    o << "<line x1=\"" << lx << "\" y1=\"" << num(ly) << "\" x2=\"" << lx + 24 << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << kPalette[i % (sizeof kPalette / sizeof kPalette[0])] << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << lx + 30 << "\" y=\"" << num(ly + 4) << "\">" << escape(variants[i]) << "</text>\n";
  }
  ly += 10;
  std::vector<std::string> metrics;
  for (const auto& s : series)
    if (std::find(metrics.begin(), metrics.end(), s.metric) == metrics.end()) metrics.push_back(s.metric);
  for (const auto& m : metrics) {
    if (m.rfind("mc_", 0) == 0) {
      o << "<circle cx=\"" << lx + 12 << "\" cy=\"" << num(ly) << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
    } else {
      o << "<line x1=\"" << lx << "\" y1=\"" << num(ly) << "\" x2=\"" << lx + 24 << "\" y2=\"" << num(ly)
        << "\" stroke=\"black\" stroke-width=\"1.6\"";
      const std::string dash = dash_for(m);
      if (!dash.empty()) o << " stroke-dasharray=\"" << dash << "\"";
      o << "/>\n";
    }
    o << "<text x=\"" << lx + 30 << "\" y=\"" << num(ly + 4) << "\">" << escape(m) << "</text>\n";
    ly += 18;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace kmusec
