#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "kmusec/errors.hpp"
#include "kmusec/sweep.hpp"

namespace kmusec {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// printf is locale-sensitive only for LC_NUMERIC, which the library never
// changes; "%.12g" therefore always uses '.' as the decimal separator.
std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "variant,axis_name,axis_value,metric,method,value,ci_halfwidth,term_count,reason\r\n";
  for (const auto& r : rows) {
    const bool err = r.method == "Error";
    out << csv_field(r.variant) << ',' << csv_field(r.axis_name) << ',' << format_number(r.axis_value) << ','
        << csv_field(r.metric) << ',' << csv_field(r.method) << ',' << (err ? "" : format_number(r.value)) << ','
        << (err ? "" : format_number(r.ci_halfwidth)) << ',' << r.term_count << ',' << csv_field(r.reason)
        << "\r\n";
  }
  if (!out) throw IoError("CSV write failed");
}

namespace {

// One RFC 4180 record; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string cur;
  bool quoted = false;
  for (;;) {
    const int ch = in.get();
    if (ch == std::char_traits<char>::eof()) {
      if (quoted) throw ParseError("CSV: unterminated quoted field");
      fields.push_back(cur);
      return true;
    }
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          cur += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && in.peek() == '\n') in.get();
      fields.push_back(cur);
      return true;
    } else {
      cur += c;
    }
  }
}

double parse_num(const std::string& s) {
  if (s.empty()) return std::nan("");
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

std::vector<SweepRow> read_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_record(in, f) || f.size() != 9 || f[0] != "variant") throw ParseError("CSV: missing header row");
  std::vector<SweepRow> rows;
  while (read_record(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 9) throw ParseError("CSV: expected 9 fields per row");
    SweepRow r;
    r.variant = f[0];
    r.axis_name = f[1];
    r.axis_value = parse_num(f[2]);
    r.metric = f[3];
    r.method = f[4];
    r.value = parse_num(f[5]);
    r.ci_halfwidth = parse_num(f[6]);
    r.term_count = std::strtoull(f[7].c_str(), nullptr, 10);
    r.reason = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace kmusec
