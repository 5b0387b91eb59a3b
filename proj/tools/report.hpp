// Output helpers for the CLI: CSV tables and a minimal SVG line plotter.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace report {

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

  template <class... T>
  void row(const T&... cells) {
    std::vector<std::string> r;
    (r.push_back(cell(cells)), ...);
    rows_.push_back(std::move(r));
  }

  bool empty() const { return rows_.empty(); }

  std::string str() const {
    std::ostringstream out;
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
    return out.str();
  }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  static std::string cell(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream o;
    o << std::setprecision(17) << v;
    return o.str();
  }
  template <class T>
  static std::string cell(const T& v) {
    return std::to_string(v);
  }
  static void write_line(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Series {
  std::string label;
  std::vector<double> x, y;
};

// Polylines over shared axes. With log_y, non-positive values are dropped.
inline std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                            const std::vector<Series>& series, bool log_y) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && !(s.y[i] > 0)) continue;
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream o;
  o << std::setprecision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    const double xp = L + (W - L - R) * i / 4, yp = H - B - (H - T - B) * i / 4;
    o << "<text x=\"" << xp << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << xv << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << yp + 4 << "\" text-anchor=\"end\">"
      << (log_y ? "1e" : "") << yv << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  o << "<text transform=\"translate(16," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel
    << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = colors[k % 6];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((log_y && !(s.y[i] > 0)) || !std::isfinite(s.y[i])) continue;
      o << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    o << "\"/>\n";
    o << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << c << "\">"
      << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace report
