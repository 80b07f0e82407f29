#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gimvip/io.hpp"

namespace gimvip {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;
// Values at or below zero are drawn at this floor.
constexpr double kLogFloor = 1e-300;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg_plot(const SeriesTable& table, const std::string& title) {
  const std::size_t n = table.index.size();
  const bool has_v = std::any_of(table.v_lyap.begin(), table.v_lyap.end(), [](const auto& v) { return v.has_value(); });

  double xmin = *std::min_element(table.index.begin(), table.index.end());
  double xmax = *std::max_element(table.index.begin(), table.index.end());
  if (xmax <= xmin) xmax = xmin + 1.0;

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto consider = [&](double v) {
    if (v > 0 && std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  for (double v : table.xi_norm) consider(v);
  for (const auto& v : table.v_lyap) {
    if (v) consider(*v);
  }
  if (!std::isfinite(lo)) lo = hi = 1.0;
  double dmin = std::floor(std::log10(lo));
  double dmax = std::ceil(std::log10(hi));
  if (dmax <= dmin) dmax = dmin + 1;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    const double ly = std::log10(std::max(y, kLogFloor));
    const double c = std::clamp(ly, dmin, dmax);
    return kTop + (dmax - c) / (dmax - dmin) * ph;
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << escape(title) << "</text>\n";

  // Decade grid.
  const int step = std::max(1, static_cast<int>((dmax - dmin) / 10));
  for (int e = static_cast<int>(dmin); e <= static_cast<int>(dmax); e += step) {
    const double y = kTop + (dmax - e) / (dmax - dmin) * ph;
    os << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft + pw) << "\" y2=\""
       << fixed(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    char label[32];
    std::snprintf(label, sizeof label, "%.4g", xv);
    os << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(kTop + ph + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
  }
  os << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw) << "\" height=\""
     << fixed(ph) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 15)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(table.index_name)
     << "</text>\n";

  auto series = [&](auto value_at, const char* color, const char* name, double legend_y) {
    std::ostringstream pts;
    std::size_t count = 0;
    double last_x = 0, last_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = value_at(i);
      if (!v) continue;
      last_x = px(table.index[i]);
      last_y = py(*v);
      pts << (count ? " " : "") << fixed(last_x) << ',' << fixed(last_y);
      ++count;
    }
    if (count == 1) {
      os << "<circle cx=\"" << fixed(last_x) << "\" cy=\"" << fixed(last_y) << "\" r=\"3\" fill=\"" << color
         << "\"/>\n";
    } else if (count > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts.str()
         << "\"/>\n";
    }
    os << "<line x1=\"" << fixed(kLeft + pw - 120) << "\" y1=\"" << fixed(legend_y) << "\" x2=\""
       << fixed(kLeft + pw - 95) << "\" y2=\"" << fixed(legend_y) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << fixed(kLeft + pw - 90) << "\" y=\"" << fixed(legend_y + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << name << "</text>\n";
  };
  series([&](std::size_t i) { return std::optional<double>(table.xi_norm[i]); }, "#1f77b4", "||Xi(w)||", kTop + 15);
  if (has_v) series([&](std::size_t i) { return table.v_lyap[i]; }, "#ff7f0e", "V(w)", kTop + 32);

  os << "</svg>\n";
  return os.str();
}

}  // namespace gimvip
