#include "ncig/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncig/cli/table_io.hpp"
#include "ncig/errors.hpp"

namespace ncig::cli {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 90;
constexpr double kRight = 180;
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Ticks at 1, 2 or 5 times a power of ten covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= f * mag) {
      step = f * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-300) {
      const double d = std::max(std::abs(lo) * 0.1, 1e-12);
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  Range xr, yr;
  for (const Series& s : plot.series) {
    for (double x : s.x) xr.include(x);
    for (double y : s.y) yr.include(y);
  }
  xr.pad();
  yr.pad();
  // y axis starts at zero for nonnegative data
  if (yr.lo > 0.0) yr.lo = 0.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + pw / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << escape(plot.title) << "</text>\n";

  out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\""
      << kTop + ph << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
      << "\"/>\n</g>\n";

  out << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : nice_ticks(xr.lo, xr.hi)) {
    out << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(sx(t))
        << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(sx(t)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << num(t) << "</text>\n";
  }
  for (double t : nice_ticks(yr.lo, yr.hi)) {
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << kLeft << "\" y2=\""
        << num(sy(t)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">"
        << num(t) << "</text>\n";
  }
  out << "</g>\n";

  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(plot.x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\" transform=\"rotate(-90 20 " << kTop + ph / 2 << ")\">"
      << escape(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const Series& s = plot.series[k];
    const char* color = kPalette[k % kPalette.size()];
    out << "<polyline class=\"series\" data-name=\"" << escape(s.name) << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << (first ? "" : " ") << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
      first = false;
    }
    out << "\"/>\n";
  }

  out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const double y = kTop + 10 + 20.0 * static_cast<double>(k);
    const double x = kLeft + pw + 15;
    out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 25 << "\" y2=\"" << y
        << "\" stroke=\"" << kPalette[k % kPalette.size()] << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << x + 32 << "\" y=\"" << y + 4 << "\">" << escape(plot.series[k].name)
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

PlotSpec plot_from_table(const SweepTable& table, PlotKind kind) {
  if (table.rows.size() < 2) throw DomainError("emit_plot: need at least two rows to plot");
  if (kind == PlotKind::Auto) {
    kind = table.parameter == SweepParameter::Kappa ? PlotKind::Disk : PlotKind::Ratio;
  }
  const std::string pname(to_string(table.parameter));
  PlotSpec plot;
  plot.x_label = pname;

  const auto column = [&](auto pick) {
    std::vector<double> v;
    for (const SweepRow& row : table.rows) v.push_back(pick(row.volumes));
    return v;
  };
  std::vector<double> x;
  for (const SweepRow& row : table.rows) x.push_back(row.param);

  switch (kind) {
    case PlotKind::Disk:
      plot.title = "Volume of positive covariances vs " + pname;
      plot.y_label = "volume";
      plot.series.push_back({"positive disk", x, column([](const RegionVolumes& v) { return v.disk.value; })});
      break;
    case PlotKind::Volumes:
      plot.title = "Volumes of allowed states vs " + pname;
      plot.y_label = "volume";
      plot.series.push_back({"quantum", x, column([](const RegionVolumes& v) { return v.quantum.value; })});
      plot.series.push_back({"separable", x, column([](const RegionVolumes& v) { return v.separable.value; })});
      plot.series.push_back({"entangled", x, column([](const RegionVolumes& v) { return v.entangled.value; })});
      break;
    case PlotKind::Ratio:
    case PlotKind::Auto:
      plot.title = "Entangled / separable volume vs " + pname;
      plot.y_label = "ratio";
      plot.series.push_back({"entangled/separable", x, column([](const RegionVolumes& v) { return v.ratio; })});
      break;
  }
  return plot;
}

void emit_plot(const SweepTable& table, const std::filesystem::path& path, PlotKind kind) {
  write_text_file(path, render_svg(plot_from_table(table, kind)));
}

}  // namespace ncig::cli
