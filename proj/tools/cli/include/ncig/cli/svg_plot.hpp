#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ncig/volume.hpp"

namespace ncig::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

enum class PlotKind {
  Auto,     // kappa sweeps plot the disk volume, theta/eta sweeps the ratio
  Volumes,  // quantum, separable and entangled volumes
  Ratio,    // entangled / separable
  Disk,     // positive-disk volume
};

// Standalone SVG with axes, numeric ticks, one polyline per series and a legend.
std::string render_svg(const PlotSpec& plot);

// Throws DomainError for tables with fewer than two rows.
PlotSpec plot_from_table(const SweepTable& table, PlotKind kind = PlotKind::Auto);

void emit_plot(const SweepTable& table, const std::filesystem::path& path,
               PlotKind kind = PlotKind::Auto);

}  // namespace ncig::cli
