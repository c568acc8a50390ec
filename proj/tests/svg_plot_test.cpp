#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include "ncig/cli/svg_plot.hpp"
#include "ncig/errors.hpp"
#include "support/tables.hpp"

namespace ncig::cli {
namespace {

namespace pt = boost::property_tree;

pt::ptree parse_xml(const std::string& svg) {
  std::istringstream in(svg);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

std::vector<const pt::ptree*> polylines(const pt::ptree& tree) {
  std::vector<const pt::ptree*> out;
  for (const auto& [name, child] : tree.get_child("svg")) {
    if (name == "polyline") out.push_back(&child);
  }
  return out;
}

std::vector<std::pair<double, double>> points(const pt::ptree& polyline) {
  std::vector<std::pair<double, double>> out;
  std::istringstream in(polyline.get<std::string>("<xmlattr>.points"));
  for (std::string pair; in >> pair;) {
    const auto comma = pair.find(',');
    out.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
  }
  return out;
}

TEST(SvgPlot, ParsesAsXml) {
  const std::string svg = render_svg(plot_from_table(oracles::synthetic_table(5)));
  EXPECT_NO_THROW(parse_xml(svg));
  EXPECT_EQ(svg.find("href"), std::string::npos);
}

TEST(SvgPlot, OnePolylinePerSeries) {
  const SweepTable table = oracles::synthetic_table(2);
  EXPECT_EQ(polylines(parse_xml(render_svg(plot_from_table(table, PlotKind::Disk)))).size(), 1u);
  EXPECT_EQ(polylines(parse_xml(render_svg(plot_from_table(table, PlotKind::Volumes)))).size(), 3u);
  EXPECT_EQ(polylines(parse_xml(render_svg(plot_from_table(table, PlotKind::Ratio)))).size(), 1u);
}

TEST(SvgPlot, LegendNamesEverySeries) {
  const std::string svg = render_svg(plot_from_table(oracles::synthetic_table(3), PlotKind::Volumes));
  for (const char* name : {">quantum<", ">separable<", ">entangled<"}) {
    EXPECT_NE(svg.find(name), std::string::npos) << name;
  }
}

TEST(SvgPlot, HasNumericTickLabels) {
  const auto tree = parse_xml(render_svg(plot_from_table(oracles::synthetic_table(4))));
  int numeric = 0;
  for (const auto& [name, child] : tree.get_child("svg")) {
    if (name != "g" || child.get<std::string>("<xmlattr>.class", "") != "ticks") continue;
    for (const auto& [tag, text] : child) {
      if (tag != "text") continue;
      std::size_t used = 0;
      std::stod(text.data(), &used);
      if (used == text.data().size()) ++numeric;
    }
  }
  EXPECT_GE(numeric, 4);
}

TEST(SvgPlot, IncreasingDataRendersRising) {
  // SVG y grows downward, so rising data means falling pixel y.
  const auto tree = parse_xml(render_svg(plot_from_table(oracles::synthetic_table(6), PlotKind::Disk)));
  const auto pts = points(*polylines(tree).front());
  ASSERT_EQ(pts.size(), 6u);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_GT(pts[i].first, pts[i - 1].first);
    EXPECT_LT(pts[i].second, pts[i - 1].second);
  }
}

TEST(SvgPlot, EscapesText) {
  PlotSpec spec;
  spec.title = "a < b & c";
  spec.series.push_back({"x>y", {0, 1}, {0, 1}});
  EXPECT_NO_THROW(parse_xml(render_svg(spec)));
}

TEST(SvgPlot, FewerThanTwoRowsIsDomainError) {
  EXPECT_THROW(plot_from_table(oracles::synthetic_table(1)), DomainError);
  EXPECT_THROW(plot_from_table(SweepTable{}), DomainError);
}

}  // namespace
}  // namespace ncig::cli
