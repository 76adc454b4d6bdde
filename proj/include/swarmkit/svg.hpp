#pragma once

#include "swarmkit/campaign.hpp"
#include "swarmkit/types.hpp"

#include <string>
#include <vector>

namespace swarm {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Static line plot; NaN samples break the polyline.
void svg_line_plot(const std::string& path, const std::string& title,
                   const std::vector<PlotSeries>& series);

// Mean line inside the min-max envelope.
void svg_band_plot(const std::string& path, const std::string& title,
                   const SeriesBand& band);

// Planar snapshot: one circle per agent, one segment per undirected link.
// d = 3 configurations are projected on the first two coordinates.
void svg_snapshot(const std::string& path, const Mat& x, const LinkSet& links);

}  // namespace swarm
