#pragma once

#include <string>
#include <vector>

#include "quadspect/quadtree.hpp"

namespace quadspect {

struct RenderStyle {
  /// Region fills, cycled by region id. Must not be empty.
  std::vector<std::string> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::string black_fill = "#000000";
  std::string undetermined_fill = "#b0b0b0";
  std::string stroke = "none";
  double stroke_width = 0.0;
  bool show_undetermined = false;
};

/// SVG with one rect per Black leaf (and per Undetermined leaf when shown),
/// in preorder. viewBox is the root box; y grows upwards in the picture.
std::string render_svg(const QuadtreeModel& model, const RegionLabeling* labels = nullptr,
                       const RenderStyle& style = {});

}  // namespace quadspect
