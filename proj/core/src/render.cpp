#include "quadspect/render.hpp"

#include <stdexcept>

namespace quadspect {

std::string render_svg(const QuadtreeModel& model, const RegionLabeling* labels, const RenderStyle& style) {
  if (style.palette.empty()) throw std::invalid_argument("render palette must not be empty");
  const Box2& root = model.root_box;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
  out += format_double(root.x.lo) + ' ' + format_double(root.y.lo) + ' ' +
         format_double(root.x.width()) + ' ' + format_double(root.y.width()) + "\">\n";

  const std::string stroke_attrs =
      "\" stroke=\"" + style.stroke +
      (style.stroke_width > 0.0 ? "\" stroke-width=\"" + format_double(style.stroke_width) : std::string()) +
      "\"/>\n";
  // Flip y so that the picture has y pointing up inside the same viewBox.
  const double flip = root.y.lo + root.y.hi;
  std::size_t black_index = 0;
  for_each_leaf(model, [&](const LeafView& leaf) {
    std::string fill;
    if (leaf.kind == NodeKind::Black) {
      fill = style.black_fill;
      if (labels) {
        const int region = labels->leaves[black_index].region;
        fill = style.palette[static_cast<std::size_t>(region) % style.palette.size()];
      }
      ++black_index;
    } else if (leaf.kind == NodeKind::Undetermined && style.show_undetermined) {
      fill = style.undetermined_fill;
    } else {
      return;
    }
    out += "<rect x=\"" + format_double(leaf.box.x.lo) + "\" y=\"" + format_double(flip - leaf.box.y.hi) +
           "\" width=\"" + format_double(leaf.box.x.width()) + "\" height=\"" +
           format_double(leaf.box.y.width()) + "\" fill=\"" + fill + stroke_attrs;
  });
  out += "</svg>\n";
  return out;
}

}  // namespace quadspect
