#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quadspect/interval.hpp"
#include "quadspect/mechanism.hpp"

namespace quadspect {

/// Box test used to grow a tree. Must be pure: the builder may call it from
/// several threads and relies on identical answers for identical boxes.
using BoxClassifier = std::function<Ternary(const Box2&)>;

enum class NodeKind : char {
  Black = 'B',         ///< certified valid
  White = 'W',         ///< certified invalid
  Undetermined = 'U',  ///< unresolved at maximal depth
  Gray = 'G',          ///< internal
};

/// Quadrant order of Gray children.
enum Quadrant : int { kLowLow = 0, kHighLow = 1, kLowHigh = 2, kHighHigh = 3 };

struct QuadNode {
  NodeKind kind = NodeKind::Undetermined;
  std::vector<QuadNode> children;  ///< exactly 4 for Gray, empty otherwise

  bool is_leaf() const { return kind != NodeKind::Gray; }
  friend bool operator==(const QuadNode&, const QuadNode&) = default;
};

struct BuildStats {
  std::uint64_t classifier_calls = 0;
  std::uint64_t black = 0;
  std::uint64_t white = 0;
  std::uint64_t undetermined = 0;
  std::uint64_t gray = 0;

  std::uint64_t nodes() const { return black + white + undetermined + gray; }
};

struct QuadtreeModel {
  Box2 root_box;
  int max_depth = 1;
  QuadNode root;
  /// Same shape as root with Black and White exchanged: its Black space is
  /// the certified-invalid (complementary) space.
  QuadNode complement;
  BuildStats stats;

  /// Side of the smallest box along x: width(root_box) / 2^max_depth.
  double accuracy() const;
  /// Structural equality; stats are ignored.
  bool same_tree(const QuadtreeModel& other) const;
};

struct BuildOptions {
  /// Upper bound on concurrent subtree workers. Results do not depend on it.
  int jobs = 1;
};

/// Children boxes share one midpoint per axis, so they tile the parent exactly.
std::array<Box2, 4> subdivide(const Box2& box);

QuadtreeModel build(const Box2& root_box, int max_depth, const BoxClassifier& classify,
                    BuildOptions options = {});

/// Continues Undetermined leaves down to new_depth without retesting them or
/// any Black/White leaf. stats.classifier_calls accumulates.
QuadtreeModel refine(const QuadtreeModel& model, int new_depth, const BoxClassifier& classify,
                     BuildOptions options = {});

/// Collapses Gray nodes whose four children are identical Black or White
/// leaves. Undetermined leaves are never merged (they stay at max depth).
void canonicalize(QuadNode& node);
QuadNode swap_black_white(const QuadNode& node);
BuildStats count_nodes(const QuadNode& node);

struct LeafView {
  NodeKind kind;
  Box2 box;
  int depth;
  std::string_view path;  ///< quadrant digits from the root, valid during the callback
};

/// Visits leaves in preorder (which is lexicographic path order).
void for_each_leaf(const QuadtreeModel& model, const std::function<void(const LeafView&)>& fn);

struct LocateResult {
  NodeKind kind;
  std::string path;
  Box2 box;
};

/// Leaf containing q. Points on a shared edge go to the lower-coordinate
/// side. Throws DomainError when q lies outside the root box.
LocateResult locate(const QuadtreeModel& model, Vec2 q);

// ---------------------------------------------------------------------------
// Connected components of Black space.

struct BlackLeaf {
  std::string path;
  Box2 box;
  int region = -1;
};

struct RegionLabeling {
  std::vector<BlackLeaf> leaves;  ///< preorder
  int region_count = 0;

  /// Region of the Black leaf with this path, or -1.
  int region_of(std::string_view path) const;
  std::vector<double> region_areas() const;
};

/// Union-find over Black leaves sharing an edge of positive length. Region
/// ids follow the preorder position of each region's first leaf.
RegionLabeling label_regions(const QuadtreeModel& model);

// ---------------------------------------------------------------------------
// Raster view at resolution 2^max_depth per side.

struct Raster {
  int size = 0;                 ///< cells per side
  std::vector<NodeKind> kinds;  ///< row-major, row 0 at y_lo
  std::vector<int> regions;     ///< -1 outside Black space or when unlabeled

  NodeKind kind_at(int col, int row) const { return kinds[static_cast<std::size_t>(row) * size + col]; }
  int region_at(int col, int row) const { return regions[static_cast<std::size_t>(row) * size + col]; }
};

/// Throws std::invalid_argument for max_depth > 12 (the grid would not fit).
Raster rasterize(const QuadtreeModel& model, const RegionLabeling* labels = nullptr);

// ---------------------------------------------------------------------------
// Text format:
//   QT1 <d_max> <x_lo> <x_hi> <y_lo> <y_hi>\n
//   <preorder string over G B W U>\n

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

std::string serialize(const QuadtreeModel& model);
QuadtreeModel deserialize(std::string_view text);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace quadspect
