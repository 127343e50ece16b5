#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "quadspect/quadtree.hpp"

namespace quadspect {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// Walks every pair of leaves that share an edge segment, using only the
// tree structure (no geometry, no raster).
class EdgeWalker {
 public:
  EdgeWalker(const std::unordered_map<const QuadNode*, std::size_t>& index, DisjointSets& sets)
      : index_(index), sets_(sets) {}

  void visit(const QuadNode& n) {
    if (n.is_leaf()) return;
    const auto& c = n.children;
    for (const auto& child : c) visit(child);
    across_vertical_edge(c[kLowLow], c[kHighLow]);
    across_vertical_edge(c[kLowHigh], c[kHighHigh]);
    across_horizontal_edge(c[kLowLow], c[kLowHigh]);
    across_horizontal_edge(c[kHighLow], c[kHighHigh]);
  }

 private:
  void link(const QuadNode& a, const QuadNode& b) {
    if (a.kind == NodeKind::Black && b.kind == NodeKind::Black) sets_.unite(index_.at(&a), index_.at(&b));
  }

  // `left` and `right` are equal-sized regions meeting along a vertical edge.
  void across_vertical_edge(const QuadNode& left, const QuadNode& right) {
    if (left.is_leaf() && right.is_leaf()) {
      link(left, right);
      return;
    }
    const QuadNode& l_low = left.is_leaf() ? left : left.children[kHighLow];
    const QuadNode& l_high = left.is_leaf() ? left : left.children[kHighHigh];
    const QuadNode& r_low = right.is_leaf() ? right : right.children[kLowLow];
    const QuadNode& r_high = right.is_leaf() ? right : right.children[kLowHigh];
    across_vertical_edge(l_low, r_low);
    across_vertical_edge(l_high, r_high);
  }

  // `below` and `above` meet along a horizontal edge.
  void across_horizontal_edge(const QuadNode& below, const QuadNode& above) {
    if (below.is_leaf() && above.is_leaf()) {
      link(below, above);
      return;
    }
    const QuadNode& b_left = below.is_leaf() ? below : below.children[kLowHigh];
    const QuadNode& b_right = below.is_leaf() ? below : below.children[kHighHigh];
    const QuadNode& a_left = above.is_leaf() ? above : above.children[kLowLow];
    const QuadNode& a_right = above.is_leaf() ? above : above.children[kHighLow];
    across_horizontal_edge(b_left, a_left);
    across_horizontal_edge(b_right, a_right);
  }

  const std::unordered_map<const QuadNode*, std::size_t>& index_;
  DisjointSets& sets_;
};

void index_black(const QuadNode& node, const Box2& box, std::string& path,
                 std::vector<BlackLeaf>& leaves,
                 std::unordered_map<const QuadNode*, std::size_t>& index) {
  if (node.kind == NodeKind::Black) {
    index.emplace(&node, leaves.size());
    leaves.push_back({path, box, -1});
    return;
  }
  if (node.is_leaf()) return;
  const auto kids = subdivide(box);
  for (int q = 0; q < 4; ++q) {
    path.push_back(static_cast<char>('0' + q));
    index_black(node.children[q], kids[q], path, leaves, index);
    path.pop_back();
  }
}

}  // namespace

int RegionLabeling::region_of(std::string_view path) const {
  auto it = std::lower_bound(leaves.begin(), leaves.end(), path,
                             [](const BlackLeaf& leaf, std::string_view p) { return leaf.path < p; });
  if (it == leaves.end() || it->path != path) return -1;
  return it->region;
}

std::vector<double> RegionLabeling::region_areas() const {
  std::vector<double> areas(static_cast<std::size_t>(region_count), 0.0);
  for (const auto& leaf : leaves) areas[static_cast<std::size_t>(leaf.region)] += leaf.box.area();
  return areas;
}

RegionLabeling label_regions(const QuadtreeModel& model) {
  RegionLabeling out;
  std::unordered_map<const QuadNode*, std::size_t> index;
  std::string path;
  index_black(model.root, model.root_box, path, out.leaves, index);

  DisjointSets sets(out.leaves.size());
  EdgeWalker(index, sets).visit(model.root);

  std::unordered_map<std::size_t, int> region_of_root;
  for (std::size_t i = 0; i < out.leaves.size(); ++i) {
    auto [it, inserted] = region_of_root.emplace(sets.find(i), out.region_count);
    if (inserted) ++out.region_count;
    out.leaves[i].region = it->second;
  }
  return out;
}

}  // namespace quadspect
