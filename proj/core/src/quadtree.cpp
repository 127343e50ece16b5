#include "quadspect/quadtree.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace quadspect {

namespace {

double midpoint(const Interval& a) { return a.lo + (a.hi - a.lo) / 2.0; }

struct Task {
  QuadNode* node;
  Box2 box;
  int depth;
  bool classify_self;  // false: the node is a known Undetermined box to expand
};

class Grower {
 public:
  Grower(const BoxClassifier& classify, int max_depth, int split_depth)
      : classify_(classify), max_depth_(max_depth), split_depth_(split_depth) {}

  // Grows node over box. Subtrees rooted at split_depth are deferred to
  // `deferred` when it is non-null.
  void grow(QuadNode& node, const Box2& box, int depth, std::uint64_t& calls,
            std::vector<Task>* deferred) {
    if (deferred && depth == split_depth_) {
      deferred->push_back({&node, box, depth, true});
      return;
    }
    ++calls;
    switch (classify_(box)) {
      case Ternary::Valid:
        node.kind = NodeKind::Black;
        return;
      case Ternary::Invalid:
        node.kind = NodeKind::White;
        return;
      case Ternary::Indeterminate:
        if (depth >= max_depth_) {
          node.kind = NodeKind::Undetermined;
          return;
        }
        expand(node, box, depth, calls, deferred);
        return;
    }
  }

  void expand(QuadNode& node, const Box2& box, int depth, std::uint64_t& calls,
              std::vector<Task>* deferred) {
    node.kind = NodeKind::Gray;
    node.children.assign(4, QuadNode{});
    const auto kids = subdivide(box);
    for (int q = 0; q < 4; ++q) grow(node.children[q], kids[q], depth + 1, calls, deferred);
  }

  void run(const Task& t, std::uint64_t& calls) {
    if (t.classify_self)
      grow(*t.node, t.box, t.depth, calls, nullptr);
    else
      expand(*t.node, t.box, t.depth, calls, nullptr);
  }

 private:
  const BoxClassifier& classify_;
  int max_depth_;
  int split_depth_;
};

// Runs tasks on up to `jobs` threads. Per-task counters are summed in task
// order so totals never depend on scheduling.
std::uint64_t run_tasks(Grower& grower, const std::vector<Task>& tasks, int jobs) {
  std::vector<std::uint64_t> calls(tasks.size(), 0);
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) grower.run(tasks[i], calls[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) grower.run(tasks[i], calls[i]);
      });
    }
  }
  return std::accumulate(calls.begin(), calls.end(), std::uint64_t{0});
}

int split_depth_for(int jobs, int max_depth) {
  int depth = 0;
  while ((1LL << (2 * depth)) < 16LL * jobs && depth < max_depth) ++depth;
  return depth;
}

void finish(QuadtreeModel& m) {
  canonicalize(m.root);
  m.complement = swap_black_white(m.root);
  const auto calls = m.stats.classifier_calls;
  m.stats = count_nodes(m.root);
  m.stats.classifier_calls = calls;
}

void collect_undetermined(QuadNode& node, const Box2& box, int depth, std::vector<Task>& out) {
  if (node.kind == NodeKind::Undetermined) {
    out.push_back({&node, box, depth, false});
  } else if (node.kind == NodeKind::Gray) {
    const auto kids = subdivide(box);
    for (int q = 0; q < 4; ++q) collect_undetermined(node.children[q], kids[q], depth + 1, out);
  }
}

void visit_leaves(const QuadNode& node, const Box2& box, int depth, std::string& path,
                  const std::function<void(const LeafView&)>& fn) {
  if (node.is_leaf()) {
    fn(LeafView{node.kind, box, depth, path});
    return;
  }
  const auto kids = subdivide(box);
  for (int q = 0; q < 4; ++q) {
    path.push_back(static_cast<char>('0' + q));
    visit_leaves(node.children[q], kids[q], depth + 1, path, fn);
    path.pop_back();
  }
}

void count_into(const QuadNode& node, BuildStats& s) {
  switch (node.kind) {
    case NodeKind::Black: ++s.black; break;
    case NodeKind::White: ++s.white; break;
    case NodeKind::Undetermined: ++s.undetermined; break;
    case NodeKind::Gray:
      ++s.gray;
      for (const auto& c : node.children) count_into(c, s);
      break;
  }
}

void fill(const QuadNode& node, int col, int row, int span, Raster& r,
          const RegionLabeling* labels, std::size_t& black_index) {
  if (node.is_leaf()) {
    int region = -1;
    if (node.kind == NodeKind::Black) {
      if (labels) region = labels->leaves[black_index].region;
      ++black_index;
    }
    for (int j = row; j < row + span; ++j) {
      for (int i = col; i < col + span; ++i) {
        const std::size_t at = static_cast<std::size_t>(j) * r.size + i;
        r.kinds[at] = node.kind;
        r.regions[at] = region;
      }
    }
    return;
  }
  const int half = span / 2;
  fill(node.children[kLowLow], col, row, half, r, labels, black_index);
  fill(node.children[kHighLow], col + half, row, half, r, labels, black_index);
  fill(node.children[kLowHigh], col, row + half, half, r, labels, black_index);
  fill(node.children[kHighHigh], col + half, row + half, half, r, labels, black_index);
}

}  // namespace

double QuadtreeModel::accuracy() const { return root_box.x.width() / std::ldexp(1.0, max_depth); }

bool QuadtreeModel::same_tree(const QuadtreeModel& other) const {
  return root_box == other.root_box && max_depth == other.max_depth && root == other.root;
}

std::array<Box2, 4> subdivide(const Box2& box) {
  const double mx = midpoint(box.x);
  const double my = midpoint(box.y);
  const Interval xl{box.x.lo, mx};
  const Interval xh{mx, box.x.hi};
  const Interval yl{box.y.lo, my};
  const Interval yh{my, box.y.hi};
  return {Box2{xl, yl}, Box2{xh, yl}, Box2{xl, yh}, Box2{xh, yh}};
}

QuadtreeModel build(const Box2& root_box, int max_depth, const BoxClassifier& classify,
                    BuildOptions options) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  QuadtreeModel m;
  m.root_box = root_box;
  m.max_depth = max_depth;
  std::uint64_t calls = 0;
  if (options.jobs <= 1) {
    Grower grower(classify, max_depth, -1);
    grower.grow(m.root, root_box, 0, calls, nullptr);
  } else {
    Grower grower(classify, max_depth, split_depth_for(options.jobs, max_depth));
    std::vector<Task> tasks;
    grower.grow(m.root, root_box, 0, calls, &tasks);
    calls += run_tasks(grower, tasks, options.jobs);
  }
  m.stats.classifier_calls = calls;
  finish(m);
  return m;
}

QuadtreeModel refine(const QuadtreeModel& model, int new_depth, const BoxClassifier& classify,
                     BuildOptions options) {
  if (new_depth <= model.max_depth)
    throw std::invalid_argument("refine needs a depth above the current one");
  QuadtreeModel m = model;
  m.max_depth = new_depth;
  std::vector<Task> tasks;
  collect_undetermined(m.root, m.root_box, 0, tasks);
  Grower grower(classify, new_depth, -1);
  m.stats.classifier_calls += run_tasks(grower, tasks, options.jobs);
  finish(m);
  return m;
}

void canonicalize(QuadNode& node) {
  if (node.is_leaf()) return;
  for (auto& c : node.children) canonicalize(c);
  const NodeKind first = node.children[0].kind;
  if (first != NodeKind::Black && first != NodeKind::White) return;
  for (const auto& c : node.children)
    if (c.kind != first) return;
  node.kind = first;
  node.children.clear();
}

QuadNode swap_black_white(const QuadNode& node) {
  QuadNode out;
  switch (node.kind) {
    case NodeKind::Black: out.kind = NodeKind::White; break;
    case NodeKind::White: out.kind = NodeKind::Black; break;
    default: out.kind = node.kind; break;
  }
  out.children.reserve(node.children.size());
  for (const auto& c : node.children) out.children.push_back(swap_black_white(c));
  return out;
}

BuildStats count_nodes(const QuadNode& node) {
  BuildStats s;
  count_into(node, s);
  return s;
}

void for_each_leaf(const QuadtreeModel& model, const std::function<void(const LeafView&)>& fn) {
  std::string path;
  visit_leaves(model.root, model.root_box, 0, path, fn);
}

LocateResult locate(const QuadtreeModel& model, Vec2 q) {
  const Box2& root = model.root_box;
  if (!root.x.contains(q.x) || !root.y.contains(q.y))
    throw DomainError("point outside the root box");
  const QuadNode* node = &model.root;
  Box2 box = root;
  std::string path;
  while (!node->is_leaf()) {
    const int qx = q.x <= midpoint(box.x) ? 0 : 1;
    const int qy = q.y <= midpoint(box.y) ? 0 : 1;
    const int quadrant = qx + 2 * qy;
    box = subdivide(box)[quadrant];
    node = &node->children[quadrant];
    path.push_back(static_cast<char>('0' + quadrant));
  }
  return {node->kind, path, box};
}

Raster rasterize(const QuadtreeModel& model, const RegionLabeling* labels) {
  if (model.max_depth > 12) throw std::invalid_argument("raster depth above 12 is not supported");
  Raster r;
  r.size = 1 << model.max_depth;
  const std::size_t cells = static_cast<std::size_t>(r.size) * r.size;
  r.kinds.assign(cells, NodeKind::Undetermined);
  r.regions.assign(cells, -1);
  std::size_t black_index = 0;
  fill(model.root, 0, 0, r.size, r, labels, black_index);
  return r;
}

}  // namespace quadspect
