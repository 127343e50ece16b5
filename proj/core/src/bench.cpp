#include "quadspect/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace quadspect {

namespace {

PointClass classify_point(const FiveBarGeometry& g, Space space, Vec2 q) {
  return space == Space::JointSpace ? point_classify_joint(q, g) : point_classify_workspace(q, g);
}

Vec2 cell_center(const Box2& box, int n, int col, int row) {
  const double w = box.x.width() / n;
  const double h = box.y.width() / n;
  return {box.x.lo + (col + 0.5) * w, box.y.lo + (row + 0.5) * h};
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t at) {
  T v{};
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size())
    throw ParseError("malformed number '" + std::string(tok) + "'", at);
  return v;
}

}  // namespace

std::vector<BenchRow> run_bench(const FiveBarGeometry& g, const std::string& mechanism, Space space,
                                std::vector<int> depths, BuildOptions options) {
  if (depths.empty()) throw std::invalid_argument("run_bench needs at least one depth");
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  if (depths.front() < 1) throw std::invalid_argument("depths must be at least 1");

  const BoxClassifier classify = make_classifier(space, g, std::nullopt);
  std::vector<BenchRow> rows;
  QuadtreeModel tree;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    tree = i == 0 ? build(default_box(space, g), depths[i], classify, options)
                  : refine(tree, depths[i], classify, options);
    BenchRow row;
    row.space = space;
    row.mechanism = mechanism;
    row.depth = depths[i];
    row.n_quadtree = tree.stats.classifier_calls;
    row.n_discretization = std::uint64_t{1} << (2 * depths[i]);
    rows.push_back(row);
  }
  return rows;
}

std::string emit_table(const std::vector<BenchRow>& rows) {
  std::string out = "space,mechanism,depth,n_quadtree,n_disc,K\n";
  for (const auto& r : rows) {
    char k[32];
    std::snprintf(k, sizeof(k), "%.2f", 100.0 * r.k());
    out += to_string(r.space) + ',' + r.mechanism + ',' + std::to_string(r.depth) + ',' +
           std::to_string(r.n_quadtree) + ',' + std::to_string(r.n_discretization) + ',' + k + '\n';
  }
  return out;
}

std::vector<BenchRow> parse_table(std::string_view csv) {
  std::vector<BenchRow> rows;
  std::size_t offset = 0;
  bool header = true;
  while (offset < csv.size()) {
    std::size_t end = csv.find('\n', offset);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = csv.substr(offset, end - offset);
    if (header) {
      if (line != "space,mechanism,depth,n_quadtree,n_disc,K") throw ParseError("bad CSV header", offset);
      header = false;
    } else if (!line.empty()) {
      const auto f = split(line, ',');
      if (f.size() != 6) throw ParseError("expected 6 fields", offset);
      BenchRow r;
      const auto space = parse_space(std::string(f[0]));
      if (!space) throw ParseError("unknown space", offset);
      r.space = *space;
      r.mechanism = std::string(f[1]);
      r.depth = parse_number<int>(f[2], offset);
      r.n_quadtree = parse_number<std::uint64_t>(f[3], offset);
      r.n_discretization = parse_number<std::uint64_t>(f[4], offset);
      parse_number<double>(f[5], offset);  // K is derived; validated only
      rows.push_back(r);
    }
    offset = end + 1;
  }
  if (header) throw ParseError("missing CSV header", 0);
  return rows;
}

DiscretizationRun run_discretization(const FiveBarGeometry& g, Space space, int depth) {
  if (depth < 1 || depth > 12) throw std::invalid_argument("discretization depth must be in [1, 12]");
  const Box2 box = default_box(space, g);
  const int n = 1 << depth;
  DiscretizationRun run;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      ++run.evaluations;
      if (classify_point(g, space, cell_center(box, n, col, row)) == PointClass::Valid) ++run.valid_cells;
    }
  }
  return run;
}

bool discretization_cell_valid(const FiveBarGeometry& g, Space space, int depth, Vec2 q) {
  const Box2 box = default_box(space, g);
  const int n = 1 << depth;
  auto cell = [n](double v, const Interval& axis) {
    const int c = static_cast<int>(std::floor((v - axis.lo) / axis.width() * n));
    return std::clamp(c, 0, n - 1);
  };
  return classify_point(g, space, cell_center(box, n, cell(q.x, box.x), cell(q.y, box.y))) ==
         PointClass::Valid;
}

}  // namespace quadspect
