#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "quadspect/aspects.hpp"

namespace quadspect {

/// Cost of one quadtree build against a uniform grid of the same resolution.
struct BenchRow {
  Space space = Space::JointSpace;
  std::string mechanism;
  int depth = 1;
  std::uint64_t n_quadtree = 0;        ///< classifier invocations during the build
  std::uint64_t n_discretization = 0;  ///< 2^(2d)

  double k() const { return static_cast<double>(n_quadtree) / static_cast<double>(n_discretization); }
};

/// Builds the mode-free joint space or workspace at every requested depth on
/// the default initial box. Depths are visited in increasing order and each
/// tree is grown from the previous one with refine(), which yields the same
/// counts as fresh builds.
std::vector<BenchRow> run_bench(const FiveBarGeometry& g, const std::string& mechanism, Space space,
                                std::vector<int> depths, BuildOptions options = {});

/// CSV with header `space,mechanism,depth,n_quadtree,n_disc,K`; K is a
/// percentage with two decimals.
std::string emit_table(const std::vector<BenchRow>& rows);
/// Inverse of emit_table. Throws ParseError on malformed input.
std::vector<BenchRow> parse_table(std::string_view csv);

struct DiscretizationRun {
  std::uint64_t evaluations = 0;
  std::uint64_t valid_cells = 0;
};

/// Evaluates the scalar point classifier at every cell centre of a
/// 2^depth x 2^depth grid over the default box (depth <= 12).
DiscretizationRun run_discretization(const FiveBarGeometry& g, Space space, int depth);

/// Whether the grid baseline at `depth` marks the cell holding q as valid.
bool discretization_cell_valid(const FiveBarGeometry& g, Space space, int depth, Vec2 q);

}  // namespace quadspect
