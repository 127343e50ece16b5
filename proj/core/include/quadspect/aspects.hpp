#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadspect/mechanism.hpp"
#include "quadspect/quadtree.hpp"

namespace quadspect {

enum class Space { JointSpace, Workspace };

std::string to_string(Space s);
std::optional<Space> parse_space(const std::string& text);

/// [-pi, pi]^2.
Box2 jointspace_box();
/// [-(L1 + L3), L1 + L3]^2.
Box2 workspace_box(const FiveBarGeometry& g);
Box2 default_box(Space s, const FiveBarGeometry& g);

/// Assembly without parallel singularity (no mode selection).
BoxClassifier jointspace_reach_classifier(const FiveBarGeometry& g);
/// Reachability without serial singularity (no mode selection).
BoxClassifier workspace_reach_classifier(const FiveBarGeometry& g);

/// Joint box is valid when the combo's assembly branch exists, is free of
/// parallel singularity, and carries the combo's working-mode signs.
BoxClassifier jointspace_classifier(const ModeCombo& combo, const FiveBarGeometry& g);
/// Workspace box is valid when the combo's working-mode branch exists, is
/// free of serial singularity, and has the combo's det(A) sign.
BoxClassifier workspace_classifier(const ModeCombo& combo, const FiveBarGeometry& g);

/// Selects one of the four classifiers above.
BoxClassifier make_classifier(Space space, const FiveBarGeometry& g,
                              std::optional<ModeCombo> combo);

/// One connected Black region, ranked by area.
/// A region is resolved when it holds at least one Black leaf coarser than
/// the maximal depth; regions built only from smallest leaves are fragments
/// (slivers thinner than the accuracy of the tree) and are not aspects.
struct Aspect {
  int region = -1;          ///< id in the RegionLabeling
  double area = 0.0;
  std::size_t largest_leaf = 0;  ///< index into RegionLabeling::leaves
};

struct LabeledTree {
  QuadtreeModel model;
  RegionLabeling labels;
  /// Resolved regions, descending area, ties by region id. Aspect ids are
  /// indices here.
  std::vector<Aspect> aspects;
  /// Unresolved regions, same order.
  std::vector<Aspect> fragments;

  /// Aspect id of a region id, or -1 (fragments included).
  int aspect_of_region(int region) const;
};

LabeledTree label_tree(QuadtreeModel model);

/// Number of aspects of a joint-space tree once the root box edges are
/// identified (theta1 = -pi with +pi, theta2 likewise). Fragments glued to an
/// aspect across the seam do not count separately.
int torus_aspect_count(const LabeledTree& joint);

struct Pairing {
  int parallel_aspect = -1;
  int serial_aspect = -1;
  Vec2 witness_p;
  Vec2 witness_theta;
  /// 0 when the largest leaf of the parallel aspect served as witness.
  int witness_rank = 0;
  double area = 0.0;  ///< parallel aspect area
};

/// Witness leaves tried per parallel aspect, largest first. A witness whose
/// image lands off Black is inconclusive, so the next leaf is tried.
inline constexpr std::size_t kMaxWitnesses = 64;

struct PairingFailure {
  int parallel_aspect = -1;
  Vec2 witness_p;
  std::optional<Vec2> witness_theta;
  std::string reason;
};

class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AspectSet {
  ModeCombo combo;
  LabeledTree workspace;   ///< parallel aspects
  LabeledTree jointspace;  ///< serial aspects
  std::vector<Pairing> pairing;
  std::vector<PairingFailure> failures;
};

AspectSet compute_aspects(const FiveBarGeometry& g, const ModeCombo& combo, int max_depth,
                          BuildOptions options = {});

/// Pairs parallel to serial aspects for already-built trees.
AspectSet pair_aspects(const FiveBarGeometry& g, const ModeCombo& combo, QuadtreeModel workspace,
                       QuadtreeModel jointspace);

/// Throws PairingError listing every failed witness.
void require_total_pairing(const AspectSet& set);

struct RegionOverlap {
  AssemblyMode am;
  WorkingMode wm_a;
  int aspect_a = -1;
  WorkingMode wm_b;
  int aspect_b = -1;
  double area = 0.0;
};

struct AspectReport {
  struct ComboSummary {
    ModeCombo combo;
    int parallel_count = 0;
    int serial_count = 0;
    int serial_torus_count = 0;
    double parallel_area = 0.0;
    double serial_area = 0.0;
  };
  std::vector<ComboSummary> combos;
  /// overlap[am][i][j]: joint-space area Black in both working modes i and j
  /// (index = (leg1 == Minus) * 2 + (leg2 == Minus)).
  std::array<std::array<std::array<double, 4>, 4>, 2> overlap{};
  /// Serial-aspect pairs of different working modes with positive overlap.
  std::vector<RegionOverlap> region_overlaps;
};

/// Requires jointspace trees sharing root box and depth.
AspectReport aspect_report(std::span<const AspectSet> sets);

}  // namespace quadspect
