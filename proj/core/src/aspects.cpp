#include "quadspect/aspects.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace quadspect {

namespace {

bool certified(const Interval& v, Sign s) { return s == Sign::Plus ? v.positive() : v.negative(); }

bool certainly_not(const Interval& v, Sign s) {
  return s == Sign::Plus ? v.hi <= 0.0 : v.lo >= 0.0;
}

int wm_index(WorkingMode wm) {
  return (wm.leg1 == Sign::Minus ? 2 : 0) + (wm.leg2 == Sign::Minus ? 1 : 0);
}

int am_index(AssemblyMode am) { return am.sign == Sign::Minus ? 1 : 0; }

Vec2 center(const Box2& b) { return {b.x.mid(), b.y.mid()}; }

}  // namespace

std::string to_string(Space s) { return s == Space::JointSpace ? "jointspace" : "workspace"; }

std::optional<Space> parse_space(const std::string& text) {
  if (text == "jointspace") return Space::JointSpace;
  if (text == "workspace") return Space::Workspace;
  return std::nullopt;
}

Box2 jointspace_box() { return Box2{full_angle(), full_angle()}; }

Box2 workspace_box(const FiveBarGeometry& g) {
  const double r = g.l1() + g.l3();
  return Box2{Interval{-r, r}, Interval{-r, r}};
}

Box2 default_box(Space s, const FiveBarGeometry& g) {
  return s == Space::JointSpace ? jointspace_box() : workspace_box(g);
}

BoxClassifier jointspace_reach_classifier(const FiveBarGeometry& g) {
  return [g](const Box2& box) { return dkp_box(box, g).status; };
}

BoxClassifier workspace_reach_classifier(const FiveBarGeometry& g) {
  return [g](const Box2& box) { return ikp_box(box, g).status; };
}

BoxClassifier jointspace_classifier(const ModeCombo& combo, const FiveBarGeometry& g) {
  return [g, combo](const Box2& box) {
    const DkpResult r = dkp_box(box, g, combo.am);
    if (r.status == Ternary::Invalid) return Ternary::Invalid;
    const DkpBranch* br = r.branch(combo.am);
    if (!br) return Ternary::Indeterminate;
    const WorkingSigns w = working_sign(box, *br, g);
    if (certainly_not(w.u_z, combo.wm.leg1) || certainly_not(w.v_z, combo.wm.leg2))
      return Ternary::Invalid;
    if (r.status == Ternary::Valid && certified(w.u_z, combo.wm.leg1) &&
        certified(w.v_z, combo.wm.leg2))
      return Ternary::Valid;
    return Ternary::Indeterminate;
  };
}

BoxClassifier workspace_classifier(const ModeCombo& combo, const FiveBarGeometry& g) {
  return [g, combo](const Box2& box) {
    const IkpResult r = ikp_box(box, g, combo.wm);
    if (r.status == Ternary::Invalid) return Ternary::Invalid;
    const IkpBranch* br = r.branch(combo.wm);
    if (!br) return Ternary::Indeterminate;
    const Interval det = det_a(box, *br, g);
    if (certainly_not(det, combo.am.sign)) return Ternary::Invalid;
    if (r.status == Ternary::Valid && certified(det, combo.am.sign)) return Ternary::Valid;
    return Ternary::Indeterminate;
  };
}

BoxClassifier make_classifier(Space space, const FiveBarGeometry& g, std::optional<ModeCombo> combo) {
  if (space == Space::JointSpace)
    return combo ? jointspace_classifier(*combo, g) : jointspace_reach_classifier(g);
  return combo ? workspace_classifier(*combo, g) : workspace_reach_classifier(g);
}

int LabeledTree::aspect_of_region(int region) const {
  for (std::size_t i = 0; i < aspects.size(); ++i)
    if (aspects[i].region == region) return static_cast<int>(i);
  return -1;
}

LabeledTree label_tree(QuadtreeModel model) {
  LabeledTree t;
  t.model = std::move(model);
  t.labels = label_regions(t.model);
  const auto areas = t.labels.region_areas();
  std::vector<Aspect> regions(areas.size());
  for (std::size_t r = 0; r < areas.size(); ++r) {
    regions[r].region = static_cast<int>(r);
    regions[r].area = areas[r];
  }
  std::vector<double> best(areas.size(), -1.0);
  std::vector<bool> resolved(areas.size(), false);
  for (std::size_t i = 0; i < t.labels.leaves.size(); ++i) {
    const auto& leaf = t.labels.leaves[i];
    const double a = leaf.box.area();
    if (a > best[leaf.region]) {
      best[leaf.region] = a;
      regions[leaf.region].largest_leaf = i;
    }
    if (static_cast<int>(leaf.path.size()) < t.model.max_depth) resolved[leaf.region] = true;
  }
  const auto by_area = [](const Aspect& a, const Aspect& b) { return a.area > b.area; };
  std::stable_sort(regions.begin(), regions.end(), by_area);
  for (const auto& r : regions) (resolved[r.region] ? t.aspects : t.fragments).push_back(r);
  return t;
}

int torus_aspect_count(const LabeledTree& joint) {
  const Box2& root = joint.model.root_box;
  const auto& leaves = joint.labels.leaves;
  std::vector<int> parent(static_cast<std::size_t>(joint.labels.region_count));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  const auto find = [&](int r) {
    while (parent[r] != r) r = parent[r] = parent[parent[r]];
    return r;
  };
  const auto glue = [&](auto lo_side, auto hi_side, auto along) {
    for (const auto& a : leaves) {
      if (!lo_side(a.box)) continue;
      for (const auto& b : leaves) {
        if (!hi_side(b.box)) continue;
        const Interval& ia = along(a.box);
        const Interval& ib = along(b.box);
        if (std::min(ia.hi, ib.hi) > std::max(ia.lo, ib.lo)) parent[find(a.region)] = find(b.region);
      }
    }
  };
  glue([&](const Box2& b) { return b.x.lo == root.x.lo; }, [&](const Box2& b) { return b.x.hi == root.x.hi; },
       [](const Box2& b) -> const Interval& { return b.y; });
  glue([&](const Box2& b) { return b.y.lo == root.y.lo; }, [&](const Box2& b) { return b.y.hi == root.y.hi; },
       [](const Box2& b) -> const Interval& { return b.x; });
  std::vector<bool> seen(parent.size(), false);
  int count = 0;
  for (const auto& a : joint.aspects) {
    const int r = find(a.region);
    if (!seen[r]) {
      seen[r] = true;
      ++count;
    }
  }
  return count;
}

AspectSet pair_aspects(const FiveBarGeometry& g, const ModeCombo& combo, QuadtreeModel workspace,
                       QuadtreeModel jointspace) {
  AspectSet set;
  set.combo = combo;
  set.workspace = label_tree(std::move(workspace));
  set.jointspace = label_tree(std::move(jointspace));

  const auto& wleaves = set.workspace.labels.leaves;
  for (std::size_t a = 0; a < set.workspace.aspects.size(); ++a) {
    const Aspect& aspect = set.workspace.aspects[a];
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < wleaves.size(); ++i)
      if (wleaves[i].region == aspect.region) candidates.push_back(i);
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t l, std::size_t r) {
      return wleaves[l].box.area() > wleaves[r].box.area();
    });
    if (candidates.size() > kMaxWitnesses) candidates.resize(kMaxWitnesses);

    PairingFailure fail;
    fail.parallel_aspect = static_cast<int>(a);
    fail.witness_p = center(wleaves[aspect.largest_leaf].box);
    std::optional<Pairing> found;
    for (std::size_t k = 0; k < candidates.size() && !found; ++k) {
      const Vec2 p = center(wleaves[candidates[k]].box);
      const IkpResult ikp = ikp_box(Box2{Interval(p.x), Interval(p.y)}, g, combo.wm);
      const IkpBranch* br = ikp.branch(combo.wm);
      if (ikp.status != Ternary::Valid || !br) {
        if (k == 0) fail.reason = "inverse kinematics not certified at the witness point";
        continue;
      }
      const Vec2 theta{wrap_angle(br->theta1.mid()), wrap_angle(br->theta2.mid())};
      if (k == 0) fail.witness_theta = theta;
      const LocateResult hit = locate(set.jointspace.model, theta);
      if (hit.kind != NodeKind::Black) {
        if (k == 0)
          fail.reason = std::string("witness image lands on a '") + static_cast<char>(hit.kind) +
                        "' joint-space leaf";
        continue;
      }
      const int serial = set.jointspace.aspect_of_region(set.jointspace.labels.region_of(hit.path));
      if (serial < 0) {
        if (k == 0) fail.reason = "witness image lands on an unresolved joint-space fragment";
        continue;
      }
      Pairing pr;
      pr.parallel_aspect = static_cast<int>(a);
      pr.serial_aspect = serial;
      pr.witness_p = p;
      pr.witness_theta = theta;
      pr.witness_rank = static_cast<int>(k);
      pr.area = aspect.area;
      found = pr;
    }
    if (found) {
      set.pairing.push_back(*found);
    } else {
      fail.reason += " (" + std::to_string(candidates.size()) + " witnesses tried)";
      set.failures.push_back(fail);
    }
  }
  return set;
}

AspectSet compute_aspects(const FiveBarGeometry& g, const ModeCombo& combo, int max_depth,
                          BuildOptions options) {
  QuadtreeModel ws = build(workspace_box(g), max_depth, workspace_classifier(combo, g), options);
  QuadtreeModel js = build(jointspace_box(), max_depth, jointspace_classifier(combo, g), options);
  return pair_aspects(g, combo, std::move(ws), std::move(js));
}

void require_total_pairing(const AspectSet& set) {
  if (set.failures.empty()) return;
  std::ostringstream msg;
  msg << "combo " << set.combo.name() << ": " << set.failures.size() << " unpaired parallel aspect(s)";
  for (const auto& f : set.failures) msg << "; aspect " << f.parallel_aspect << ": " << f.reason;
  throw PairingError(msg.str());
}

AspectReport aspect_report(std::span<const AspectSet> sets) {
  AspectReport report;
  if (sets.empty()) return report;
  const QuadtreeModel& ref = sets.front().jointspace.model;
  for (const auto& s : sets) {
    if (!(s.jointspace.model.root_box == ref.root_box) || s.jointspace.model.max_depth != ref.max_depth)
      throw std::invalid_argument("aspect_report needs joint-space trees on a common grid");
  }

  struct Grid {
    const AspectSet* set;
    Raster raster;
  };
  std::vector<Grid> grids;
  for (const auto& s : sets) {
    AspectReport::ComboSummary summary;
    summary.combo = s.combo;
    summary.parallel_count = static_cast<int>(s.workspace.aspects.size());
    summary.serial_count = static_cast<int>(s.jointspace.aspects.size());
    summary.serial_torus_count = torus_aspect_count(s.jointspace);
    for (const auto& a : s.workspace.aspects) summary.parallel_area += a.area;
    for (const auto& a : s.jointspace.aspects) summary.serial_area += a.area;
    report.combos.push_back(summary);
    grids.push_back({&s, rasterize(s.jointspace.model, &s.jointspace.labels)});
  }

  const double cell_area = ref.root_box.area() / (static_cast<double>(grids.front().raster.size) *
                                                  grids.front().raster.size);
  for (std::size_t i = 0; i < grids.size(); ++i) {
    for (std::size_t j = 0; j < grids.size(); ++j) {
      const ModeCombo& ci = grids[i].set->combo;
      const ModeCombo& cj = grids[j].set->combo;
      if (!(ci.am == cj.am)) continue;
      const auto& ri = grids[i].raster;
      const auto& rj = grids[j].raster;
      std::uint64_t both = 0;
      std::map<std::pair<int, int>, std::uint64_t> pairs;
      for (std::size_t c = 0; c < ri.kinds.size(); ++c) {
        if (ri.kinds[c] != NodeKind::Black || rj.kinds[c] != NodeKind::Black) continue;
        ++both;
        if (wm_index(ci.wm) < wm_index(cj.wm)) ++pairs[{ri.regions[c], rj.regions[c]}];
      }
      report.overlap[am_index(ci.am)][wm_index(ci.wm)][wm_index(cj.wm)] =
          static_cast<double>(both) * cell_area;
      for (const auto& [key, count] : pairs) {
        RegionOverlap o;
        o.am = ci.am;
        o.wm_a = ci.wm;
        o.aspect_a = grids[i].set->jointspace.aspect_of_region(key.first);
        o.wm_b = cj.wm;
        o.aspect_b = grids[j].set->jointspace.aspect_of_region(key.second);
        o.area = static_cast<double>(count) * cell_area;
        report.region_overlaps.push_back(o);
      }
    }
  }
  return report;
}

}  // namespace quadspect
