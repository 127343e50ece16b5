#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "quadspect/bench.hpp"
#include "quadspect/render.hpp"

namespace quadspect::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Box2 resolve_box(const RunConfig& cfg, const FiveBarGeometry& g) {
  if (cfg.box.empty()) return default_box(cfg.space, g);
  if (cfg.box.size() != 4) throw UsageError("--box takes xlo,xhi,ylo,yhi");
  if (!(cfg.box[0] < cfg.box[1]) || !(cfg.box[2] < cfg.box[3])) throw UsageError("--box must be non-empty");
  return Box2{Interval{cfg.box[0], cfg.box[1]}, Interval{cfg.box[2], cfg.box[3]}};
}

QuadtreeModel complement_model(const QuadtreeModel& m) {
  QuadtreeModel c = m;
  std::swap(c.root, c.complement);
  c.stats = count_nodes(c.root);
  return c;
}

std::string labels_csv(const LabeledTree& t) {
  std::string out = "leaf_path,region,aspect\n";
  for (const auto& leaf : t.labels.leaves)
    out += (leaf.path.empty() ? std::string("-") : leaf.path) + ',' + std::to_string(leaf.region) + ',' +
           std::to_string(t.aspect_of_region(leaf.region)) + '\n';
  return out;
}

void add_mechanism_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--mechanism", cfg.mechanism, "m1, m2 or custom")
      ->check(CLI::IsMember({"m1", "m2", "custom"}));
  sub->add_option("--lengths", cfg.lengths, "L0,L1,L2,L3,L4 for --mechanism custom")->delimiter(',');
  sub->add_option("--jobs", cfg.jobs, "concurrent subtree workers")->check(CLI::PositiveNumber);
}

void add_mode_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--working-mode", cfg.working_mode, "++, +-, -+ or --")
      ->check(CLI::IsMember({"++", "+-", "-+", "--"}));
  sub->add_option("--assembly-mode", cfg.assembly_mode, "+ or -")->check(CLI::IsMember({"+", "-"}));
}

}  // namespace

FiveBarGeometry resolve_geometry(const RunConfig& cfg) {
  if (cfg.mechanism == "custom") {
    if (cfg.lengths.size() != 5) throw UsageError("--mechanism custom needs exactly 5 lengths");
    for (double l : cfg.lengths)
      if (!(l > 0.0)) throw UsageError("--lengths must all be positive");
    return {cfg.lengths[0], cfg.lengths[1], cfg.lengths[2], cfg.lengths[3], cfg.lengths[4]};
  }
  if (!cfg.lengths.empty()) throw UsageError("--lengths requires --mechanism custom");
  if (cfg.mechanism == "m1") return FiveBarGeometry::m1();
  if (cfg.mechanism == "m2") return FiveBarGeometry::m2();
  throw UsageError("unknown mechanism '" + cfg.mechanism + "'");
}

std::optional<ModeCombo> resolve_combo(const RunConfig& cfg) {
  if (cfg.working_mode.empty() && cfg.assembly_mode.empty()) return std::nullopt;
  const auto wm = parse_working_mode(cfg.working_mode);
  const auto am = parse_assembly_mode(cfg.assembly_mode);
  if (!wm || !am) throw UsageError("--working-mode and --assembly-mode must be given together");
  return ModeCombo{*wm, *am};
}

int cmd_space(const RunConfig& cfg, std::ostream& out) {
  const FiveBarGeometry g = resolve_geometry(cfg);
  const auto combo = resolve_combo(cfg);
  if (cfg.out.empty()) throw UsageError("--out is required");
  if (cfg.format != "qt" && cfg.format != "svg") throw UsageError("--format must be qt or svg here");
  const BoxClassifier classify = make_classifier(cfg.space, g, combo);
  const BuildOptions options{cfg.jobs};

  QuadtreeModel tree;
  if (!cfg.refine_from.empty()) {
    QuadtreeModel base = deserialize(read_file(cfg.refine_from));
    if (!cfg.box.empty() && !(resolve_box(cfg, g) == base.root_box))
      throw UsageError("--box differs from the root box of --refine-from");
    if (cfg.depth <= base.max_depth) throw UsageError("--depth must exceed the depth of --refine-from");
    tree = refine(base, cfg.depth, classify, options);
  } else {
    tree = build(resolve_box(cfg, g), cfg.depth, classify, options);
  }

  const QuadtreeModel comp = complement_model(tree);
  if (cfg.format == "qt") {
    write_file(cfg.out, serialize(tree));
    write_file(cfg.out + ".comp", serialize(comp));
  } else {
    write_file(cfg.out, render_svg(tree));
    write_file(cfg.out + ".comp", render_svg(comp));
  }
  out << "nodes=" << tree.stats.nodes() << " black=" << tree.stats.black
      << " calls=" << tree.stats.classifier_calls << '\n';
  return kExitOk;
}

int cmd_aspects(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FiveBarGeometry g = resolve_geometry(cfg);
  if (cfg.out.empty()) throw UsageError("--out (output directory) is required");
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create directory '" + cfg.out + "': " + ec.message());
  const fs::path dir(cfg.out);

  std::vector<AspectSet> sets;
  for (const ModeCombo& combo : all_combos())
    sets.push_back(compute_aspects(g, combo, cfg.depth, BuildOptions{cfg.jobs}));

  std::string pairing = "combo,parallel_region,serial_region,witness_x,witness_y,witness_t1,witness_t2,area\n";
  std::string summary =
      "panel,combo,parallel_aspects,serial_aspects,serial_aspects_torus,parallel_fragments,serial_fragments,"
      "parallel_area,serial_area\n";
  for (const auto& s : sets) {
    const std::string panel(1, s.combo.panel());
    for (const char* space : {"workspace", "jointspace"}) {
      const LabeledTree& t = std::string(space) == "workspace" ? s.workspace : s.jointspace;
      const std::string stem = (dir / (panel + "_" + space)).string();
      write_file(stem + ".qt", serialize(t.model));
      write_file(stem + ".labels.csv", labels_csv(t));
      write_file(stem + ".svg", render_svg(t.model, &t.labels));
    }
    for (const auto& p : s.pairing) {
      pairing += s.combo.name() + ',' + std::to_string(p.parallel_aspect) + ',' +
                 std::to_string(p.serial_aspect) + ',' + format_double(p.witness_p.x) + ',' +
                 format_double(p.witness_p.y) + ',' + format_double(p.witness_theta.x) + ',' +
                 format_double(p.witness_theta.y) + ',' + format_double(p.area) + '\n';
    }
    for (const auto& f : s.failures) {
      err << "warning: combo " << s.combo.name() << " parallel aspect " << f.parallel_aspect
          << " unpaired: " << f.reason << '\n';
      pairing += s.combo.name() + ',' + std::to_string(f.parallel_aspect) + ",," +
                 format_double(f.witness_p.x) + ',' + format_double(f.witness_p.y) + ",,," +
                 format_double(s.workspace.aspects[f.parallel_aspect].area) + '\n';
    }
    double parallel_area = 0.0;
    double serial_area = 0.0;
    for (const auto& a : s.workspace.aspects) parallel_area += a.area;
    for (const auto& a : s.jointspace.aspects) serial_area += a.area;
    summary += panel + ',' + s.combo.name() + ',' + std::to_string(s.workspace.aspects.size()) + ',' +
               std::to_string(s.jointspace.aspects.size()) + ',' + std::to_string(torus_aspect_count(s.jointspace)) +
               ',' + std::to_string(s.workspace.fragments.size()) + ',' +
               std::to_string(s.jointspace.fragments.size()) + ',' + format_double(parallel_area) + ',' +
               format_double(serial_area) + '\n';
    out << "combo " << panel << " (" << s.combo.name() << "): parallel=" << s.workspace.aspects.size()
        << " serial=" << s.jointspace.aspects.size() << " serial_torus=" << torus_aspect_count(s.jointspace)
        << " fragments=" << s.workspace.fragments.size() << '/' << s.jointspace.fragments.size() << " paired=" << s.pairing.size()
        << " unpaired=" << s.failures.size() << '\n';
  }

  const AspectReport report = aspect_report(sets);
  std::string overlap = "assembly_mode,working_mode_a,working_mode_b,area\n";
  const WorkingMode wms[4] = {{Sign::Plus, Sign::Plus}, {Sign::Plus, Sign::Minus},
                              {Sign::Minus, Sign::Plus}, {Sign::Minus, Sign::Minus}};
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        overlap += std::string(a == 0 ? "+" : "-") + ',' + to_string(wms[i]) + ',' + to_string(wms[j]) +
                   ',' + format_double(report.overlap[a][i][j]) + '\n';
      }
    }
  }
  std::string region_overlap = "assembly_mode,working_mode_a,aspect_a,working_mode_b,aspect_b,area\n";
  for (const auto& o : report.region_overlaps) {
    region_overlap += to_string(o.am) + ',' + to_string(o.wm_a) + ',' + std::to_string(o.aspect_a) + ',' +
                      to_string(o.wm_b) + ',' + std::to_string(o.aspect_b) + ',' + format_double(o.area) +
                      '\n';
  }
  write_file((dir / "pairing.csv").string(), pairing);
  write_file((dir / "summary.csv").string(), summary);
  write_file((dir / "overlap.csv").string(), overlap);
  write_file((dir / "region_overlap.csv").string(), region_overlap);
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const FiveBarGeometry g = resolve_geometry(cfg);
  std::vector<int> depths = cfg.depths;
  if (depths.empty()) depths = {5, 6, 7, 8, 9, 10};
  for (int d : depths)
    if (d < 1 || d > 14) throw UsageError("--depths entries must be in [1, 14]");
  std::vector<BenchRow> rows;
  for (Space space : {Space::JointSpace, Space::Workspace}) {
    auto r = run_bench(g, cfg.mechanism, space, depths, BuildOptions{cfg.jobs});
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const std::string csv = emit_table(rows);
  if (cfg.out.empty())
    out << csv;
  else
    write_file(cfg.out, csv);
  return kExitOk;
}

int cmd_render(const std::string& input, const RunConfig& cfg, bool show_undetermined, bool labels,
               bool complement) {
  if (cfg.out.empty()) throw UsageError("--out is required");
  QuadtreeModel tree = deserialize(read_file(input));
  if (complement) tree = complement_model(tree);
  RenderStyle style;
  style.show_undetermined = show_undetermined;
  std::optional<RegionLabeling> regions;
  if (labels) regions = label_regions(tree);
  write_file(cfg.out, render_svg(tree, regions ? &*regions : nullptr, style));
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const FiveBarGeometry g = resolve_geometry(cfg);
  const auto combo = resolve_combo(cfg);
  const QuadtreeModel tree =
      build(resolve_box(cfg, g), cfg.depth, make_classifier(cfg.space, g, combo), BuildOptions{cfg.jobs});
  std::vector<Box2> boxes;
  std::vector<double> weights;
  for_each_leaf(tree, [&](const LeafView& leaf) {
    if (leaf.kind != NodeKind::Black) return;
    boxes.push_back(leaf.box);
    weights.push_back(leaf.box.area());
  });
  std::uint64_t failures = 0;
  std::uint64_t drawn = 0;
  if (!boxes.empty()) {
    std::mt19937_64 rng(cfg.seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (; drawn < cfg.samples; ++drawn) {
      const Box2& b = boxes[pick(rng)];
      const Vec2 q{b.x.lo + unit(rng) * b.x.width(), b.y.lo + unit(rng) * b.y.width()};
      const PointClass c = cfg.space == Space::JointSpace ? point_classify_joint(q, g, combo)
                                                          : point_classify_workspace(q, g, combo);
      if (c != PointClass::Valid) ++failures;
    }
  }
  out << "black_leaves=" << boxes.size() << " samples=" << drawn << " failures=" << failures << '\n';
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified singularity-free regions of a five-bar linkage", "quadspect"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string space_text = "jointspace";
  std::string render_input;
  bool show_undetermined = false;
  bool show_labels = false;
  bool render_complement = false;

  auto* jointspace = app.add_subcommand("jointspace", "build the joint-space quadtree");
  auto* workspace = app.add_subcommand("workspace", "build the workspace quadtree");
  for (auto* sub : {jointspace, workspace}) {
    add_mechanism_options(sub, cfg);
    add_mode_options(sub, cfg);
    sub->add_option("--depth", cfg.depth, "maximal depth")->check(CLI::Range(1, 14));
    sub->add_option("--out", cfg.out, "output file; the complement goes to <out>.comp");
    sub->add_option("--format", cfg.format, "qt or svg")->check(CLI::IsMember({"qt", "svg", "csv"}));
    sub->add_option("--refine-from", cfg.refine_from, "continue a previously written tree");
    sub->add_option("--box", cfg.box, "initial box xlo,xhi,ylo,yhi")->delimiter(',');
  }

  auto* aspects = app.add_subcommand("aspects", "serial, parallel and generalized aspects for all 8 mode combos");
  add_mechanism_options(aspects, cfg);
  aspects->add_option("--depth", cfg.depth, "maximal depth")->check(CLI::Range(1, 14));
  aspects->add_option("--out", cfg.out, "output directory");

  auto* bench = app.add_subcommand("bench", "classifier-call counts against grid discretization");
  add_mechanism_options(bench, cfg);
  bench->add_option("--depths", cfg.depths, "comma-separated depths")->delimiter(',');
  bench->add_option("--out", cfg.out, "CSV file (default: standard output)");
  bench->add_option("--format", cfg.format, "csv")->check(CLI::IsMember({"csv"}));

  auto* render = app.add_subcommand("render", "render a quadtree file to SVG");
  render->add_option("input", render_input, "QT1 file")->required();
  render->add_option("--out", cfg.out, "SVG file");
  render->add_option("--format", cfg.format, "svg")->check(CLI::IsMember({"svg"}));
  render->add_flag("--undetermined", show_undetermined, "draw Undetermined leaves in gray");
  render->add_flag("--labels", show_labels, "color Black leaves by connected region");
  render->add_flag("--complement", render_complement, "render the complementary space");

  auto* verify = app.add_subcommand("verify", "sample points in Black leaves and check them pointwise");
  add_mechanism_options(verify, cfg);
  add_mode_options(verify, cfg);
  verify->add_option("--space", space_text, "jointspace or workspace")
      ->check(CLI::IsMember({"jointspace", "workspace"}));
  verify->add_option("--depth", cfg.depth, "maximal depth")->check(CLI::Range(1, 14));
  verify->add_option("--samples", cfg.samples, "number of sampled points");
  verify->add_option("--seed", cfg.seed, "sampling seed");
  verify->add_option("--box", cfg.box, "initial box xlo,xhi,ylo,yhi")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (jointspace->parsed() || workspace->parsed()) {
      cfg.space = jointspace->parsed() ? Space::JointSpace : Space::Workspace;
      return cmd_space(cfg, out);
    }
    if (aspects->parsed()) return cmd_aspects(cfg, out, err);
    if (bench->parsed()) return cmd_bench(cfg, out);
    if (render->parsed()) return cmd_render(render_input, cfg, show_undetermined, show_labels, render_complement);
    if (verify->parsed()) {
      cfg.space = *parse_space(space_text);
      return cmd_verify(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace quadspect::cli
