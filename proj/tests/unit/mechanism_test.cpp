#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "quadspect/aspects.hpp"
#include "quadspect/mechanism.hpp"

using namespace quadspect;

namespace {

constexpr double kPi = std::numbers::pi;

Box2 point_box(double x, double y) { return Box2{Interval(x), Interval(y)}; }

Box2 around(Vec2 c, double half) {
  return Box2{Interval{c.x - half, c.x + half}, Interval{c.y - half, c.y + half}};
}

bool encloses(const IVec2& v, double x, double y) { return v.x.contains(x) && v.y.contains(y); }

// Scalar law-of-cosines solve for the beta + alpha branch.
Vec2 upper_end_point(const FiveBarGeometry& g, Vec2 theta) {
  const Vec2 b1{g.l1() * std::cos(theta.x), g.l1() * std::sin(theta.x)};
  const Vec2 b2{g.l0() + g.l2() * std::cos(theta.y), g.l2() * std::sin(theta.y)};
  const double l = std::hypot(b2.x - b1.x, b2.y - b1.y);
  const double alpha = std::acos((l * l + g.l3() * g.l3() - g.l4() * g.l4()) / (2 * g.l3() * l));
  const double beta = std::atan2(b2.y - b1.y, b2.x - b1.x);
  return {b1.x + g.l3() * std::cos(beta + alpha), b1.y + g.l3() * std::sin(beta + alpha)};
}

}  // namespace

TEST_SUITE("mechanism") {

TEST_CASE("built-in geometries") {
  const auto m1 = FiveBarGeometry::m1();
  CHECK(m1.lengths() == std::array<double, 5>{9, 8, 5, 5, 8});
  const auto m2 = FiveBarGeometry::m2();
  CHECK(m2.lengths() == std::array<double, 5>{2.55, 2.3, 2.3, 2.3, 2.3});
  CHECK(m1.a2().x == 9.0);
  CHECK_THROWS_AS(FiveBarGeometry(1, 1, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(FiveBarGeometry(1, 1, -1, 1, 1), std::invalid_argument);
}

TEST_CASE("mode parsing and panel order") {
  CHECK(parse_working_mode("+-") == WorkingMode{Sign::Plus, Sign::Minus});
  CHECK_FALSE(parse_working_mode("+").has_value());
  CHECK(parse_assembly_mode("-") == AssemblyMode{Sign::Minus});
  CHECK_FALSE(parse_assembly_mode("x").has_value());
  const auto combos = all_combos();
  std::string panels;
  for (const auto& c : combos) panels += c.panel();
  CHECK(panels == "abcdefgh");
  CHECK(combos[0].name() == "++/+");
  CHECK(combos[3].name() == "+-/-");
  CHECK(combos[7].name() == "--/-");
}

TEST_CASE("elbow positions") {
  const auto g = FiveBarGeometry::m1();
  const auto e = elbow_positions(point_box(kPi / 2, kPi / 2), g);
  CHECK(encloses(e.b1, 8 * std::cos(kPi / 2), 8.0));
  CHECK(encloses(e.b2, 9 + 5 * std::cos(kPi / 2), 5.0));
  CHECK(e.b1.x.width() < 1e-14);
  const auto z = elbow_positions(point_box(0.0, 1.0), FiveBarGeometry::m2());
  CHECK(encloses(z.b1, 2.3, 0.0));
  const auto full = elbow_positions(Box2{full_angle(), Interval(0.0)}, g);
  CHECK(full.b1.x.contains(Interval{-8, 8}));
  CHECK(full.b1.y.contains(Interval{-8, 8}));
  CHECK(full.b1.x.hi < 8 + 1e-12);
}

TEST_CASE("dkp at theta1 = theta2 = pi/2 on M1") {
  const auto g = FiveBarGeometry::m1();
  const DkpResult r = dkp_box(point_box(kPi / 2, kPi / 2), g);
  REQUIRE(r.status == Ternary::Valid);
  REQUIRE(r.solutions.size() == 2);
  const DkpBranch* up = r.branch(AssemblyMode{Sign::Plus});
  REQUIRE(up);
  const Vec2 expect = upper_end_point(g, {kPi / 2, kPi / 2});
  CHECK(expect.x == doctest::Approx(3.884).epsilon(1e-3));
  CHECK(expect.y == doctest::Approx(11.149).epsilon(1e-3));
  CHECK(encloses(up->p, expect.x, expect.y));
  // residual oracle on both branches
  for (const auto& br : r.solutions) {
    const double px = br.p.x.mid(), py = br.p.y.mid();
    CHECK(std::hypot(px - 0.0, py - 8.0) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(std::hypot(px - 9.0, py - 5.0) == doctest::Approx(8.0).epsilon(1e-9));
  }
  // recorded: the beta + alpha branch has det(A) > 0
  CHECK(up->det_a.positive());
  CHECK(r.branch(AssemblyMode{Sign::Minus})->det_a.negative());
}

TEST_CASE("dkp rejects boxes that cannot close") {
  const auto g = FiveBarGeometry::m1();
  // b1 near (-8, 0), b2 near (14, 0): |b1 - b2| ~ 22 > L3 + L4
  const Box2 apart{Interval{kPi - 0.01, kPi}, Interval{0.0, 0.01}};
  const auto e = elbow_positions(apart, g);
  CHECK((e.b2.x - e.b1.x).lo > 13.0);
  CHECK(dkp_box(apart, g).status == Ternary::Invalid);
  for (const auto& c : all_combos()) CHECK(jointspace_classifier(c, g)(apart) == Ternary::Invalid);
  // b1 near (8, 0), b2 near (4, 0): |b1 - b2| ~ 4 lies in [3, 13], so it assembles
  const Box2 near{Interval{0.0, 0.01}, Interval{kPi - 0.01, kPi}};
  CHECK(dkp_box(near, g).status != Ternary::Invalid);
}

TEST_CASE("coincident elbows are never certified") {
  const auto g = FiveBarGeometry::m2();
  const auto stars = testing::coincident_elbows(g);
  REQUIRE(stars.size() == 2);
  // cos theta1 = L0 / (2 L1) for equal proximal links
  CHECK(std::cos(stars[0].x) == doctest::Approx(2.55 / 4.6));
  CHECK(stars[0].y == doctest::Approx(kPi - stars[0].x));
  for (const Vec2& t : stars) {
    const auto e = elbow_positions(point_box(t.x, t.y), g);
    CHECK(std::fabs(e.b1.x.mid() - e.b2.x.mid()) < 1e-12);
    CHECK(dkp_box(point_box(t.x, t.y), g).status == Ternary::Indeterminate);
    CHECK(point_classify_joint(t, g) == PointClass::Singular);
    for (int d = 0; d <= 20; ++d) {
      const double half = kPi / std::ldexp(1.0, d);
      const Box2 b = around(t, half);
      CHECK(dkp_box(b, g).status != Ternary::Valid);
      for (const auto& c : all_combos()) CHECK(jointspace_classifier(c, g)(b) != Ternary::Valid);
    }
  }
}

TEST_CASE("assembly sign") {
  const IVec2 p{Interval(0.0), Interval(0.0)};
  const IVec2 b1{Interval(0.0), Interval(1.0)};
  const IVec2 b2{Interval(1.0), Interval(0.0)};
  CHECK(assembly_sign(p, b1, b2).negative());
  const IVec2 mid{Interval(0.5), Interval(0.5)};
  CHECK(assembly_sign(mid, b1, b2).contains_zero());
}

TEST_CASE("ikp at p = (4.5, 6) on M1") {
  const auto g = FiveBarGeometry::m1();
  const Interval m1 = norm2(Interval(4.5), Interval(6.0));
  CHECK(m1.contains(7.5));
  CHECK(law_of_cosines(m1, g.l1(), g.l3()).contains(0.79375));
  const IkpResult r = ikp_box(point_box(4.5, 6.0), g);
  REQUIRE(r.status == Ternary::Valid);
  REQUIRE(r.solutions.size() == 4);
  std::set<double> theta1;
  for (const auto& br : r.solutions) theta1.insert(std::round(br.theta1.mid() * 1e4) / 1e4);
  CHECK(theta1.size() == 2);
  CHECK(*theta1.begin() == doctest::Approx(0.2732).epsilon(1e-3));
  CHECK(*theta1.rbegin() == doctest::Approx(1.5814).epsilon(1e-3));
  for (const auto& br : r.solutions) {
    const double t1 = br.theta1.mid();
    const double b1x = 8 * std::cos(t1), b1y = 8 * std::sin(t1);
    CHECK(std::hypot(4.5 - b1x, 6.0 - b1y) == doctest::Approx(5.0).epsilon(1e-9));
    const double t2 = br.theta2.mid();
    const double b2x = 9 + 5 * std::cos(t2), b2y = 5 * std::sin(t2);
    CHECK(std::hypot(4.5 - b2x, 6.0 - b2y) == doctest::Approx(8.0).epsilon(1e-9));
  }
  for (const auto& wm : {WorkingMode{Sign::Plus, Sign::Plus}, WorkingMode{Sign::Minus, Sign::Minus}})
    CHECK(ikp_box(point_box(4.5, 6.0), g, wm).status == Ternary::Valid);
  // recorded: the elbow-up leg 1 solution (larger theta1) has u_z < 0
  for (const auto& br : r.solutions) {
    if (br.theta1.mid() > 1.0) CHECK(br.u_z.negative());
    else CHECK(br.u_z.positive());
  }
}

TEST_CASE("ikp rejects unreachable points and the point hole") {
  const auto g = FiveBarGeometry::m1();
  CHECK(ikp_box(point_box(50.0, 0.0), g).status == Ternary::Invalid);
  const auto m2 = FiveBarGeometry::m2();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-9, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Box2 b{Interval{-u(rng), u(rng)}, Interval{-u(rng), u(rng)}};
    REQUIRE(ikp_box(b, m2).status != Ternary::Valid);
    for (const auto& c : all_combos()) REQUIRE(workspace_classifier(c, m2)(b) != Ternary::Valid);
  }
  CHECK(ikp_box(point_box(0.0, 0.0), m2).status != Ternary::Valid);
}

TEST_CASE("working signs") {
  const auto g = FiveBarGeometry::m1();
  // leg 1 stretched: a1, b1, p collinear
  const IVec2 p{Interval(13.0), Interval(0.0)};
  const IVec2 b1{Interval(8.0), Interval(0.0)};
  const IVec2 b2{Interval(9.0), Interval(5.0)};
  CHECK(working_sign(p, b1, b2, g).u_z.contains_zero());
  // reflection of b1 across the line a1 -> p flips the sign
  const double t1 = 1.5814;
  const IVec2 q{Interval(4.5), Interval(6.0)};
  const IVec2 up{Interval(8 * std::cos(t1)), Interval(8 * std::sin(t1))};
  const double ang = std::atan2(6.0, 4.5);
  const double r = 2 * ang - t1;
  const IVec2 down{Interval(8 * std::cos(r)), Interval(8 * std::sin(r))};
  const Interval su = working_sign(q, up, b2, g).u_z;
  const Interval sd = working_sign(q, down, b2, g).u_z;
  CHECK(su.negative());
  CHECK(sd.positive());
}

TEST_CASE("point classifiers") {
  const auto g = FiveBarGeometry::m1();
  CHECK(point_classify_workspace({13.0, 0.0}, g) == PointClass::Singular);
  CHECK(point_classify_workspace({3.0, 0.0}, g) == PointClass::Singular);
  CHECK(point_classify_workspace({50.0, 0.0}, g) == PointClass::Invalid);
  CHECK(point_classify_workspace({4.5, 6.0}, g) == PointClass::Valid);
  const auto m2 = FiveBarGeometry::m2();
  CHECK(point_classify_workspace({0.0, 0.0}, m2) == PointClass::Singular);
  for (const Vec2& t : testing::coincident_elbows(m2)) CHECK(point_classify_joint(t, m2) == PointClass::Singular);
  const Box2 small = around({4.5, 6.0}, 0.01);
  REQUIRE(ikp_box(small, g).status == Ternary::Valid);
  CHECK(point_classify_workspace({small.x.mid(), small.y.mid()}, g) == PointClass::Valid);
}

TEST_CASE("small box around (4.5, 6) is certified for each of its four combos") {
  const auto g = FiveBarGeometry::m1();
  const Box2 small = around({4.5, 6.0}, 0.01);
  int certified = 0;
  for (const auto& c : solve_ikp({4.5, 6.0}, g)) {
    const auto wm = working_mode_of(c, g);
    const auto am = assembly_mode_of(c, g);
    REQUIRE(wm);
    REQUIRE(am);
    CHECK(workspace_classifier(ModeCombo{*wm, *am}, g)(small) == Ternary::Valid);
    const AssemblyMode other{am->sign == Sign::Plus ? Sign::Minus : Sign::Plus};
    CHECK(workspace_classifier(ModeCombo{*wm, other}, g)(small) == Ternary::Invalid);
    ++certified;
  }
  CHECK(certified == 4);
}

TEST_CASE("four distinct working modes at nonsingular workspace points") {
  for (const auto& g : {FiveBarGeometry::m1(), FiveBarGeometry::m2()}) {
    std::mt19937_64 rng(17);
    const double r = g.l1() + g.l3();
    std::uniform_real_distribution<double> u(-r, r);
    int checked = 0;
    while (checked < 300) {
      const Vec2 p{u(rng), u(rng)};
      if (point_classify_workspace(p, g) != PointClass::Valid) continue;
      ++checked;
      const IkpResult ikp = ikp_box(point_box(p.x, p.y), g);
      REQUIRE(ikp.status == Ternary::Valid);
      std::set<std::string> modes;
      for (const auto& br : ikp.solutions) modes.insert(to_string(br.mode));
      CHECK(modes.size() == 4);
      std::set<std::string> scalar;
      for (const auto& c : solve_ikp(p, g)) scalar.insert(to_string(*working_mode_of(c, g)));
      CHECK(scalar == modes);
    }
  }
}

TEST_CASE("dkp residuals at random joint points") {
  for (const auto& g : {FiveBarGeometry::m1(), FiveBarGeometry::m2()}) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    int n = 0;
    while (n < 500) {
      const Vec2 t{a(rng), a(rng)};
      const DkpResult r = dkp_box(point_box(t.x, t.y), g);
      if (r.status != Ternary::Valid) continue;
      ++n;
      const auto e = elbow_positions(point_box(t.x, t.y), g);
      for (const auto& br : r.solutions) {
        const double px = br.p.x.mid(), py = br.p.y.mid();
        REQUIRE(std::hypot(px - e.b1.x.mid(), py - e.b1.y.mid()) == doctest::Approx(g.l3()).epsilon(1e-6));
        REQUIRE(std::hypot(px - e.b2.x.mid(), py - e.b2.y.mid()) == doctest::Approx(g.l4()).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("ikp of dkp round trip") {
  for (const auto& g : {FiveBarGeometry::m1(), FiveBarGeometry::m2()}) {
    const auto rt = testing::ikp_dkp_round_trip(g, 41, 300, 1e-6);
    INFO(rt.first_mismatch);
    CHECK(rt.mismatches == 0);
    CHECK(rt.max_error < 1e-9);
  }
}

TEST_CASE("classifier soundness on random boxes") {
  for (const auto& g : {FiveBarGeometry::m1(), FiveBarGeometry::m2()}) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> depth(2, 9);
    for (const Space space : {Space::JointSpace, Space::Workspace}) {
      const Box2 root = default_box(space, g);
      for (const auto& combo : all_combos()) {
        const BoxClassifier classify = make_classifier(space, g, combo);
        int valid = 0, invalid = 0;
        for (int trial = 0; trial < 200; ++trial) {
          const double side = root.x.width() / std::ldexp(1.0, depth(rng));
          const double x0 = root.x.lo + u(rng) * (root.x.width() - side);
          const double y0 = root.y.lo + u(rng) * (root.y.width() - side);
          const Box2 b{Interval{x0, x0 + side}, Interval{y0, y0 + side}};
          const Ternary t = classify(b);
          if (t == Ternary::Indeterminate) continue;
          (t == Ternary::Valid ? valid : invalid)++;
          for (int s = 0; s < 1000; ++s) {
            const Vec2 q{x0 + u(rng) * side, y0 + u(rng) * side};
            const PointClass pc = space == Space::JointSpace ? point_classify_joint(q, g, combo)
                                                             : point_classify_workspace(q, g, combo);
            if (t == Ternary::Valid) REQUIRE(pc == PointClass::Valid);
            else REQUIRE(pc != PointClass::Valid);
          }
        }
        CHECK(valid > 0);
        CHECK(invalid > 0);
      }
    }
  }
}

TEST_CASE("shrinking boxes around a valid point become certified") {
  const auto g = FiveBarGeometry::m2();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  int n = 0;
  while (n < 50) {
    const Vec2 t{a(rng), a(rng)};
    if (point_classify_joint(t, g) != PointClass::Valid) continue;
    ++n;
    bool reached = false;
    for (int d = 1; d < 45 && !reached; ++d) reached = dkp_box(around(t, std::ldexp(1.0, -d)), g).status == Ternary::Valid;
    CHECK(reached);
  }
}

TEST_CASE("wrap_angle") {
  CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(wrap_angle(-kPi / 4) == doctest::Approx(-kPi / 4));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * kPi));
}

}  // TEST_SUITE
