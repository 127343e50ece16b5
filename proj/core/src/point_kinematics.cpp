// Scalar kinematics built from circle intersections. Deliberately shares no
// formulas with the interval procedures in mechanism.cpp.

#include <algorithm>
#include <cmath>

#include "quadspect/mechanism.hpp"

namespace quadspect {

namespace {

double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }
Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double length(Vec2 v) { return std::hypot(v.x, v.y); }

// Intersections of circle(c0, r0) and circle(c1, r1); the point to the left
// of c0 -> c1 comes first.
std::vector<Vec2> circle_intersections(Vec2 c0, double r0, Vec2 c1, double r1) {
  const Vec2 d = sub(c1, c0);
  const double dist = length(d);
  if (dist == 0.0 || dist > r0 + r1 || dist < std::fabs(r0 - r1)) return {};
  const double along = (dist * dist + r0 * r0 - r1 * r1) / (2.0 * dist);
  const double h = std::sqrt(std::max(0.0, r0 * r0 - along * along));
  const Vec2 e{d.x / dist, d.y / dist};
  const Vec2 base{c0.x + along * e.x, c0.y + along * e.y};
  return {{base.x - h * e.y, base.y + h * e.x}, {base.x + h * e.y, base.y - h * e.x}};
}

Configuration finish(double t1, double t2, Vec2 p, Vec2 b1, Vec2 b2) {
  Configuration c;
  c.theta1 = t1;
  c.theta2 = t2;
  c.p = p;
  c.b1 = b1;
  c.b2 = b2;
  c.theta3 = std::atan2(p.y - b1.y, p.x - b1.x);
  c.theta4 = std::atan2(p.y - b2.y, p.x - b2.x);
  return c;
}

bool near(double value, double target, double scale) {
  return std::fabs(value - target) <= kPointTolerance * scale;
}

}  // namespace

std::vector<Configuration> solve_dkp(Vec2 theta, const FiveBarGeometry& g) {
  const Vec2 b1{g.l1() * std::cos(theta.x), g.l1() * std::sin(theta.x)};
  const Vec2 b2{g.l0() + g.l2() * std::cos(theta.y), g.l2() * std::sin(theta.y)};
  std::vector<Configuration> out;
  for (Vec2 p : circle_intersections(b1, g.l3(), b2, g.l4()))
    out.push_back(finish(theta.x, theta.y, p, b1, b2));
  return out;
}

std::vector<Configuration> solve_ikp(Vec2 p, const FiveBarGeometry& g) {
  const auto elbows1 = circle_intersections(g.a1(), g.l1(), p, g.l3());
  const auto elbows2 = circle_intersections(g.a2(), g.l2(), p, g.l4());
  std::vector<Configuration> out;
  for (Vec2 b1 : elbows1) {
    for (Vec2 b2 : elbows2) {
      const double t1 = std::atan2(b1.y, b1.x);
      const double t2 = std::atan2(b2.y, b2.x - g.l0());
      out.push_back(finish(t1, t2, p, b1, b2));
    }
  }
  return out;
}

std::optional<AssemblyMode> assembly_mode_of(const Configuration& c, const FiveBarGeometry& g) {
  const double t = cross(sub(c.b1, c.p), sub(c.b2, c.p));
  if (std::fabs(t) <= kPointTolerance * g.l3() * g.l4()) return std::nullopt;
  return AssemblyMode{t > 0.0 ? Sign::Plus : Sign::Minus};
}

std::optional<WorkingMode> working_mode_of(const Configuration& c, const FiveBarGeometry& g) {
  const double u = cross(sub(c.b1, g.a1()), sub(c.p, c.b1));
  const double v = cross(sub(c.b2, g.a2()), sub(c.p, c.b2));
  if (std::fabs(u) <= kPointTolerance * g.l1() * g.l3()) return std::nullopt;
  if (std::fabs(v) <= kPointTolerance * g.l2() * g.l4()) return std::nullopt;
  return WorkingMode{u > 0.0 ? Sign::Plus : Sign::Minus, v > 0.0 ? Sign::Plus : Sign::Minus};
}

PointClass point_classify_joint(Vec2 theta, const FiveBarGeometry& g, std::optional<ModeCombo> combo) {
  const Vec2 b1{g.l1() * std::cos(theta.x), g.l1() * std::sin(theta.x)};
  const Vec2 b2{g.l0() + g.l2() * std::cos(theta.y), g.l2() * std::sin(theta.y)};
  const double d = length(sub(b2, b1));
  const double outer = g.l3() + g.l4();
  const double inner = std::fabs(g.l3() - g.l4());
  const double scale = outer;

  if (d <= kPointTolerance * scale) return PointClass::Singular;
  if (d > outer + kPointTolerance * scale || d < inner - kPointTolerance * scale)
    return PointClass::Invalid;
  if (near(d, outer, scale) || near(d, inner, scale)) return PointClass::Singular;

  const auto configs = solve_dkp(theta, g);
  if (configs.size() != 2) return PointClass::Singular;
  if (!combo) {
    for (const auto& c : configs)
      if (!assembly_mode_of(c, g)) return PointClass::Singular;
    return PointClass::Valid;
  }
  for (const auto& c : configs) {
    const auto am = assembly_mode_of(c, g);
    if (!am) return PointClass::Singular;
    if (*am != combo->am) continue;
    const auto wm = working_mode_of(c, g);
    if (!wm) return PointClass::Singular;
    return *wm == combo->wm ? PointClass::Valid : PointClass::Invalid;
  }
  return PointClass::Singular;
}

PointClass point_classify_workspace(Vec2 p, const FiveBarGeometry& g, std::optional<ModeCombo> combo) {
  const double m1 = length(sub(p, g.a1()));
  const double m2 = length(sub(p, g.a2()));
  const double outer1 = g.l1() + g.l3();
  const double outer2 = g.l2() + g.l4();
  const double inner1 = std::fabs(g.l1() - g.l3());
  const double inner2 = std::fabs(g.l2() - g.l4());

  if (m1 > outer1 + kPointTolerance * outer1 || m2 > outer2 + kPointTolerance * outer2 ||
      m1 < inner1 - kPointTolerance * outer1 || m2 < inner2 - kPointTolerance * outer2)
    return PointClass::Invalid;
  if (near(m1, 0.0, outer1) || near(m2, 0.0, outer2) || near(m1, outer1, outer1) ||
      near(m2, outer2, outer2) || near(m1, inner1, outer1) || near(m2, inner2, outer2))
    return PointClass::Singular;

  const auto configs = solve_ikp(p, g);
  if (configs.size() != 4) return PointClass::Singular;
  for (const auto& c : configs)
    if (!working_mode_of(c, g)) return PointClass::Singular;
  if (!combo) return PointClass::Valid;
  for (const auto& c : configs) {
    if (*working_mode_of(c, g) != combo->wm) continue;
    const auto am = assembly_mode_of(c, g);
    if (!am) return PointClass::Singular;
    return *am == combo->am ? PointClass::Valid : PointClass::Invalid;
  }
  return PointClass::Singular;
}

}  // namespace quadspect
