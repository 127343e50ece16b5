#include "quadspect/mechanism.hpp"

#include <cmath>
#include <stdexcept>

namespace quadspect {

namespace {

const Interval kPi{kPiLo, kPiHi};

double sign_value(Sign s) { return static_cast<double>(static_cast<int>(s)); }

// Both operands enclose the same true set, so their intersection does too.
Interval tighten(const Interval& a, const Interval& b) {
  auto r = intersect(a, b);
  if (!r) throw std::logic_error("disjoint enclosures of the same quantity: " + to_string(a) +
                                 " vs " + to_string(b));
  return *r;
}

bool certified(const Interval& v, Sign s) { return s == Sign::Plus ? v.positive() : v.negative(); }

// Every point has the opposite sign or sits on zero.
bool certainly_not(const Interval& v, Sign s) {
  return s == Sign::Plus ? v.hi <= 0.0 : v.lo >= 0.0;
}

IVec2 polar(const Interval& angle, double length) {
  return {length * cos(angle), length * sin(angle)};
}

struct DkpEnclosure {
  Ternary reach = Ternary::Indeterminate;  // assembly without parallel singularity
  bool clamped = false;
  std::vector<DkpBranch> branches;
};

DkpEnclosure dkp_enclose(const Box2& joints, const FiveBarGeometry& g) {
  DkpEnclosure out;
  const auto [b1, b2] = elbow_positions(joints, g);
  const Interval dx = b2.x - b1.x;
  const Interval dy = b2.y - b1.y;
  const Interval dist = norm2(dx, dy);
  const double outer = g.l3() + g.l4();
  const double inner = std::fabs(g.l3() - g.l4());

  if (dist.lo > outer || dist.hi < inner) {
    out.reach = Ternary::Invalid;
    return out;
  }
  // B1 and B2 may coincide: P can spin freely about them.
  if (dist.lo <= 0.0) return out;

  AcosResult alpha;
  AcosResult gamma;
  try {
    alpha = acos(law_of_cosines(dist, g.l3(), g.l4()));
    gamma = acos(law_of_cosines(dist, g.l4(), g.l3()));
  } catch (const DomainError&) {
    out.reach = Ternary::Invalid;
    return out;
  }
  const Atan2Result beta = atan2(dy, dx);
  if (beta.contains_origin) return out;
  out.clamped = alpha.clamped || gamma.clamped;

  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const double sv = sign_value(s);
    DkpBranch br;
    br.mode = AssemblyMode{s};
    br.theta3 = beta.angle + sv * alpha.angle;
    br.theta4 = beta.angle + kPi - sv * gamma.angle;
    const IVec2 via1 = polar(br.theta3, g.l3());
    const IVec2 via2 = polar(br.theta4, g.l4());
    br.p.x = tighten(b1.x + via1.x, b2.x + via2.x);
    br.p.y = tighten(b1.y + via1.y, b2.y + via2.y);
    // det(A) = s * |B1B2| * L3 * sin(alpha) on this branch.
    br.det_a = tighten(assembly_sign(br.p, b1, b2), sv * g.l3() * dist * sin(alpha.angle));
    out.branches.push_back(br);
  }

  const bool strict = !out.clamped && dist.lo > inner && dist.hi < outer;
  bool nonsingular = strict;
  for (const auto& br : out.branches) nonsingular = nonsingular && certified(br.det_a, br.mode.sign);
  out.reach = nonsingular ? Ternary::Valid : Ternary::Indeterminate;
  return out;
}

struct IkpEnclosure {
  Ternary reach = Ternary::Indeterminate;
  std::vector<IkpBranch> branches;
};

IkpEnclosure ikp_enclose(const Box2& position, const FiveBarGeometry& g) {
  IkpEnclosure out;
  const Interval& x = position.x;
  const Interval& y = position.y;
  const Interval to_a2 = Interval(g.l0()) - x;  // L0 - Px
  const Interval m1 = norm2(x, y);
  const Interval m2 = norm2(to_a2, y);
  const double outer1 = g.l1() + g.l3();
  const double outer2 = g.l2() + g.l4();
  const double inner1 = std::fabs(g.l1() - g.l3());
  const double inner2 = std::fabs(g.l2() - g.l4());

  if (m1.lo > outer1 || m2.lo > outer2 || m1.hi < inner1 || m2.hi < inner2) {
    out.reach = Ternary::Invalid;
    return out;
  }
  if (m1.lo <= 0.0 || m2.lo <= 0.0) return out;

  AcosResult beta1;
  AcosResult beta2;
  AcosResult gamma1;
  AcosResult gamma2;
  try {
    beta1 = acos(law_of_cosines(m1, g.l1(), g.l3()));
    beta2 = acos(law_of_cosines(m2, g.l2(), g.l4()));
    gamma1 = acos(law_of_cosines(m1, g.l3(), g.l1()));
    gamma2 = acos(law_of_cosines(m2, g.l4(), g.l2()));
  } catch (const DomainError&) {
    out.reach = Ternary::Invalid;
    return out;
  }
  const bool clamped = beta1.clamped || beta2.clamped || gamma1.clamped || gamma2.clamped;
  const Interval alpha1 = atan2(y, x).angle;
  const Interval alpha2 = atan2(y, to_a2).angle;
  const Interval dir2 = kPi - alpha2;  // direction of A2 -> P

  const Interval u_mag = g.l1() * m1 * sin(beta1.angle);
  const Interval v_mag = g.l2() * m2 * sin(beta2.angle);
  const Interval u_mag_alt = g.l1() * g.l3() * sin(beta1.angle + gamma1.angle);
  const Interval v_mag_alt = g.l2() * g.l4() * sin(beta2.angle + gamma2.angle);

  for (Sign s1 : {Sign::Plus, Sign::Minus}) {
    for (Sign s2 : {Sign::Plus, Sign::Minus}) {
      const double sv1 = sign_value(s1);
      const double sv2 = sign_value(s2);
      IkpBranch br;
      br.mode = WorkingMode{s1, s2};
      // u_z > 0 when the elbow sits clockwise of A1P.
      br.theta1 = alpha1 - sv1 * beta1.angle;
      br.theta2 = dir2 - sv2 * beta2.angle;
      br.theta3 = alpha1 + sv1 * gamma1.angle;
      br.theta4 = dir2 + sv2 * gamma2.angle;

      const IVec2 e1 = polar(br.theta1, g.l1());
      const IVec2 e2 = polar(br.theta2, g.l2());
      const Interval u_direct = cross_z(e1.x, e1.y, x - e1.x, y - e1.y);
      const Interval v_direct = cross_z(e2.x, e2.y, x - (e2.x + g.l0()), y - e2.y);
      br.u_z = tighten(tighten(u_direct, sv1 * u_mag), sv1 * u_mag_alt);
      br.v_z = tighten(tighten(v_direct, sv2 * v_mag), sv2 * v_mag_alt);
      out.branches.push_back(br);
    }
  }

  const bool strict = !clamped && m1.lo > inner1 && m2.lo > inner2 && m1.hi < outer1 &&
                      m2.hi < outer2;
  bool nonsingular = strict;
  for (const auto& br : out.branches)
    nonsingular = nonsingular && certified(br.u_z, br.mode.leg1) && certified(br.v_z, br.mode.leg2);
  out.reach = nonsingular ? Ternary::Valid : Ternary::Indeterminate;
  return out;
}

}  // namespace

FiveBarGeometry::FiveBarGeometry(double l0, double l1, double l2, double l3, double l4)
    : lengths_{l0, l1, l2, l3, l4} {
  for (double l : lengths_) {
    if (!(l > 0.0) || !std::isfinite(l))
      throw std::invalid_argument("five-bar lengths must be positive and finite");
  }
}

FiveBarGeometry FiveBarGeometry::m1() { return {9.0, 8.0, 5.0, 5.0, 8.0}; }
FiveBarGeometry FiveBarGeometry::m2() { return {2.55, 2.3, 2.3, 2.3, 2.3}; }

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

std::string to_string(AssemblyMode am) { return std::string(1, sign_char(am.sign)); }

std::string to_string(WorkingMode wm) {
  return std::string{sign_char(wm.leg1), sign_char(wm.leg2)};
}

namespace {
std::optional<Sign> parse_sign(char c) {
  if (c == '+') return Sign::Plus;
  if (c == '-') return Sign::Minus;
  return std::nullopt;
}
}  // namespace

std::optional<AssemblyMode> parse_assembly_mode(const std::string& text) {
  if (text.size() != 1) return std::nullopt;
  auto s = parse_sign(text[0]);
  if (!s) return std::nullopt;
  return AssemblyMode{*s};
}

std::optional<WorkingMode> parse_working_mode(const std::string& text) {
  if (text.size() != 2) return std::nullopt;
  auto s1 = parse_sign(text[0]);
  auto s2 = parse_sign(text[1]);
  if (!s1 || !s2) return std::nullopt;
  return WorkingMode{*s1, *s2};
}

ElbowPositions elbow_positions(const Box2& joints, const FiveBarGeometry& g) {
  ElbowPositions e;
  e.b1 = polar(joints.x, g.l1());
  const IVec2 leg2 = polar(joints.y, g.l2());
  e.b2 = {leg2.x + g.l0(), leg2.y};
  return e;
}

const DkpBranch* DkpResult::branch(AssemblyMode mode) const {
  for (const auto& s : solutions)
    if (s.mode == mode) return &s;
  return nullptr;
}

const IkpBranch* IkpResult::branch(WorkingMode mode) const {
  for (const auto& s : solutions)
    if (s.mode == mode) return &s;
  return nullptr;
}

Interval assembly_sign(const IVec2& p, const IVec2& b1, const IVec2& b2) {
  return cross_z(b1.x - p.x, b1.y - p.y, b2.x - p.x, b2.y - p.y);
}

WorkingSigns working_sign(const IVec2& p, const IVec2& b1, const IVec2& b2, const FiveBarGeometry& g) {
  const Interval b2x_rel = b2.x - g.l0();
  return {cross_z(b1.x, b1.y, p.x - b1.x, p.y - b1.y),
          cross_z(b2x_rel, b2.y, p.x - b2.x, p.y - b2.y)};
}

WorkingSigns working_sign(const Box2& joints, const DkpBranch& branch, const FiveBarGeometry& g) {
  const IVec2 e1 = polar(joints.x, g.l1());
  const IVec2 e2 = polar(joints.y, g.l2());
  const IVec2 d1 = polar(branch.theta3, g.l3());
  const IVec2 d2 = polar(branch.theta4, g.l4());
  WorkingSigns w;
  w.u_z = tighten(cross_z(e1.x, e1.y, d1.x, d1.y),
                  g.l1() * g.l3() * sin(branch.theta3 - joints.x));
  w.v_z = tighten(cross_z(e2.x, e2.y, d2.x, d2.y),
                  g.l2() * g.l4() * sin(branch.theta4 - joints.y));
  return w;
}

DkpResult dkp_box(const Box2& joints, const FiveBarGeometry& g, AssemblyMode mode) {
  DkpEnclosure enc = dkp_enclose(joints, g);
  DkpResult r;
  r.solutions = std::move(enc.branches);
  if (enc.reach == Ternary::Invalid) {
    r.status = Ternary::Invalid;
    return r;
  }
  const DkpBranch* br = r.branch(mode);
  if (br && certainly_not(br->det_a, mode.sign)) {
    r.status = Ternary::Invalid;
  } else if (enc.reach == Ternary::Valid && br && certified(br->det_a, mode.sign)) {
    r.status = Ternary::Valid;
  } else {
    r.status = Ternary::Indeterminate;
  }
  return r;
}

DkpResult dkp_box(const Box2& joints, const FiveBarGeometry& g) {
  DkpEnclosure enc = dkp_enclose(joints, g);
  return {enc.reach, std::move(enc.branches)};
}

IkpResult ikp_box(const Box2& position, const FiveBarGeometry& g, WorkingMode mode) {
  IkpEnclosure enc = ikp_enclose(position, g);
  IkpResult r;
  r.solutions = std::move(enc.branches);
  if (enc.reach == Ternary::Invalid) {
    r.status = Ternary::Invalid;
    return r;
  }
  const IkpBranch* br = r.branch(mode);
  if (br && (certainly_not(br->u_z, mode.leg1) || certainly_not(br->v_z, mode.leg2))) {
    r.status = Ternary::Invalid;
  } else if (enc.reach == Ternary::Valid && br && certified(br->u_z, mode.leg1) &&
             certified(br->v_z, mode.leg2)) {
    r.status = Ternary::Valid;
  } else {
    r.status = Ternary::Indeterminate;
  }
  return r;
}

IkpResult ikp_box(const Box2& position, const FiveBarGeometry& g) {
  IkpEnclosure enc = ikp_enclose(position, g);
  return {enc.reach, std::move(enc.branches)};
}

Interval det_a(const Box2& position, const IkpBranch& branch, const FiveBarGeometry& g) {
  const IVec2 e1 = polar(branch.theta1, g.l1());
  const IVec2 e2 = polar(branch.theta2, g.l2());
  const IVec2 p{position.x, position.y};
  const IVec2 b2{e2.x + g.l0(), e2.y};
  return tighten(assembly_sign(p, e1, b2),
                 g.l3() * g.l4() * sin(branch.theta4 - branch.theta3));
}

char ModeCombo::panel() const {
  const int index = (wm.leg1 == Sign::Minus ? 4 : 0) + (wm.leg2 == Sign::Minus ? 2 : 0) +
                    (am.sign == Sign::Minus ? 1 : 0);
  return static_cast<char>('a' + index);
}

std::string ModeCombo::name() const { return to_string(wm) + "/" + to_string(am); }

std::array<ModeCombo, 8> all_combos() {
  std::array<ModeCombo, 8> out;
  for (int i = 0; i < 8; ++i) {
    out[i].wm.leg1 = (i & 4) ? Sign::Minus : Sign::Plus;
    out[i].wm.leg2 = (i & 2) ? Sign::Minus : Sign::Plus;
    out[i].am.sign = (i & 1) ? Sign::Minus : Sign::Plus;
  }
  return out;
}

double wrap_angle(double a) {
  constexpr double two_pi = 6.283185307179586;
  double r = std::remainder(a, two_pi);
  if (r <= -kPiLo) r += two_pi;
  return r;
}

}  // namespace quadspect
