#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadspect/interval.hpp"

namespace quadspect {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Interval-valued planar vector.
struct IVec2 {
  Interval x;
  Interval y;
};

/// Five-bar linkage. Base joints sit at A1 = (0, 0) and A2 = (L0, 0);
/// leg i is a proximal link (L1 or L2) followed by a distal link (L3 or L4)
/// meeting at the end point P.
class FiveBarGeometry {
 public:
  /// Throws std::invalid_argument unless every length is positive and finite.
  FiveBarGeometry(double l0, double l1, double l2, double l3, double l4);

  static FiveBarGeometry m1();
  static FiveBarGeometry m2();

  double l0() const { return lengths_[0]; }
  double l1() const { return lengths_[1]; }
  double l2() const { return lengths_[2]; }
  double l3() const { return lengths_[3]; }
  double l4() const { return lengths_[4]; }
  const std::array<double, 5>& lengths() const { return lengths_; }

  Vec2 a1() const { return {0.0, 0.0}; }
  Vec2 a2() const { return {lengths_[0], 0.0}; }

  friend bool operator==(const FiveBarGeometry&, const FiveBarGeometry&) = default;

 private:
  std::array<double, 5> lengths_;
};

enum class Sign : int { Minus = -1, Plus = 1 };

char sign_char(Sign s);

/// Direct-kinematic branch, the sign of det(A) = (b1 - p) x (b2 - p).
struct AssemblyMode {
  Sign sign = Sign::Plus;
  friend bool operator==(const AssemblyMode&, const AssemblyMode&) = default;
};

/// Inverse-kinematic branch: the signs of u_z = (b1 - a1) x (p - b1) and
/// v_z = (b2 - a2) x (p - b2), equivalently of the serial Jacobian diagonal.
struct WorkingMode {
  Sign leg1 = Sign::Plus;
  Sign leg2 = Sign::Plus;
  friend bool operator==(const WorkingMode&, const WorkingMode&) = default;
};

std::string to_string(AssemblyMode am);
std::string to_string(WorkingMode wm);
/// Parses "+" / "-".
std::optional<AssemblyMode> parse_assembly_mode(const std::string& text);
/// Parses "++", "+-", "-+", "--".
std::optional<WorkingMode> parse_working_mode(const std::string& text);

/// Result of a box test: every point valid, no point valid, or unknown.
enum class Ternary : int { Invalid = -1, Indeterminate = 0, Valid = 1 };

/// Full point-level description of one assembled posture.
struct Configuration {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;  ///< direction of p - b1
  double theta4 = 0.0;  ///< direction of p - b2
  Vec2 p;
  Vec2 b1;
  Vec2 b2;
};

struct ElbowPositions {
  IVec2 b1;
  IVec2 b2;
};

ElbowPositions elbow_positions(const Box2& joints, const FiveBarGeometry& g);

/// One direct-kinematic branch evaluated over a joint box.
struct DkpBranch {
  AssemblyMode mode;
  IVec2 p;
  Interval det_a;   ///< enclosure of (b1 - p) x (b2 - p)
  Interval theta3;  ///< direction of p - b1
  Interval theta4;  ///< direction of p - b2
};

struct DkpResult {
  Ternary status = Ternary::Indeterminate;
  /// Both branches whenever enclosures exist (assembly possible somewhere in
  /// the box and B1 != B2 across it), even if status is not Valid.
  std::vector<DkpBranch> solutions;

  const DkpBranch* branch(AssemblyMode mode) const;
};

/// Joint-space box test. Valid iff every point of the box assembles and the
/// requested branch is certified free of parallel singularity.
DkpResult dkp_box(const Box2& joints, const FiveBarGeometry& g, AssemblyMode mode);
/// Mode-free variant: certifies assembly without parallel singularity.
/// Both branches share the same singular set, so this equals either mode.
DkpResult dkp_box(const Box2& joints, const FiveBarGeometry& g);

/// (b1 - p) x (b2 - p).
Interval assembly_sign(const IVec2& p, const IVec2& b1, const IVec2& b2);

struct WorkingSigns {
  Interval u_z;
  Interval v_z;
};

/// (b1 - a1) x (p - b1) and (b2 - a2) x (p - b2).
WorkingSigns working_sign(const IVec2& p, const IVec2& b1, const IVec2& b2, const FiveBarGeometry& g);

/// Working-mode cross products of a DKP branch, intersected with their
/// angle forms L1 L3 sin(theta3 - theta1) and L2 L4 sin(theta4 - theta2).
WorkingSigns working_sign(const Box2& joints, const DkpBranch& branch, const FiveBarGeometry& g);

/// One inverse-kinematic branch evaluated over a workspace box.
struct IkpBranch {
  WorkingMode mode;
  Interval theta1;
  Interval theta2;
  Interval theta3;
  Interval theta4;
  Interval u_z;
  Interval v_z;
};

struct IkpResult {
  Ternary status = Ternary::Indeterminate;
  /// All four branches whenever enclosures exist.
  std::vector<IkpBranch> solutions;

  const IkpBranch* branch(WorkingMode mode) const;
};

/// Workspace box test. Valid iff every point is strictly inside both leg
/// annuli and the requested branch is certified free of serial singularity.
IkpResult ikp_box(const Box2& position, const FiveBarGeometry& g, WorkingMode mode);
/// Mode-free variant: certifies reachability without serial singularity.
IkpResult ikp_box(const Box2& position, const FiveBarGeometry& g);

/// det(A) enclosure for an IKP branch over a workspace box.
Interval det_a(const Box2& position, const IkpBranch& branch, const FiveBarGeometry& g);

// ---------------------------------------------------------------------------
// Scalar (point) kinematics. Independent of the interval path; used as
// ground truth by tests and by the grid discretization baseline.

/// Zero or two configurations.
std::vector<Configuration> solve_dkp(Vec2 theta, const FiveBarGeometry& g);
/// Zero or four configurations (two elbow choices per leg).
std::vector<Configuration> solve_ikp(Vec2 p, const FiveBarGeometry& g);

/// Sign of det(A) at a configuration; nullopt when |det| is within tolerance of zero.
std::optional<AssemblyMode> assembly_mode_of(const Configuration& c, const FiveBarGeometry& g);
/// Working mode at a configuration; nullopt at a serial singularity.
std::optional<WorkingMode> working_mode_of(const Configuration& c, const FiveBarGeometry& g);

struct ModeCombo {
  WorkingMode wm;
  AssemblyMode am;

  /// Panel letter 'a'..'h' in (leg1, leg2, am) lexicographic order, '+' first.
  char panel() const;
  /// e.g. "+-/+"
  std::string name() const;
  friend bool operator==(const ModeCombo&, const ModeCombo&) = default;
};

/// The eight combinations in panel order.
std::array<ModeCombo, 8> all_combos();

enum class PointClass { Valid, Invalid, Singular };

inline constexpr double kPointTolerance = 1e-12;

/// Scalar classification of a joint-space point. Without a combo: valid iff
/// assemblable away from parallel singularity.
PointClass point_classify_joint(Vec2 theta, const FiveBarGeometry& g,
                                std::optional<ModeCombo> combo = std::nullopt);
/// Scalar classification of a workspace point. Without a combo: valid iff
/// reachable away from serial singularity.
PointClass point_classify_workspace(Vec2 p, const FiveBarGeometry& g,
                                    std::optional<ModeCombo> combo = std::nullopt);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace quadspect
