#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace quadspect {

/// Raised when an interval operation has no meaningful enclosure
/// (empty domain, division by an interval containing zero, bad bounds).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed interval [lo, hi] of finite doubles.
///
/// All arithmetic below is outward rounded: every computed bound is pushed
/// away from the true result by a few ulps, so the returned interval always
/// encloses the exact range of the operation over its operands.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr explicit Interval(double point) : lo(point), hi(point) {}
  /// Throws DomainError unless lo <= hi and both bounds are finite.
  Interval(double lo, double hi);

  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool positive() const { return lo > 0.0; }
  bool negative() const { return hi < 0.0; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box, the unit of work of the classifiers.
struct Box2 {
  Interval x;
  Interval y;

  double area() const { return x.width() * y.width(); }
  friend bool operator==(const Box2&, const Box2&) = default;
};

std::string to_string(const Interval& a);

// Enclosure of pi: pi_lo < pi < pi_hi.
inline constexpr double kPiLo = 3.141592653589793;
inline constexpr double kPiHi = 3.1415926535897936;

/// The full-angle interval [-pi, pi], outward rounded.
Interval full_angle();

/// Smallest interval containing both operands.
Interval hull(const Interval& a, const Interval& b);
/// Intersection, or nullopt when the operands are disjoint.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DomainError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);

Interval operator+(const Interval& a, double b);
Interval operator-(const Interval& a, double b);
Interval operator*(const Interval& a, double b);
Interval operator*(double a, const Interval& b);

/// Sharp square: [0, max] when the operand straddles zero.
Interval sqr(const Interval& a);
/// Square root over a ∩ [0, inf). Negative lower bounds clamp to zero;
/// throws DomainError if hi < 0.
Interval sqrt(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);

struct AcosResult {
  Interval angle;
  /// Operand only partially overlapped [-1, 1].
  bool clamped = false;
};
/// Throws DomainError when a ∩ [-1, 1] is empty.
AcosResult acos(const Interval& a);

struct Atan2Result {
  /// Contiguous enclosure of the angle set. When the box straddles the
  /// negative x axis the upper bound exceeds pi (angles are unwrapped).
  Interval angle;
  /// The box contains the origin; angle is then the full circle.
  bool contains_origin = false;
};
Atan2Result atan2(const Interval& y, const Interval& x);

/// sqrt(dx^2 + dy^2).
Interval norm2(const Interval& dx, const Interval& dy);
/// z component of (ux, uy) x (vx, vy).
Interval cross_z(const Interval& ux, const Interval& uy, const Interval& vx, const Interval& vy);

/// Range of (d^2 + adjacent^2 - opposite^2) / (2 adjacent d) for d in `dist`,
/// i.e. the cosine of the angle facing `opposite` in a triangle with sides
/// d, adjacent, opposite. Evaluated sharply from its monotone pieces.
/// Requires dist.lo > 0 (throws DomainError otherwise).
Interval law_of_cosines(const Interval& dist, double adjacent, double opposite);

}  // namespace quadspect
