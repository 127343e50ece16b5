#include "quadspect/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quadspect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPiLo = 6.283185307179586;
constexpr double kHalfPi = 1.5707963267948966;

// Basic operations are correctly rounded (half an ulp); one step outward
// covers them. libm transcendental functions are within one ulp, two steps
// cover them.
double down(double v, int ulps = 1) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -kInf);
  return v;
}

double up(double v, int ulps = 1) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, kInf);
  return v;
}

Interval make(double lo, double hi) {
  Interval r;
  r.lo = lo;
  r.hi = hi;
  return r;
}

// Does some t = phase + k * 2pi lie in [lo, hi]? Answers conservatively:
// a critical point within the slack of an endpoint counts as inside.
bool hits_critical(double lo, double hi, double phase) {
  const double slack = 1e-13 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));
  const double k = std::ceil((lo - slack - phase) / kTwoPiLo);
  // Check k-1, k, k+1 against floating error in the quotient.
  for (double j = k - 1.0; j <= k + 1.0; j += 1.0) {
    const double t = phase + j * kTwoPiLo;
    if (t >= lo - slack && t <= hi + slack) return true;
  }
  return false;
}

Interval periodic_range(double lo, double hi, double (*fn)(double), double max_phase,
                        double min_phase) {
  if (hi - lo >= kTwoPiLo) return make(-1.0, 1.0);
  const double f_lo = fn(lo);
  const double f_hi = fn(hi);
  double r_lo = down(std::min(f_lo, f_hi), 2);
  double r_hi = up(std::max(f_lo, f_hi), 2);
  if (hits_critical(lo, hi, max_phase)) r_hi = 1.0;
  if (hits_critical(lo, hi, min_phase)) r_lo = -1.0;
  return make(std::max(r_lo, -1.0), std::min(r_hi, 1.0));
}

double sin_fn(double v) { return std::sin(v); }
double cos_fn(double v) { return std::cos(v); }

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo_) || !std::isfinite(hi_) || lo_ > hi_) {
    std::ostringstream msg;
    msg << "invalid interval bounds [" << lo_ << ", " << hi_ << "]";
    throw DomainError(msg.str());
  }
}

std::string to_string(const Interval& a) {
  std::ostringstream out;
  out.precision(17);
  out << '[' << a.lo << ", " << a.hi << ']';
  return out.str();
}

Interval full_angle() { return make(-kPiHi, kPiHi); }

Interval hull(const Interval& a, const Interval& b) {
  return make(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return make(lo, hi);
}

Interval operator-(const Interval& a) { return make(-a.hi, -a.lo); }

Interval operator+(const Interval& a, const Interval& b) {
  return make(down(a.lo + b.lo), up(a.hi + b.hi));
}

Interval operator-(const Interval& a, const Interval& b) {
  return make(down(a.lo - b.hi), up(a.hi - b.lo));
}

Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return make(down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4})));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("division by an interval containing zero");
  const double q1 = a.lo / b.lo;
  const double q2 = a.lo / b.hi;
  const double q3 = a.hi / b.lo;
  const double q4 = a.hi / b.hi;
  return make(down(std::min({q1, q2, q3, q4})), up(std::max({q1, q2, q3, q4})));
}

Interval operator+(const Interval& a, double b) { return a + Interval(b); }
Interval operator-(const Interval& a, double b) { return a - Interval(b); }
Interval operator*(const Interval& a, double b) { return a * Interval(b); }
Interval operator*(double a, const Interval& b) { return Interval(a) * b; }

Interval sqr(const Interval& a) {
  const double l2 = a.lo * a.lo;
  const double h2 = a.hi * a.hi;
  if (a.contains_zero()) return make(0.0, up(std::max(l2, h2)));
  return make(std::max(0.0, down(std::min(l2, h2))), up(std::max(l2, h2)));
}

Interval sqrt(const Interval& a) {
  if (a.hi < 0.0) throw DomainError("sqrt of a negative interval");
  const double lo = a.lo <= 0.0 ? 0.0 : std::max(0.0, down(std::sqrt(a.lo)));
  return make(lo, up(std::sqrt(a.hi)));
}

Interval sin(const Interval& a) { return periodic_range(a.lo, a.hi, sin_fn, kHalfPi, -kHalfPi); }

Interval cos(const Interval& a) { return periodic_range(a.lo, a.hi, cos_fn, 0.0, kPiLo); }

AcosResult acos(const Interval& a) {
  if (a.hi < -1.0 || a.lo > 1.0) throw DomainError("acos argument outside [-1, 1]");
  AcosResult r;
  r.clamped = a.lo < -1.0 || a.hi > 1.0;
  const double lo_arg = std::max(a.lo, -1.0);
  const double hi_arg = std::min(a.hi, 1.0);
  // acos is decreasing.
  const double lo = std::max(0.0, down(std::acos(hi_arg), 2));
  const double hi = std::min(kPiHi, up(std::acos(lo_arg), 2));
  r.angle = make(lo, hi);
  return r;
}

Atan2Result atan2(const Interval& y, const Interval& x) {
  Atan2Result r;
  if (x.contains_zero() && y.contains_zero()) {
    r.angle = full_angle();
    r.contains_origin = true;
    return r;
  }
  // Adding 0.0 turns -0.0 into +0.0 so atan2 never lands on -pi by sign of zero.
  const double xs[2] = {x.lo + 0.0, x.hi + 0.0};
  const double ys[2] = {y.lo + 0.0, y.hi + 0.0};
  const bool crosses_cut = x.hi < 0.0 && y.lo < 0.0 && y.hi >= 0.0;
  double lo = kInf;
  double hi = -kInf;
  for (double xv : xs) {
    for (double yv : ys) {
      double t = std::atan2(yv, xv);
      if (crosses_cut && t < 0.0) t += kTwoPiLo;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  // The 2pi shift adds a rounding step and the constant's own error.
  const int slack = crosses_cut ? 4 : 2;
  r.angle = make(down(lo, slack), up(hi, slack));
  return r;
}

Interval norm2(const Interval& dx, const Interval& dy) { return sqrt(sqr(dx) + sqr(dy)); }

Interval cross_z(const Interval& ux, const Interval& uy, const Interval& vx, const Interval& vy) {
  return ux * vy - uy * vx;
}

Interval law_of_cosines(const Interval& dist, double adjacent, double opposite) {
  if (!(dist.lo > 0.0)) throw DomainError("law_of_cosines needs a positive distance");
  const Interval a(adjacent);
  const Interval c = sqr(a) - sqr(Interval(opposite));
  auto eval = [&](double d) {
    const Interval dd(d);
    return (sqr(dd) + c) / (2.0 * a * dd);
  };
  Interval r = hull(eval(dist.lo), eval(dist.hi));
  // d/(2a) + c/(2ad) has an interior minimum at d = sqrt(c) when c > 0.
  if (c.hi > 0.0) {
    const Interval root = sqrt(c);
    if (root.hi >= dist.lo && root.lo <= dist.hi) {
      const Interval at_min = root / a;
      r = make(std::min(r.lo, at_min.lo), r.hi);
    }
  }
  return r;
}

}  // namespace quadspect
