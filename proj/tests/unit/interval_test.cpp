#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "quadspect/interval.hpp"

using namespace quadspect;

namespace {

constexpr double kPi = std::numbers::pi;

bool tight(const Interval& got, double lo, double hi, int ulps = 4) {
  double a = lo;
  double b = hi;
  for (int i = 0; i < ulps; ++i) {
    a = std::nextafter(a, -INFINITY);
    b = std::nextafter(b, INFINITY);
  }
  return got.lo <= lo && hi <= got.hi && a <= got.lo && got.hi <= b;
}

// Extremes of f over the corners of a box; exact range for functions
// monotone in each argument on the box.
template <class F>
std::pair<double, double> corners(const std::vector<Interval>& box, F f) {
  double lo = INFINITY;
  double hi = -INFINITY;
  const std::size_t n = box.size();
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? box[i].hi : box[i].lo;
    const double v = f(p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

TEST_SUITE("interval") {

TEST_CASE("constructor rejects inverted or non-finite bounds") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(0.0, INFINITY), DomainError);
  CHECK_THROWS_AS(Interval(NAN, 1.0), DomainError);
  CHECK_NOTHROW(Interval(1.0, 1.0));
}

TEST_CASE("add sub mul div") {
  CHECK(tight(Interval{1, 2} + Interval{3, 4}, 4, 6));
  CHECK(tight(Interval{-1, 2} * Interval{3, 4}, -4, 8));
  CHECK(tight(Interval{1, 2} - Interval{3, 4}, -3, -1));
  CHECK(tight(Interval{1, 2} / Interval{4, 8}, 0.125, 0.5));
  CHECK_THROWS_AS(Interval(1.0) / Interval(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 0.0), DomainError);
}

TEST_CASE("outward rounding is strict for inexact results") {
  const Interval third = Interval(1.0) / Interval(3.0);
  CHECK(third.lo < 1.0 / 3.0);
  CHECK(third.hi > 1.0 / 3.0);
}

TEST_CASE("sqr is sharp across zero") {
  CHECK(tight(sqr(Interval{-2, 3}), 0, 9));
  CHECK(sqr(Interval{-2, 3}).lo == 0.0);
  CHECK(tight(sqr(Interval{-3, -2}), 4, 9));
}

TEST_CASE("sqrt") {
  CHECK(tight(sqrt(Interval{4, 9}), 2, 3));
  const Interval clamped = sqrt(Interval{-1, 4});
  CHECK(clamped.lo == 0.0);
  CHECK(tight(clamped, 0, 2));
  const Interval r2 = sqrt(Interval(2.0));
  CHECK(r2.contains(1.4142135623730951));
  CHECK(r2.width() <= 4 * (std::nextafter(std::sqrt(2.0), 2.0) - std::sqrt(2.0)));
  CHECK_THROWS_AS(sqrt(Interval{-2, -1}), DomainError);
}

TEST_CASE("sin and cos") {
  const Interval s = sin(Interval{0.0, kPi});
  CHECK(s.contains(Interval{0.0, 1.0}));
  CHECK(s.hi <= 1.0 + 1e-15);
  CHECK(s.lo >= -1e-15);
  const Interval c = cos(Interval{0.0, kPi / 2});
  // cos of the double nearest pi/2 is about +6e-17
  CHECK(c.lo <= std::cos(kPi / 2));
  CHECK(c.hi >= 1.0);
  CHECK(c.lo >= -1e-15);
  const Interval small = sin(Interval{-0.1, 0.1});
  CHECK(tight(small, -std::sin(0.1), std::sin(0.1), 4));
  CHECK(cos(Interval{-10, 10}).contains(Interval{-1, 1}));
  // interior minimum of cos at pi
  CHECK(cos(Interval{3.0, 3.3}).lo <= -1.0);
}

TEST_CASE("acos") {
  const AcosResult full = acos(Interval{-1, 1});
  CHECK(full.angle.contains(Interval{0.0, kPi}));
  CHECK_FALSE(full.clamped);
  const AcosResult third = acos(Interval(0.5));
  CHECK(third.angle.contains(kPi / 3));
  CHECK(third.angle.width() < 1e-15);
  const AcosResult partial = acos(Interval{0.9, 1.2});
  CHECK(partial.clamped);
  CHECK(partial.angle.contains(Interval{0.0, std::acos(0.9)}));
  CHECK_THROWS_AS(acos(Interval{1.1, 1.2}), DomainError);
}

TEST_CASE("atan2") {
  const Atan2Result q = atan2(Interval(1.0), Interval(1.0));
  CHECK(q.angle.contains(kPi / 4));
  CHECK_FALSE(q.contains_origin);
  const Atan2Result origin = atan2(Interval{-0.1, 0.1}, Interval{-0.1, 0.1});
  CHECK(origin.contains_origin);
  CHECK(origin.angle.contains(Interval{-kPi, kPi}));
  const Atan2Result upper = atan2(Interval{1, 2}, Interval{-1, 1});
  CHECK(upper.angle.contains(Interval{kPi / 4, 3 * kPi / 4}));
  CHECK(upper.angle.width() < kPi / 2 + 1e-12);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uy(1, 2);
  std::uniform_real_distribution<double> ux(-1, 1);
  for (int i = 0; i < 10000; ++i) REQUIRE(upper.angle.contains(std::atan2(uy(rng), ux(rng))));
}

TEST_CASE("atan2 across the negative x axis stays contiguous") {
  const Atan2Result r = atan2(Interval{-0.5, 0.5}, Interval{-2, -1});
  CHECK(r.angle.hi > kPi);
  CHECK(r.angle.width() < 1.0);
  CHECK(testing::angle_in(r.angle, kPi));
  CHECK(testing::angle_in(r.angle, std::atan2(-0.5, -1.0)));
  CHECK(testing::angle_in(r.angle, std::atan2(0.5, -1.0)));
}

TEST_CASE("norm2") {
  CHECK(norm2(Interval(3.0), Interval(4.0)).contains(5.0));
  const Interval o = norm2(Interval{-1, 1}, Interval{-1, 1});
  CHECK(o.lo == 0.0);
  CHECK(tight(o, 0.0, std::sqrt(2.0), 4));
  const std::vector<Interval> box{Interval{1, 2}, Interval{2, 3}};
  const auto [lo, hi] = corners(box, [](auto& p) { return std::hypot(p[0], p[1]); });
  CHECK(lo == doctest::Approx(std::sqrt(5.0)));
  CHECK(hi == doctest::Approx(std::sqrt(13.0)));
  CHECK(tight(norm2(box[0], box[1]), lo, hi, 6));
}

TEST_CASE("cross_z") {
  CHECK(tight(cross_z(Interval(1.0), Interval(0.0), Interval(0.0), Interval(1.0)), 1, 1));
  CHECK(cross_z(Interval(0.3), Interval(0.7), Interval(0.3), Interval(0.7)).contains(0.0));
  const std::vector<Interval> box{Interval{1, 2}, Interval{0, 1}, Interval{0, 1}, Interval{1, 2}};
  const Interval r = cross_z(box[0], box[1], box[2], box[3]);
  const auto [lo, hi] = corners(box, [](auto& p) { return p[0] * p[3] - p[1] * p[2]; });
  CHECK(lo == 0.0);
  CHECK(hi == 4.0);
  CHECK(r.contains(Interval{lo, hi}));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const double ux = 1 + u(rng), uy = u(rng), vx = u(rng), vy = 1 + u(rng);
    REQUIRE(r.contains(ux * vy - uy * vx));
  }
}

TEST_CASE("law_of_cosines has an interior minimum") {
  // (d^2 + 64 - 25) / (16 d) is minimal at d = sqrt(39).
  const Interval r = law_of_cosines(Interval{5, 8}, 8.0, 5.0);
  const double dmin = std::sqrt(39.0);
  CHECK(r.contains((dmin * dmin + 39.0) / (16.0 * dmin)));
  CHECK(r.lo <= std::sqrt(39.0) / 8.0);
  CHECK(r.lo > std::sqrt(39.0) / 8.0 - 1e-12);
  CHECK(r.hi >= (64.0 + 39.0) / 128.0);
  CHECK_THROWS_AS(law_of_cosines(Interval{0, 1}, 8.0, 5.0), DomainError);
}

TEST_CASE("hull and intersect") {
  CHECK(hull(Interval{0, 1}, Interval{3, 4}) == Interval{0, 4});
  CHECK(intersect(Interval{0, 2}, Interval{1, 3}) == Interval{1, 2});
  CHECK_FALSE(intersect(Interval{0, 1}, Interval{2, 3}).has_value());
  CHECK(full_angle().lo < -kPi + 1e-15);
  CHECK(full_angle().contains(Interval{-kPi, kPi}));
}

TEST_CASE("inclusion isotonicity, light sweep") {
  for (const auto& rep : testing::isotonicity_sweep(2024, 20, 500)) {
    INFO(rep.op << ": " << rep.first_violation);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("point operands give narrow results") {
  CHECK(testing::point_width_violations(99, 1000, 8) == 0);
}

TEST_CASE("monotone widening over nested pairs") {
  CHECK(testing::widening_violations(5, 1000) == 0);
}

}  // TEST_SUITE
