#pragma once

// Continuous rational piecewise-linear functions on [0,1]: the concrete Riesz
// space with strong unit used throughout the library.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riesz/rational.hpp"

namespace riesz {

struct Point {
  Rational x;
  Rational y;
};

/// Linear interpolation through breakpoints 0 = x0 < x1 < ... < xn = 1.
/// Always canonical: no interior breakpoint is collinear with its
/// neighbours, so equality is structural.
class PwlFunction {
public:
  /// Throws std::invalid_argument unless the x-coordinates are strictly
  /// increasing, start at 0 and end at 1.
  explicit PwlFunction(std::vector<Point> points);

  static PwlFunction constant(const Rational& c);
  static PwlFunction identity();

  std::span<const Point> points() const { return points_; }
  std::vector<Rational> breakpoints() const;

  /// Throws std::out_of_range outside [0,1].
  Rational operator()(const Rational& x) const;

  bool is_constant() const { return points_.size() == 2 && points_[0].y == points_[1].y; }
  Rational min_value() const;
  Rational max_value() const;

  /// `pwl (0,0) (1/2,1/2) (1,0)`
  std::string str() const;

  friend bool operator==(const PwlFunction& a, const PwlFunction& b);

private:
  // Skips validation and canonicalization; for callers that preserve both.
  struct Trusted {};
  PwlFunction(std::vector<Point> points, Trusted) : points_(std::move(points)) {}
  friend PwlFunction operator*(const Rational& c, const PwlFunction& f);
  friend PwlFunction operator+(const PwlFunction& f, const Rational& c);
  friend PwlFunction operator-(const Rational& c, const PwlFunction& f);
  friend PwlFunction unit_ramp(const PwlFunction& f, const Rational& c);

  std::vector<Point> points_;
};

PwlFunction pwl_make(std::vector<std::pair<Rational, Rational>> points);

PwlFunction operator+(const PwlFunction& f, const PwlFunction& g);
PwlFunction operator-(const PwlFunction& f, const PwlFunction& g);
PwlFunction operator-(const PwlFunction& f);
PwlFunction operator*(const Rational& c, const PwlFunction& f);
PwlFunction operator+(const PwlFunction& f, const Rational& c);
PwlFunction operator-(const PwlFunction& f, const Rational& c);
PwlFunction operator-(const Rational& c, const PwlFunction& f);

/// Pointwise max/min; crossings of the two graphs become breakpoints.
PwlFunction join(const PwlFunction& f, const PwlFunction& g);
PwlFunction meet(const PwlFunction& f, const PwlFunction& g);
PwlFunction pos(const PwlFunction& f);       // f v 0
PwlFunction neg_part(const PwlFunction& f);  // 0 v -f
PwlFunction abs(const PwlFunction& f);
/// min(c·f⁺, 1) for c > 0, built in one pass over the segments of f.
PwlFunction unit_ramp(const PwlFunction& f, const Rational& c);

/// f <= g pointwise, decided on the merged breakpoint grid.
bool pwl_leq(const PwlFunction& f, const PwlFunction& g);
Rational pwl_eval(const PwlFunction& f, const Rational& x);
/// Least natural n with |f| <= n * 1.
std::uint64_t pwl_bound(const PwlFunction& f);
/// Exact integral over [0,1] as a sum of trapezoids.
Rational pwl_riemann(const PwlFunction& f);

/// Sorted union of the breakpoints of f and g.
std::vector<Rational> merged_grid(const PwlFunction& f, const PwlFunction& g);

/// Parses `pwl (x0,y0) (x1,y1) ...`. Throws ParseError with the column of the
/// offending character.
PwlFunction parse_pwl(std::string_view text, int line = 1);

}  // namespace riesz
