#pragma once

// Finite unions of rational intervals inside [0,1]. A Region is the semantic
// reading of a lattice element: basic opens D(a) become relatively open
// regions, their formal complements become closed ones.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riesz/pwl.hpp"
#include "riesz/rational.hpp"

namespace riesz {

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Rational& x) const;
  std::string str() const;
};

/// Normalized: sorted, pairwise disjoint, and no two intervals could be
/// merged. Two regions are equal iff they are structurally equal.
class Region {
public:
  Region() = default;

  static Region empty() { return Region(); }
  static Region full();
  /// Throws std::invalid_argument for degenerate or out-of-range input.
  static Region interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed);
  static Region open(const Rational& lo, const Rational& hi) { return interval(lo, hi, false, false); }
  static Region closed(const Rational& lo, const Rational& hi) { return interval(lo, hi, true, true); }
  static Region point(const Rational& x) { return interval(x, x, true, true); }
  /// Union of arbitrary (possibly overlapping) intervals, clipped to [0,1].
  static Region from_intervals(const std::vector<Interval>& parts);

  std::span<const Interval> intervals() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool is_full() const;
  bool contains(const Rational& x) const;
  Rational length() const;

  Region unite(const Region& o) const;
  Region intersect(const Region& o) const;
  Region minus(const Region& o) const;
  Region complement() const;
  bool subset_of(const Region& o) const { return minus(o).is_empty(); }

  /// Open relative to [0,1]: only 0 and 1 may be included endpoints.
  bool is_relatively_open() const;
  bool is_closed() const;

  /// A rational point of the region (an interior midpoint where possible).
  std::optional<Rational> some_point() const;
  /// All interval endpoints in increasing order.
  std::vector<Rational> endpoints() const;

  /// `(1/2,1] ∪ [0,1/4)` style, ascending; `∅` when empty.
  std::string str() const;

  friend bool operator==(const Region& a, const Region& b);

private:
  std::vector<Interval> parts_;
};

/// Builds a region from a membership test evaluated on the elementary pieces
/// cut out by `cuts`: each cut point, and each open gap between consecutive
/// cuts (tested at its midpoint). `cuts` must contain 0 and 1.
Region region_from_pieces(std::vector<Rational> cuts, const std::function<bool(const Rational&)>& member);

enum class Cmp { Less, LessEq, Greater, GreaterEq };

/// {x in [0,1] : f(x) cmp r}; endpoints are roots of linear pieces.
Region region_where(const PwlFunction& f, Cmp cmp, const Rational& r);

}  // namespace riesz
