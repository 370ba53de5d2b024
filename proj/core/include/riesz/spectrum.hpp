#pragma once

// The distributive lattice Spec(R) of basic opens D(a). Every lattice element
// is kept as a single D(a): meets and joins are pushed into the Riesz space,
// and the positivity region {x : a(x) > 0} is cached next to the
// representative as an independent semantic check.

#include <cstdint>
#include <optional>

#include "riesz/pwl.hpp"
#include "riesz/region.hpp"

namespace riesz {

class BasicOpen {
public:
  const PwlFunction& rep() const { return rep_; }
  const Region& region() const { return region_; }

  /// Equal as lattice elements (mutual spec_leq, i.e. equal regions).
  friend bool operator==(const BasicOpen& a, const BasicOpen& b) { return a.region_ == b.region_; }

private:
  BasicOpen(PwlFunction rep, Region region) : rep_(std::move(rep)), region_(std::move(region)) {}
  PwlFunction rep_;
  Region region_;

  friend BasicOpen open_of(const PwlFunction& a);
};

/// D(a), with its region obtained by solving each linear piece against 0.
BasicOpen open_of(const PwlFunction& a);
/// A representative for a relatively open region: tents over each interval,
/// raised to 1 at an included endpoint 0 or 1. Throws std::invalid_argument if
/// the region is not relatively open.
BasicOpen open_from_region(const Region& r);

/// D(u ∧ v) and D(u ∨ v). Throws ConsistencyFailure if the region of the new
/// representative disagrees with the region algebra.
BasicOpen spec_meet(const BasicOpen& u, const BasicOpen& v);
BasicOpen spec_join(const BasicOpen& u, const BasicOpen& v);

struct SpecLeqAnswer {
  bool holds = false;
  /// When holds: a natural n with u.rep⁺ <= n * v.rep⁺.
  std::uint64_t witness = 0;
  /// When not: a rational point in region(u) \ region(v).
  std::optional<Rational> counterexample;
};

/// Decides D(a) <= D(b). Region inclusion and the algebraic witness are both
/// computed; ConsistencyFailure if they disagree.
SpecLeqAnswer spec_leq(const BasicOpen& u, const BasicOpen& v);

/// The algebraic side alone: least-ceiling n with a⁺ <= n b⁺, built piece by
/// piece from the supremum of a⁺/b⁺, or nullopt if no such n exists.
std::optional<std::uint64_t> positive_part_witness(const PwlFunction& a, const PwlFunction& b);

/// D(rep - eps); throws std::invalid_argument unless eps > 0.
BasicOpen spec_shrink(const BasicOpen& u, const Rational& eps);

enum class Side { AtMost, AtLeast };

/// {x : f(x) <= r} or {x : f(x) >= r}: the formal complements of D(f - r)
/// and D(r - f).
Region closed_of(const PwlFunction& f, const Rational& r, Side side);

}  // namespace riesz
