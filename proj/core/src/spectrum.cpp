#include "riesz/spectrum.hpp"

#include <algorithm>
#include <stdexcept>

#include "riesz/errors.hpp"

namespace riesz {

BasicOpen open_of(const PwlFunction& a) { return BasicOpen(a, region_where(a, Cmp::Greater, Rational(0))); }

BasicOpen open_from_region(const Region& r) {
  if (!r.is_relatively_open())
    throw std::invalid_argument("region " + r.str() + " is not open in [0,1]");
  std::vector<Point> pts;
  auto add = [&pts](const Rational& x, const Rational& y) {
    if (pts.empty() || pts.back().x < x) pts.push_back({x, y});
  };
  const Rational zero(0), one(1);
  for (const auto& p : r.intervals()) {
    if (pts.empty() && Rational(0) < p.lo) add(zero, zero);
    add(p.lo, p.lo_closed ? one : zero);
    add(midpoint(p.lo, p.hi), one);
    add(p.hi, p.hi_closed ? one : zero);
  }
  if (pts.empty()) add(zero, zero);
  add(one, zero);
  BasicOpen u = open_of(PwlFunction(std::move(pts)));
  if (!(u.region() == r))
    throw ConsistencyFailure("representative for " + r.str() + " has region " + u.region().str());
  return u;
}

BasicOpen spec_meet(const BasicOpen& u, const BasicOpen& v) {
  BasicOpen w = open_of(meet(u.rep(), v.rep()));
  if (!(w.region() == u.region().intersect(v.region())))
    throw ConsistencyFailure("region of D(a ∧ b) differs from the intersection of regions");
  return w;
}

BasicOpen spec_join(const BasicOpen& u, const BasicOpen& v) {
  BasicOpen w = open_of(join(u.rep(), v.rep()));
  if (!(w.region() == u.region().unite(v.region())))
    throw ConsistencyFailure("region of D(a ∨ b) differs from the union of regions");
  return w;
}

// On each piece of the merged grid both positive parts are linear, so a⁺/b⁺
// is monotone there and its supremum sits at a piece endpoint. Where b⁺
// vanishes at an endpoint the ratio is read off the other endpoint (both
// functions are then lines through the same zero).
std::optional<std::uint64_t> positive_part_witness(const PwlFunction& a, const PwlFunction& b) {
  const PwlFunction ap = pos(a);
  const PwlFunction bp = pos(b);
  const auto grid = merged_grid(ap, bp);
  Rational sup(0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Rational a0 = ap(grid[i - 1]), a1 = ap(grid[i]);
    const Rational b0 = bp(grid[i - 1]), b1 = bp(grid[i]);
    const bool b_zero0 = b0.sign() == 0, b_zero1 = b1.sign() == 0;
    if (b_zero0 && b_zero1) {
      if (a0.sign() != 0 || a1.sign() != 0) return std::nullopt;
      continue;
    }
    if ((b_zero0 && a0.sign() != 0) || (b_zero1 && a1.sign() != 0)) return std::nullopt;
    sup = max(sup, b_zero0 ? a1 / b1 : a0 / b0);
    sup = max(sup, b_zero1 ? a0 / b0 : a1 / b1);
  }
  const std::uint64_t n = std::max<std::uint64_t>(1, to_u64_saturating(sup.ceil()));
  return n;
}

SpecLeqAnswer spec_leq(const BasicOpen& u, const BasicOpen& v) {
  const Region outside = u.region().minus(v.region());
  const auto witness = positive_part_witness(u.rep(), v.rep());
  SpecLeqAnswer ans;
  if (!outside.is_empty()) {
    if (witness)
      throw ConsistencyFailure("witness n=" + std::to_string(*witness) + " found but " +
                               u.region().str() + " is not inside " + v.region().str());
    ans.counterexample = outside.some_point();
    return ans;
  }
  if (!witness || !pwl_leq(pos(u.rep()), Rational(static_cast<long>(*witness)) * pos(v.rep())))
    throw ConsistencyFailure("witness construction bug: regions nested but no n with a⁺ <= n b⁺");
  ans.holds = true;
  ans.witness = *witness;
  return ans;
}

BasicOpen spec_shrink(const BasicOpen& u, const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("shrink amount must be positive");
  return open_of(u.rep() - eps);
}

Region closed_of(const PwlFunction& f, const Rational& r, Side side) {
  return region_where(f, side == Side::AtMost ? Cmp::LessEq : Cmp::GreaterEq, r);
}

}  // namespace riesz
