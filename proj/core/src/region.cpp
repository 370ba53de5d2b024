#include "riesz/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace riesz {

bool Interval::contains(const Rational& x) const {
  const bool above = lo_closed ? lo <= x : lo < x;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

std::string Interval::str() const {
  return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() + (hi_closed ? "]" : ")");
}

namespace {

void sort_unique(std::vector<Rational>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

namespace {

// Region from sorted unique cuts covering [0,1], with membership given for
// each cut point and each open gap after it (gap_in has one entry fewer).
Region from_flags(const std::vector<Rational>& cuts, const std::vector<bool>& point_in,
                  const std::vector<bool>& gap_in) {
  std::vector<Interval> parts;
  std::optional<Interval> open;
  auto close = [&](const Rational& hi, bool hi_closed) {
    open->hi = hi;
    open->hi_closed = hi_closed;
    parts.push_back(*open);
    open.reset();
  };
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const Rational& p = cuts[i];
    if (point_in[i]) {
      if (!open) open = Interval{p, p, true, true};
    } else if (open) {
      close(p, false);
    }
    if (i + 1 == cuts.size()) break;
    if (gap_in[i]) {
      if (!open) open = Interval{p, p, false, false};
    } else if (open) {
      // The point p was in and the gap after it is not.
      close(p, true);
    }
  }
  if (open) close(cuts.back(), true);
  return Region::from_intervals(parts);
}

}  // namespace

Region region_from_pieces(std::vector<Rational> cuts, const std::function<bool(const Rational&)>& member) {
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [](const Rational& x) { return x < Rational(0) || Rational(1) < x; }),
             cuts.end());
  cuts.push_back(Rational(0));
  cuts.push_back(Rational(1));
  sort_unique(cuts);
  std::vector<bool> point_in, gap_in;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    point_in.push_back(member(cuts[i]));
    if (i + 1 < cuts.size()) gap_in.push_back(member(midpoint(cuts[i], cuts[i + 1])));
  }
  return from_flags(cuts, point_in, gap_in);
}

Region Region::full() { return interval(Rational(0), Rational(1), true, true); }

Region Region::interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed) {
  if (hi < lo || lo < Rational(0) || Rational(1) < hi)
    throw std::invalid_argument("interval " + lo.str() + ".." + hi.str() + " not inside [0,1]");
  if (lo == hi && !(lo_closed && hi_closed)) return Region();
  Region r;
  r.parts_.push_back({lo, hi, lo_closed, hi_closed});
  return r;
}

// Already-normalized lists pass through unchanged; anything else is rebuilt
// piecewise from the union membership.
Region Region::from_intervals(const std::vector<Interval>& parts) {
  bool normalized = true;
  for (std::size_t i = 0; i < parts.size() && normalized; ++i) {
    const auto& p = parts[i];
    if (p.lo < Rational(0) || Rational(1) < p.hi || p.hi < p.lo ||
        (p.lo == p.hi && !(p.lo_closed && p.hi_closed)))
      normalized = false;
    if (i > 0) {
      const auto& q = parts[i - 1];
      if (p.lo < q.hi || (p.lo == q.hi && (p.lo_closed || q.hi_closed))) normalized = false;
    }
  }
  if (normalized) {
    Region r;
    r.parts_ = parts;
    return r;
  }
  std::vector<Rational> cuts;
  for (const auto& p : parts) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  return region_from_pieces(std::move(cuts), [&parts](const Rational& x) {
    return std::any_of(parts.begin(), parts.end(), [&x](const Interval& p) { return p.contains(x); });
  });
}

bool Region::is_full() const {
  return parts_.size() == 1 && parts_[0].lo == Rational(0) && parts_[0].hi == Rational(1) &&
         parts_[0].lo_closed && parts_[0].hi_closed;
}

bool Region::contains(const Rational& x) const {
  auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                             [](const Interval& p, const Rational& v) { return p.hi < v; });
  return it != parts_.end() && it->contains(x);
}

Rational Region::length() const {
  Rational total(0);
  for (const auto& p : parts_) total += p.hi - p.lo;
  return total;
}

namespace {

template <typename Op>
Region combine(const Region& a, const Region& b, Op op) {
  std::vector<Rational> cuts = a.endpoints();
  const auto more = b.endpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  return region_from_pieces(std::move(cuts),
                            [&](const Rational& x) { return op(a.contains(x), b.contains(x)); });
}

}  // namespace

Region Region::unite(const Region& o) const { return combine(*this, o, [](bool x, bool y) { return x || y; }); }
Region Region::intersect(const Region& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}
Region Region::minus(const Region& o) const { return combine(*this, o, [](bool x, bool y) { return x && !y; }); }
Region Region::complement() const { return full().minus(*this); }

bool Region::is_relatively_open() const {
  for (const auto& p : parts_) {
    if (p.lo_closed && p.lo != Rational(0)) return false;
    if (p.hi_closed && p.hi != Rational(1)) return false;
  }
  return true;
}

bool Region::is_closed() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Interval& p) { return p.lo_closed && p.hi_closed; });
}

std::optional<Rational> Region::some_point() const {
  if (parts_.empty()) return std::nullopt;
  const auto& p = parts_.front();
  if (p.lo == p.hi) return p.lo;
  return midpoint(p.lo, p.hi);
}

std::vector<Rational> Region::endpoints() const {
  std::vector<Rational> xs;
  xs.reserve(parts_.size() * 2);
  for (const auto& p : parts_) {
    xs.push_back(p.lo);
    xs.push_back(p.hi);
  }
  return xs;
}

std::string Region::str() const {
  if (parts_.empty()) return "∅";
  std::string s;
  for (const auto& p : parts_) {
    if (!s.empty()) s += " ∪ ";
    s += p.str();
  }
  return s;
}

bool operator==(const Region& a, const Region& b) {
  if (a.parts_.size() != b.parts_.size()) return false;
  for (std::size_t i = 0; i < a.parts_.size(); ++i) {
    const auto& p = a.parts_[i];
    const auto& q = b.parts_[i];
    if (p.lo != q.lo || p.hi != q.hi || p.lo_closed != q.lo_closed || p.hi_closed != q.hi_closed) return false;
  }
  return true;
}

// f − r is linear between consecutive cuts, so each gap has the sign of the
// sum of the two endpoint differences.
Region region_where(const PwlFunction& f, Cmp cmp, const Rational& r) {
  auto holds = [cmp](int sign) {
    switch (cmp) {
      case Cmp::Less: return sign < 0;
      case Cmp::LessEq: return sign <= 0;
      case Cmp::Greater: return sign > 0;
      case Cmp::GreaterEq: return sign >= 0;
    }
    return false;
  };
  const auto pts = f.points();
  std::vector<Rational> cuts;
  std::vector<int> signs;
  cuts.reserve(pts.size() * 2);
  signs.reserve(pts.size() * 2);
  Rational prev;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rational d = pts[i].y - r;
    if (i > 0 && ((prev.sign() < 0 && d.sign() > 0) || (prev.sign() > 0 && d.sign() < 0))) {
      cuts.push_back(pts[i - 1].x + (pts[i].x - pts[i - 1].x) * prev / (prev - d));
      signs.push_back(0);
    }
    cuts.push_back(pts[i].x);
    signs.push_back(d.sign());
    prev = std::move(d);
  }
  std::vector<bool> point_in, gap_in;
  point_in.reserve(cuts.size());
  gap_in.reserve(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    point_in.push_back(holds(signs[i]));
    // No crossing inside a gap, so a zero endpoint takes the other's sign.
    if (i + 1 < cuts.size()) gap_in.push_back(holds(signs[i] != 0 ? signs[i] : signs[i + 1]));
  }
  return from_flags(cuts, point_in, gap_in);
}

}  // namespace riesz
