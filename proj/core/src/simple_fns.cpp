#include "riesz/simple_fns.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "riesz/errors.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

SimpleFn::SimpleFn(Polarity polarity, std::vector<Term> terms)
    : polarity_(polarity), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.coeff.sign() <= 0) throw std::invalid_argument("simple function coefficient must be positive, got " + t.coeff.str());
    if (polarity_ == Polarity::Open && !t.elem.is_relatively_open())
      throw std::invalid_argument("open simple function term " + t.elem.str() + " is not open");
    if (polarity_ == Polarity::Closed && !t.elem.is_closed())
      throw std::invalid_argument("closed simple function term " + t.elem.str() + " is not closed");
  }
}

Rational SimpleFn::total() const {
  Rational s(0);
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

SimpleFn SimpleFn::scaled(const Rational& c) const {
  std::vector<Term> ts = terms_;
  for (auto& t : ts) t.coeff *= c;
  return SimpleFn(polarity_, std::move(ts));
}

SimpleFn SimpleFn::plus(const SimpleFn& o) const {
  if (o.polarity_ != polarity_) throw std::invalid_argument("cannot add open and closed simple functions");
  std::vector<Term> ts = terms_;
  ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
  return SimpleFn(polarity_, std::move(ts));
}

std::string SimpleFn::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += t.coeff.str() + "·" + t.elem.str();
  }
  return s;
}

Region subset_meet(const SimpleFn& s, std::size_t mask) {
  Region r = Region::full();
  for (std::size_t i = 0; i < s.terms().size(); ++i)
    if (mask & (std::size_t{1} << i)) r = r.intersect(s.terms()[i].elem);
  return r;
}

Rational subset_coeff(const SimpleFn& s, std::size_t mask) {
  Rational c(0);
  for (std::size_t i = 0; i < s.terms().size(); ++i)
    if (mask & (std::size_t{1} << i)) c += s.terms()[i].coeff;
  return c;
}

namespace {

struct SubsetTable {
  std::vector<Rational> coeff;  // r_S, indexed by mask
  std::vector<Region> meet;     // x_S, indexed by mask
};

SubsetTable enumerate(const SimpleFn& s, std::size_t guard) {
  const std::size_t n = s.terms().size();
  if (n > guard)
    throw InstanceTooLarge(std::to_string(n) + " terms exceed the subset-enumeration guard of " +
                           std::to_string(guard));
  const std::size_t count = std::size_t{1} << n;
  SubsetTable t;
  t.coeff.resize(count);
  t.meet.resize(count);
  t.coeff[0] = Rational(0);
  t.meet[0] = Region::full();
  for (std::size_t mask = 1; mask < count; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & (mask - 1);
    t.coeff[mask] = t.coeff[rest] + s.terms()[low].coeff;
    t.meet[mask] = t.meet[rest].intersect(s.terms()[low].elem);
  }
  return t;
}

// Answers "union of x_S over all S with r_S >= threshold" by binary search
// over subsets sorted by decreasing coefficient sum.
class UpperLevels {
public:
  explicit UpperLevels(const SubsetTable& t) {
    std::vector<std::size_t> order(t.coeff.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&t](std::size_t a, std::size_t b) { return t.coeff[b] < t.coeff[a]; });
    Region acc;
    for (std::size_t idx : order) {
      acc = acc.unite(t.meet[idx]);
      coeff_.push_back(t.coeff[idx]);
      prefix_.push_back(acc);
    }
  }

  Region at_least(const Rational& threshold) const {
    // coeff_ is decreasing; count entries with coeff >= threshold.
    auto it = std::partition_point(coeff_.begin(), coeff_.end(),
                                   [&threshold](const Rational& c) { return threshold <= c; });
    const auto k = static_cast<std::size_t>(it - coeff_.begin());
    return k == 0 ? Region::empty() : prefix_[k - 1];
  }

private:
  std::vector<Rational> coeff_;
  std::vector<Region> prefix_;
};

bool subset_order(const SimpleFn& u, const SimpleFn& v, std::size_t guard) {
  const SubsetTable tu = enumerate(u, guard);
  const UpperLevels levels(enumerate(v, guard));
  for (std::size_t mask = 1; mask < tu.coeff.size(); ++mask) {
    if (tu.meet[mask].is_empty()) continue;
    if (!tu.meet[mask].subset_of(levels.at_least(tu.coeff[mask]))) return false;
  }
  return true;
}

void require_nonnegative(const PwlFunction& f) {
  if (f.min_value().sign() < 0) throw std::invalid_argument("function must be nonnegative: " + f.str());
}

}  // namespace

bool sf_equal(const SimpleFn& u, const SimpleFn& v, std::size_t guard) {
  if (u.polarity() != v.polarity()) throw std::invalid_argument("sf_equal: mixed polarity");
  const SubsetTable tu = enumerate(u, guard);
  const SubsetTable tv = enumerate(v, guard);
  const UpperLevels lu(tu), lv(tv);
  std::vector<Rational> thresholds;
  for (const auto* t : {&tu, &tv})
    for (const auto& c : t->coeff)
      if (c.sign() > 0) thresholds.push_back(c);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  return std::all_of(thresholds.begin(), thresholds.end(),
                     [&](const Rational& t) { return lu.at_least(t) == lv.at_least(t); });
}

bool sf_leq(const SimpleFn& u, const SimpleFn& v, std::size_t guard) {
  if (u.polarity() != v.polarity()) throw std::invalid_argument("sf_leq: mixed polarity");
  return subset_order(u, v, guard);
}

bool sf_leq_cross(const SimpleFn& l, const SimpleFn& k, std::size_t guard) {
  if (l.polarity() != Polarity::Open || k.polarity() != Polarity::Closed)
    throw std::invalid_argument("sf_leq_cross compares an open sum with a closed sum");
  return subset_order(l, k, guard);
}

bool sf_leq_fn(const SimpleFn& l, const PwlFunction& f, std::size_t guard) {
  if (l.polarity() != Polarity::Open) throw std::invalid_argument("sf_leq_fn needs an open simple function");
  require_nonnegative(f);
  const SubsetTable t = enumerate(l, guard);
  for (std::size_t mask = 1; mask < t.coeff.size(); ++mask) {
    if (t.meet[mask].is_empty()) continue;
    if (!t.meet[mask].intersect(region_where(f, Cmp::Less, t.coeff[mask])).is_empty()) return false;
  }
  return true;
}

bool fn_leq_sf(const PwlFunction& f, const SimpleFn& k, std::size_t guard) {
  require_nonnegative(f);
  const SubsetTable t = enumerate(k, guard);
  Region covered;
  for (std::size_t mask = 0; mask < t.coeff.size(); ++mask) {
    if (t.meet[mask].is_empty()) continue;
    covered = covered.unite(closed_of(f, t.coeff[mask], Side::AtMost).intersect(t.meet[mask]));
    if (covered.is_full()) return true;
  }
  return covered.is_full();
}

Partition::Partition(std::vector<Rational> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("partition needs at least two points");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1] < points_[i])) throw std::invalid_argument("partition points must be strictly increasing");
}

Partition Partition::uniform(const Rational& lo, const Rational& hi, std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("partition needs at least one cell");
  std::vector<Rational> pts;
  const Rational step = (hi - lo) / Rational(static_cast<long>(cells));
  for (std::size_t i = 0; i <= cells; ++i) pts.push_back(lo + step * Rational(static_cast<long>(i)));
  return Partition(std::move(pts));
}

Rational Partition::mesh() const {
  Rational m(0);
  for (std::size_t i = 1; i < points_.size(); ++i) m = max(m, points_[i] - points_[i - 1]);
  return m;
}

std::string Partition::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < points_.size(); ++i) s += (i ? ", " : "") + points_[i].str();
  return s + "}";
}

Sandwich partition_sandwich(const PwlFunction& f, const Partition& p) {
  require_nonnegative(f);
  if (p.back() < f.max_value())
    throw std::invalid_argument("function exceeds partition range " + p.back().str());
  std::vector<Term> lower, upper;
  const auto& s = p.points();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i].sign() > 0) {
      Region x = region_where(f, Cmp::Greater, s[i]).intersect(region_where(f, Cmp::Less, s[i + 1]));
      if (!x.is_empty()) lower.push_back({s[i], std::move(x)});
    }
    if (s[i + 1].sign() > 0) {
      Region y = closed_of(f, s[i], Side::AtLeast).intersect(closed_of(f, s[i + 1], Side::AtMost));
      if (!y.is_empty()) upper.push_back({s[i + 1], std::move(y)});
    }
  }
  return {SimpleFn(Polarity::Open, std::move(lower)), SimpleFn(Polarity::Closed, std::move(upper))};
}

PwlFunction urysohn(const PwlFunction& a, const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("urysohn needs eps > 0");
  require_nonnegative(a);
  return (Rational(1) / eps) * meet(a, PwlFunction::constant(eps));
}

}  // namespace riesz
