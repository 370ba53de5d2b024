#include "riesz/reals.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "riesz/errors.hpp"

namespace riesz {

namespace {

// Memoized running extremum of a process. Only the budgets at which the
// extremum changes are stored, so deep budgets stay cheap in memory.
class RunningExtreme {
public:
  RunningExtreme(Process seq, bool keep_max) : seq_(std::move(seq)), keep_max_(keep_max) {}

  Rational at(Budget n) {
    std::lock_guard lock(mutex_);
    while (!started_ || computed_ < n) {
      const Budget i = started_ ? computed_ + 1 : 0;
      Rational v = seq_(i);
      if (steps_.empty() || (keep_max_ ? steps_.back().second < v : v < steps_.back().second))
        steps_.emplace_back(i, std::move(v));
      computed_ = i;
      started_ = true;
    }
    auto it = std::upper_bound(steps_.begin(), steps_.end(), n,
                               [](Budget b, const auto& step) { return b < step.first; });
    return std::prev(it)->second;
  }

private:
  Process seq_;
  bool keep_max_;
  std::mutex mutex_;
  bool started_ = false;
  Budget computed_ = 0;
  std::vector<std::pair<Budget, Rational>> steps_;
};

Process checked_lower(Process seq, std::optional<Rational> bound) {
  if (!bound) return seq;
  return [seq = std::move(seq), b = *bound](Budget n) {
    Rational v = seq(n);
    if (b < v)
      throw std::logic_error("lower real approximation " + v.str() + " exceeds its known bound " +
                             b.str());
    return v;
  };
}

Process checked_upper(Process seq, std::optional<Rational> bound) {
  if (!bound) return seq;
  return [seq = std::move(seq), b = *bound](Budget n) {
    Rational v = seq(n);
    if (v < b)
      throw std::logic_error("upper real approximation " + v.str() + " is below its known bound " +
                             b.str());
    return v;
  };
}

std::optional<Rational> add_bounds(const std::optional<Rational>& a,
                                   const std::optional<Rational>& b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

}  // namespace

LowerReal LowerReal::constant(Rational v) {
  LowerReal r;
  r.seq_ = std::make_shared<const Process>([v](Budget) { return v; });
  r.bound_ = v;
  r.exact_ = std::move(v);
  return r;
}

LowerReal LowerReal::from_monotone(Process seq, std::optional<Rational> bound) {
  LowerReal r;
  r.seq_ = std::make_shared<const Process>(checked_lower(std::move(seq), bound));
  r.bound_ = std::move(bound);
  return r;
}

Rational LowerReal::approx(Budget n) const { return (*seq_)(n); }

UpperReal UpperReal::constant(Rational v) {
  UpperReal r;
  r.seq_ = std::make_shared<const Process>([v](Budget) { return v; });
  r.bound_ = v;
  r.exact_ = std::move(v);
  return r;
}

UpperReal UpperReal::from_monotone(Process seq, std::optional<Rational> bound) {
  UpperReal r;
  r.seq_ = std::make_shared<const Process>(checked_upper(std::move(seq), bound));
  r.bound_ = std::move(bound);
  return r;
}

Rational UpperReal::approx(Budget n) const { return (*seq_)(n); }

LowerReal lower_make(Process seq, std::optional<Rational> bound) {
  auto cache = std::make_shared<RunningExtreme>(checked_lower(std::move(seq), bound), true);
  LowerReal r;
  r.seq_ = std::make_shared<const Process>([cache](Budget n) { return cache->at(n); });
  r.bound_ = std::move(bound);
  return r;
}

UpperReal upper_make(Process seq, std::optional<Rational> bound) {
  auto cache = std::make_shared<RunningExtreme>(checked_upper(std::move(seq), bound), false);
  UpperReal r;
  r.seq_ = std::make_shared<const Process>([cache](Budget n) { return cache->at(n); });
  r.bound_ = std::move(bound);
  return r;
}

LowerReal lower_add(const LowerReal& a, const LowerReal& b) {
  if (a.exact_value() && b.exact_value()) return LowerReal::constant(*a.exact_value() + *b.exact_value());
  return LowerReal::from_monotone([a, b](Budget n) { return a.approx(n) + b.approx(n); },
                                  add_bounds(a.known_upper_bound(), b.known_upper_bound()));
}

// Flat rather than a chain of lower_add, so long sums do not nest closures.
LowerReal lower_sum(const std::vector<LowerReal>& terms) {
  Rational exact(0);
  std::optional<Rational> bound = Rational(0);
  std::vector<LowerReal> open;
  for (const auto& t : terms) {
    if (t.exact_value()) exact += *t.exact_value();
    else open.push_back(t);
    bound = add_bounds(bound, t.known_upper_bound());
  }
  if (open.empty()) return LowerReal::constant(exact);
  return LowerReal::from_monotone(
      [exact, open = std::move(open)](Budget n) {
        Rational s = exact;
        for (const auto& t : open) s += t.approx(n);
        return s;
      },
      bound);
}

UpperReal upper_sum(const std::vector<UpperReal>& terms) {
  Rational exact(0);
  std::optional<Rational> bound = Rational(0);
  std::vector<UpperReal> open;
  for (const auto& t : terms) {
    if (t.exact_value()) exact += *t.exact_value();
    else open.push_back(t);
    bound = add_bounds(bound, t.known_lower_bound());
  }
  if (open.empty()) return UpperReal::constant(exact);
  return UpperReal::from_monotone(
      [exact, open = std::move(open)](Budget n) {
        Rational s = exact;
        for (const auto& t : open) s += t.approx(n);
        return s;
      },
      bound);
}

LowerReal lower_scale(const Rational& c, const LowerReal& a) {
  if (c.sign() <= 0) throw std::invalid_argument("lower_scale needs a positive factor, got " + c.str());
  if (a.exact_value()) return LowerReal::constant(c * *a.exact_value());
  std::optional<Rational> bound;
  if (a.known_upper_bound()) bound = c * *a.known_upper_bound();
  return LowerReal::from_monotone([c, a](Budget n) { return c * a.approx(n); }, bound);
}

LowerReal lower_sup_seq(std::function<LowerReal(Budget)> family, std::optional<Rational> bound) {
  return LowerReal::from_monotone(
      [family = std::move(family)](Budget n) {
        Rational best = family(0).approx(n);
        for (Budget i = 1; i <= n; ++i) best = max(best, family(i).approx(n));
        return best;
      },
      std::move(bound));
}

UpperReal upper_add(const UpperReal& a, const UpperReal& b) {
  if (a.exact_value() && b.exact_value()) return UpperReal::constant(*a.exact_value() + *b.exact_value());
  return UpperReal::from_monotone([a, b](Budget n) { return a.approx(n) + b.approx(n); },
                                  add_bounds(a.known_lower_bound(), b.known_lower_bound()));
}

UpperReal upper_scale(const Rational& c, const UpperReal& a) {
  if (c.sign() <= 0) throw std::invalid_argument("upper_scale needs a positive factor, got " + c.str());
  if (a.exact_value()) return UpperReal::constant(c * *a.exact_value());
  std::optional<Rational> bound;
  if (a.known_lower_bound()) bound = c * *a.known_lower_bound();
  return UpperReal::from_monotone([c, a](Budget n) { return c * a.approx(n); }, bound);
}

// U nonincreasing and L nondecreasing make the difference nonincreasing.
UpperReal upper_minus_lower(const UpperReal& u, const LowerReal& l) {
  if (u.exact_value() && l.exact_value()) return UpperReal::constant(*u.exact_value() - *l.exact_value());
  std::optional<Rational> bound;
  if (u.known_lower_bound() && l.known_upper_bound())
    bound = *u.known_lower_bound() - *l.known_upper_bound();
  return UpperReal::from_monotone([u, l](Budget n) { return u.approx(n) - l.approx(n); }, bound);
}

LowerReal negate(const UpperReal& u) {
  if (u.exact_value()) return LowerReal::constant(-*u.exact_value());
  std::optional<Rational> bound;
  if (u.known_lower_bound()) bound = -*u.known_lower_bound();
  return LowerReal::from_monotone([u](Budget n) { return -u.approx(n); }, bound);
}

UpperReal negate(const LowerReal& l) {
  if (l.exact_value()) return UpperReal::constant(-*l.exact_value());
  std::optional<Rational> bound;
  if (l.known_upper_bound()) bound = -*l.known_upper_bound();
  return UpperReal::from_monotone([l](Budget n) { return -l.approx(n); }, bound);
}

DedekindReal::DedekindReal(LowerReal lower, UpperReal upper, GapBound gap)
    : lower_(std::move(lower)), upper_(std::move(upper)), gap_(std::move(gap)) {}

DedekindReal DedekindReal::constant(const Rational& v) {
  return DedekindReal(LowerReal::constant(v), UpperReal::constant(v), [](const Rational&) { return Budget{0}; });
}

RationalInterval DedekindReal::at_budget(Budget n) const {
  RationalInterval iv{lower_.approx(n), upper_.approx(n)};
  if (iv.hi < iv.lo)
    throw CutInversion("lower " + iv.lo.str() + " above upper " + iv.hi.str() + " at budget " +
                       std::to_string(n));
  return iv;
}

RationalInterval DedekindReal::approx(const Rational& eps) const {
  if (eps.sign() <= 0) throw std::invalid_argument("approximation width must be positive");
  const Budget n = gap_(eps);
  RationalInterval iv = at_budget(n);
  if (eps < iv.width())
    throw ConsistencyFailure("gap bound returned budget " + std::to_string(n) + " with width " +
                             iv.width().str() + " > " + eps.str());
  return iv;
}

std::optional<Rational> DedekindReal::exact_value() const {
  if (lower_.exact_value() && upper_.exact_value() && *lower_.exact_value() == *upper_.exact_value())
    return lower_.exact_value();
  return std::nullopt;
}

DedekindReal dedekind_make(LowerReal lower, UpperReal upper, GapBound gap) {
  return DedekindReal(std::move(lower), std::move(upper), std::move(gap));
}

RationalInterval dedekind_approx(const DedekindReal& x, const Rational& eps) { return x.approx(eps); }

// Widths are nonincreasing in the budget, so the larger of the two budgets
// serves both summands.
DedekindReal dedekind_add(const DedekindReal& a, const DedekindReal& b) {
  if (a.exact_value() && b.exact_value()) return DedekindReal::constant(*a.exact_value() + *b.exact_value());
  return DedekindReal(lower_add(a.lower(), b.lower()), upper_add(a.upper(), b.upper()),
                      [a, b](const Rational& eps) {
                        const Rational half = eps / Rational(2);
                        return std::max(a.gap_bound(half), b.gap_bound(half));
                      });
}

DedekindReal dedekind_scale(const Rational& c, const DedekindReal& a) {
  if (c.sign() == 0) return DedekindReal::constant(Rational(0));
  if (a.exact_value()) return DedekindReal::constant(c * *a.exact_value());
  GapBound gap = [a, c](const Rational& eps) { return a.gap_bound(eps / abs(c)); };
  if (c.sign() > 0) return DedekindReal(lower_scale(c, a.lower()), upper_scale(c, a.upper()), gap);
  const Rational m = -c;
  return DedekindReal(negate(upper_scale(m, a.upper())), negate(lower_scale(m, a.lower())), gap);
}

DedekindReal dedekind_sub(const DedekindReal& a, const DedekindReal& b) {
  return dedekind_add(a, dedekind_scale(Rational(-1), b));
}

}  // namespace riesz
