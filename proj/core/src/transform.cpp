#include "riesz/transform.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

namespace {

Rational from_budget(Budget n) { return Rational(mpz_class(std::to_string(n))); }

Rational pow2_inverse(unsigned j) {
  mpz_class den(1);
  den <<= j;
  return Rational(1) / Rational(den);
}

}  // namespace

Rational stage_value(const Integral& I, const PwlFunction& a, Budget n) {
  if (n == 0) return Rational(0);
  const Rational scale = from_budget(n);
  const DedekindReal x = I(unit_ramp(a, scale));
  if (auto v = x.exact_value()) return *v;
  return x.approx(Rational(1) / scale).lo;
}

// Exact positive integrals give stages that already increase with n. For the
// rest only the dyadic stages are read, under a running maximum, so budget n
// costs log n integral evaluations rather than n.
Valuation valuation_of_integral(const Integral& I) {
  auto fn = [I](const BasicOpen& u) -> LowerReal {
    if (u.region().is_empty()) return LowerReal::constant(Rational(0));
    const PwlFunction a = u.rep();
    if (I.exact())
      return LowerReal::from_monotone([I, a](Budget n) { return stage_value(I, a, n); }, Rational(1));
    LowerReal dyadic = lower_make(
        [I, a](Budget m) { return m == 0 ? Rational(0) : stage_value(I, a, Budget{1} << (m - 1)); }, Rational(1));
    return LowerReal::from_monotone(
        [dyadic](Budget n) { return dyadic.approx(static_cast<Budget>(std::bit_width(n))); }, Rational(1));
  };
  return Valuation::custom("valuation of (" + I.description() + ")", std::move(fn), false);
}

const Rational& ExtRational::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("value() of an infinite bound");
  return value_;
}

std::string ExtRational::str() const {
  switch (kind_) {
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "+inf";
    default:
      return value_.str();
  }
}

bool operator<(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  return a.kind_ == ExtRational::Kind::Finite && a.value_ < b.value_;
}

struct DeltaFn::TailCache {
  std::mutex mutex;
  std::map<Rational, LowerReal> below;
  std::map<Rational, LowerReal> above;
};

DeltaFn::DeltaFn(PwlFunction f, Valuation mu, Rational b)
    : f_(std::move(f)), mu_(std::move(mu)), b_(std::move(b)), tails_(std::make_shared<TailCache>()) {
  if (f_.min_value().sign() < 0) throw std::invalid_argument("Δ needs f >= 0, got " + f_.str());
  if (b_.sign() <= 0 || b_ < f_.max_value())
    throw std::invalid_argument("range bound " + b_.str() + " does not dominate " + f_.str());
}

LowerReal DeltaFn::below(const Rational& s) const {
  {
    std::lock_guard lock(tails_->mutex);
    if (auto it = tails_->below.find(s); it != tails_->below.end()) return it->second;
  }
  LowerReal v = mu_(open_of(s - f_));
  std::lock_guard lock(tails_->mutex);
  return tails_->below.emplace(s, std::move(v)).first->second;
}

LowerReal DeltaFn::above(const Rational& s) const {
  {
    std::lock_guard lock(tails_->mutex);
    if (auto it = tails_->above.find(s); it != tails_->above.end()) return it->second;
  }
  LowerReal v = mu_(open_of(f_ - s));
  std::lock_guard lock(tails_->mutex);
  return tails_->above.emplace(s, std::move(v)).first->second;
}

namespace {

void require_ordered(const ExtRational& r, const ExtRational& s) {
  if (!(r < s)) throw std::invalid_argument("Δ needs r < s, got " + r.str() + " and " + s.str());
}

// Generator of the basic open (r < f < s), with infinite ends dropped.
PwlFunction band(const DeltaFn& d, const ExtRational& r, const ExtRational& s) {
  const PwlFunction& f = d.f();
  if (r.is_neg_inf() && s.is_pos_inf()) return PwlFunction::constant(Rational(1));
  if (r.is_neg_inf()) return s.value() - f;
  if (s.is_pos_inf()) return f - r.value();
  return meet(f - r.value(), s.value() - f);
}

// Δ(−∞, r) + Δ(s, ∞): the mass outside [r, s].
LowerReal outside_mass(const DeltaFn& d, const ExtRational& r, const ExtRational& s) {
  std::vector<LowerReal> parts;
  if (!r.is_neg_inf()) parts.push_back(d.below(r.value()));
  if (!s.is_pos_inf()) parts.push_back(d.above(s.value()));
  return lower_sum(parts);
}

bool both_exact(const LowerReal& a, const LowerReal& b) { return a.exact_value() && b.exact_value(); }

Budget next_budget(Budget b, const SearchConfig& cfg, const std::string& what) {
  if (b > cfg.max_budget / 2) throw BudgetExhausted(what + " passed budget " + std::to_string(cfg.max_budget));
  return b * 2;
}

}  // namespace

LowerReal delta_open(const DeltaFn& d, const ExtRational& r, const ExtRational& s) {
  require_ordered(r, s);
  if (r.is_neg_inf() && s.is_finite()) return d.below(s.value());
  if (s.is_pos_inf() && r.is_finite()) return d.above(r.value());
  return d.mu()(open_of(band(d, r, s)));
}

UpperReal delta_closed(const DeltaFn& d, const ExtRational& r, const ExtRational& s) {
  require_ordered(r, s);
  return upper_minus_lower(UpperReal::constant(Rational(1)), outside_mass(d, r, s));
}

UpperReal delta_point(const DeltaFn& d, const Rational& s) {
  return upper_minus_lower(UpperReal::constant(Rational(1)), outside_mass(d, s, s));
}

namespace {

// One decide_jump contest, queried one budget at a time.
struct Contest {
  LowerReal inner;    // Δ(Iv)
  LowerReal outside;  // Δ(−∞, r′) + Δ(s′, ∞)
  Rational p;
  Rational complement_q;  // 1 − q

  std::optional<JumpSide> query(Budget n) const {
    if (complement_q < outside.approx(n)) return JumpSide::Right;
    if (p < inner.approx(n)) return JumpSide::Left;
    if (both_exact(inner, outside))
      throw ConsistencyFailure("neither Δ(I) > " + p.str() + " nor outside mass > " + complement_q.str() +
                               " although both are exact; the valuation is not modular or monotone");
    return std::nullopt;
  }
};

Contest make_contest(const DeltaFn& d, const OpenInterval& J, const OpenInterval& Iv, const Rational& p,
                     const Rational& q) {
  return {delta_open(d, Iv.lo, Iv.hi), outside_mass(d, J.lo, J.hi), p, Rational(1) - q};
}

}  // namespace

JumpWitness decide_jump(const DeltaFn& d, const OpenInterval& J, const OpenInterval& Iv, const Rational& p,
                        const Rational& q, const SearchConfig& cfg) {
  if (!(Iv.lo < J.lo && J.lo < J.hi && J.hi < Iv.hi))
    throw std::invalid_argument("decide_jump needs " + J.str() + " well inside " + Iv.str());
  if (!(p < q)) throw std::invalid_argument("decide_jump needs p + (1 − q) < 1, got p=" + p.str() + ", q=" + q.str());
  const Contest c = make_contest(d, J, Iv, p, q);
  Budget n = std::max<Budget>(1, cfg.start_budget);
  for (std::uint64_t work = 1;; ++work) {
    if (auto side = c.query(n)) return {*side, n};
    if (work >= cfg.work_ceiling)
      throw BudgetExhausted("decide_jump used " + std::to_string(work) + " queries");
    n = next_budget(n, cfg, "decide_jump");
  }
}

FlatInterval find_flat_interval(const DeltaFn& d, const OpenInterval& Iv, std::uint64_t N, const SearchConfig& cfg) {
  if (N == 0) throw std::invalid_argument("find_flat_interval needs N >= 1");
  if (!(Iv.lo < Iv.hi)) throw std::invalid_argument("empty interval " + Iv.str());
  const std::uint64_t count = 2 * N;
  const Rational w = Iv.width() / from_budget(count);
  const Rational margin = w / Rational(4);
  const Rational p = Rational(1) / from_budget(count);
  const Rational q = Rational(1) / from_budget(N);

  struct Candidate {
    std::uint64_t index;
    OpenInterval j;
    Contest contest;
  };
  auto admit = [&](std::uint64_t i) {
    const Rational lo = Iv.lo + w * from_budget(i);
    const OpenInterval outer{lo, lo + w};
    const OpenInterval inner{outer.lo + margin, outer.hi - margin};
    return Candidate{i, inner, make_contest(d, inner, outer, p, q)};
  };

  std::vector<Candidate> active;
  std::uint64_t next = 0;
  std::uint64_t work = 0;
  Budget n = std::max<Budget>(1, cfg.start_budget);
  while (true) {
    if (next < count) active.push_back(admit(next++));
    std::vector<Candidate> kept;
    std::size_t pos = 0;
    while (pos < active.size()) {
      Candidate& c = active[pos++];
      if (++work > cfg.work_ceiling)
        throw BudgetExhausted("find_flat_interval used " + std::to_string(cfg.work_ceiling) + " queries");
      const auto side = c.contest.query(n);
      if (side == JumpSide::Right) return {c.j, n, c.index};
      if (!side) kept.push_back(std::move(c));
      // A fully discarded round admits the next candidate at the same budget.
      if (pos == active.size() && kept.empty() && next < count) active.push_back(admit(next++));
    }
    active = std::move(kept);
    if (active.empty() && next == count)
      throw ConsistencyFailure("all " + std::to_string(count) + " disjoint pieces of " + Iv.str() +
                               " carry mass above " + p.str() + "; total mass exceeds 1");
    n = next_budget(n, cfg, "find_flat_interval");
  }
}

BuiltPartition build_partition_certified(const DeltaFn& d, const Rational& eps, const SearchConfig& cfg) {
  if (eps.sign() <= 0) throw std::invalid_argument("build_partition needs eps > 0");
  const Rational& b = d.b();
  const std::uint64_t k = std::max<std::uint64_t>(1, to_u64_saturating((Rational(2) * b / eps).ceil()));
  if (k > cfg.work_ceiling)
    throw BudgetExhausted(std::to_string(k) + " partition cells exceed the work ceiling");
  const std::uint64_t N = to_u64_saturating((Rational(2) * from_budget(k) / eps).ceil());
  const Rational h = b / from_budget(k);
  const Rational reach = h / Rational(4);

  std::vector<Rational> points{Rational(0)};
  std::vector<UpperReal> atoms;
  SearchConfig search = cfg;
  for (std::uint64_t i = 1; i < k; ++i) {
    const Rational centre = h * from_budget(i);
    const FlatInterval flat = find_flat_interval(d, {centre - reach, centre + reach}, N, search);
    search.start_budget = flat.budget;
    points.push_back(flat.interval.mid());
    atoms.push_back(delta_point(d, points.back()));
  }
  points.push_back(b);

  const UpperReal total = upper_sum(atoms);
  Budget n = std::max<Budget>(1, search.start_budget);
  if (total.exact_value()) {
    if (!(*total.exact_value() < eps))
      throw ConsistencyFailure("interior atoms sum to " + total.exact_value()->str() + " >= " + eps.str());
  } else {
    while (!total.below(eps, n)) n = next_budget(n, cfg, "partition certification");
  }
  return {Partition(std::move(points)), n};
}

Partition build_partition(const DeltaFn& d, const Rational& eps, const SearchConfig& cfg) {
  return build_partition_certified(d, eps, cfg).partition;
}

// With A_j = Δ(−∞, s_j) and B_j = Δ(s_j, ∞) at interior points, cell i has
// Δ(s_i, s_{i+1}) on the lower side (B_{m−1} for the last cell) and
// Δ[s_i, s_{i+1}] = 1 − A_i − B_{i+1} on the upper side, dropping A_0 and B_m.
std::pair<LowerReal, UpperReal> stieltjes_sums(const DeltaFn& d, const Partition& p) {
  const auto& s = p.points();
  if (s.front().sign() != 0) throw std::invalid_argument("Stieltjes partitions start at 0, got " + p.str());
  if (s.back() < d.f().max_value())
    throw std::invalid_argument("partition " + p.str() + " stops below max f = " + d.f().max_value().str());
  const std::size_t m = p.cells();
  const auto inf = ExtRational::pos_inf();

  std::vector<LowerReal> lower_terms, upper_defect;
  Rational upper_total(0);
  for (std::size_t i = 0; i < m; ++i) {
    upper_total += s[i + 1];
    if (i > 0) {
      const ExtRational hi = i + 1 == m ? inf : ExtRational(s[i + 1]);
      lower_terms.push_back(lower_scale(s[i], delta_open(d, s[i], hi)));
      upper_defect.push_back(lower_scale(s[i + 1], d.below(s[i])));
    }
    if (i + 1 < m) upper_defect.push_back(lower_scale(s[i + 1], d.above(s[i + 1])));
  }
  return {lower_sum(lower_terms),
          upper_minus_lower(UpperReal::constant(upper_total), lower_sum(upper_defect))};
}

Rational partition_parameter(const Rational& eps, const Rational& b) {
  if (eps.sign() <= 0) throw std::invalid_argument("partition parameter needs eps > 0");
  return eps / (Rational(1) + Rational(2) * b + eps);
}

namespace {

// Level j brackets I_μ(f) within 2^-j. Levels are computed once and shared
// by the lower and upper processes.
class LevelCache {
public:
  LevelCache(DeltaFn d, SearchConfig cfg) : d_(std::move(d)), cfg_(cfg) {}

  // Levels are always computed in increasing order, each starting its
  // searches at the budgets the previous level finished with, so results do
  // not depend on the order of requests.
  RationalInterval level(unsigned j) {
    std::lock_guard lock(mutex_);
    while (levels_.size() <= j) levels_.push_back(compute(static_cast<unsigned>(levels_.size())));
    return levels_[j];
  }

private:
  RationalInterval compute(unsigned j) {
    // Exact valuations give exact sums, so the certificate alone meets the
    // target; otherwise half of it is left for the approximation error.
    const Rational target = pow2_inverse(j);
    const Rational eps = partition_parameter(d_.mu().exact() ? target : target / Rational(2), d_.b());
    SearchConfig cfg = cfg_;
    cfg.start_budget = std::max(cfg.start_budget, search_budget_);
    const BuiltPartition built = build_partition_certified(d_, eps, cfg);
    search_budget_ = built.budget;
    const auto [lower, upper] = stieltjes_sums(d_, built.partition);
    Budget n = std::max(built.budget, sum_budget_);
    while (true) {
      RationalInterval iv{lower.approx(n), upper.approx(n)};
      if (iv.hi < iv.lo)
        throw CutInversion("Stieltjes lower sum " + iv.lo.str() + " above upper sum " + iv.hi.str() +
                           " on " + built.partition.str());
      if (iv.width() <= target) {
        sum_budget_ = n;
        return iv;
      }
      if (lower.exact_value() && upper.exact_value())
        throw ConsistencyFailure("exact Stieltjes gap " + iv.width().str() + " exceeds " + target.str());
      n = next_budget(n, cfg_, "Stieltjes sums");
    }
  }

  DeltaFn d_;
  SearchConfig cfg_;
  std::mutex mutex_;
  std::vector<RationalInterval> levels_;
  Budget search_budget_ = 1;
  Budget sum_budget_ = 1;
};

unsigned level_of(Budget n) { return n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n) - 1); }

}  // namespace

DedekindReal integrate_positive(const Valuation& mu, const PwlFunction& f, const SearchConfig& cfg) {
  if (f.min_value().sign() < 0) throw std::invalid_argument("integrate_positive needs f >= 0, got " + f.str());
  if (f.is_constant()) return DedekindReal::constant(f.min_value());
  const Rational b(static_cast<long>(std::max<std::uint64_t>(1, pwl_bound(f))));
  auto cache = std::make_shared<LevelCache>(DeltaFn(f, mu, b), cfg);
  LowerReal lo = lower_make([cache](Budget m) { return cache->level(static_cast<unsigned>(m)).lo; }, b);
  UpperReal hi = upper_make([cache](Budget m) { return cache->level(static_cast<unsigned>(m)).hi; }, Rational(0));
  return DedekindReal(
      LowerReal::from_monotone([lo](Budget n) { return lo.approx(level_of(n)); }, b),
      UpperReal::from_monotone([hi](Budget n) { return hi.approx(level_of(n)); }, Rational(0)),
      [](const Rational& eps) {
        for (unsigned j = 0; j < 63; ++j)
          if (pow2_inverse(j) <= eps) return Budget{1} << j;
        throw BudgetExhausted("requested width " + eps.str() + " is below 2^-62");
      });
}

Integral integral_of_valuation(const Valuation& mu, const SearchConfig& cfg) {
  auto on_positive = [mu, cfg](const PwlFunction& g) { return integrate_positive(mu, g, cfg); };
  return Integral::custom("integral of (" + mu.description() + ")",
                          [on_positive](const PwlFunction& f) { return int_extend_signed(on_positive, f); }, false);
}

}  // namespace riesz
