#pragma once

// Constructive reals as explicit rational approximation processes.
//
// A LowerReal is known through a nondecreasing sequence of rational lower
// bounds indexed by a budget; its value is the supremum. An UpperReal is the
// dual. A DedekindReal pairs the two with a gap bound: a map from a target
// width to a budget at which the two approximations are at least that close.
//
// Budget n allows O(n) work in the producing process. Nothing relates a
// budget to an accuracy unless a gap bound says so.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "riesz/rational.hpp"

namespace riesz {

using Budget = std::uint64_t;
using Process = std::function<Rational(Budget)>;

class LowerReal {
public:
  /// Constant process at `v`; `v` is also the known upper bound.
  static LowerReal constant(Rational v);
  /// Trusts `seq` to be nondecreasing already (sums, scalings, and
  /// processes that are monotone by construction).
  static LowerReal from_monotone(Process seq, std::optional<Rational> bound);

  Rational approx(Budget n) const;
  /// Budgeted comparison: true when the budget-n approximation is above p.
  bool exceeds(const Rational& p, Budget n) const { return p < approx(n); }
  const std::optional<Rational>& known_upper_bound() const { return bound_; }
  /// Set for constant processes; lets consumers skip budget searches.
  const std::optional<Rational>& exact_value() const { return exact_; }

private:
  friend LowerReal lower_make(Process seq, std::optional<Rational> bound);
  LowerReal() = default;

  std::shared_ptr<const Process> seq_;
  std::optional<Rational> bound_;
  std::optional<Rational> exact_;
};

class UpperReal {
public:
  static UpperReal constant(Rational v);
  static UpperReal from_monotone(Process seq, std::optional<Rational> bound);

  Rational approx(Budget n) const;
  /// Budgeted comparison: true when the budget-n approximation is below q.
  bool below(const Rational& q, Budget n) const { return approx(n) < q; }
  const std::optional<Rational>& known_lower_bound() const { return bound_; }
  const std::optional<Rational>& exact_value() const { return exact_; }

private:
  friend UpperReal upper_make(Process seq, std::optional<Rational> bound);
  UpperReal() = default;

  std::shared_ptr<const Process> seq_;
  std::optional<Rational> bound_;
  std::optional<Rational> exact_;
};

/// approx(n) = max(seq(0..n)); the bound is recorded and enforced.
LowerReal lower_make(Process seq, std::optional<Rational> bound = std::nullopt);
/// approx(n) = min(seq(0..n)).
UpperReal upper_make(Process seq, std::optional<Rational> bound = std::nullopt);

LowerReal lower_add(const LowerReal& a, const LowerReal& b);
LowerReal lower_sum(const std::vector<LowerReal>& terms);
/// Throws std::invalid_argument unless c > 0.
LowerReal lower_scale(const Rational& c, const LowerReal& a);
/// Diagonal supremum: approx(n) = max over i <= n of family(i).approx(n).
LowerReal lower_sup_seq(std::function<LowerReal(Budget)> family,
                        std::optional<Rational> bound = std::nullopt);

UpperReal upper_add(const UpperReal& a, const UpperReal& b);
UpperReal upper_sum(const std::vector<UpperReal>& terms);
UpperReal upper_scale(const Rational& c, const UpperReal& a);
UpperReal upper_minus_lower(const UpperReal& u, const LowerReal& l);

LowerReal negate(const UpperReal& u);
UpperReal negate(const LowerReal& l);

struct RationalInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

using GapBound = std::function<Budget(const Rational& eps)>;

class DedekindReal {
public:
  DedekindReal(LowerReal lower, UpperReal upper, GapBound gap);
  static DedekindReal constant(const Rational& v);

  const LowerReal& lower() const { return lower_; }
  const UpperReal& upper() const { return upper_; }
  Budget gap_bound(const Rational& eps) const { return gap_(eps); }

  /// Bracket of width <= eps. Throws CutInversion if lower overtakes upper at
  /// the queried budget and ConsistencyFailure if the gap bound under-delivers.
  RationalInterval approx(const Rational& eps) const;
  /// Bracket at an explicit budget (checked for inversion only).
  RationalInterval at_budget(Budget n) const;
  /// Value of a constant real, if this is one.
  std::optional<Rational> exact_value() const;

private:
  LowerReal lower_;
  UpperReal upper_;
  GapBound gap_;
};

DedekindReal dedekind_make(LowerReal lower, UpperReal upper, GapBound gap);
RationalInterval dedekind_approx(const DedekindReal& x, const Rational& eps);

DedekindReal dedekind_add(const DedekindReal& a, const DedekindReal& b);
DedekindReal dedekind_sub(const DedekindReal& a, const DedekindReal& b);
/// Any rational c; negative c swaps the cuts.
DedekindReal dedekind_scale(const Rational& c, const DedekindReal& a);

}  // namespace riesz
