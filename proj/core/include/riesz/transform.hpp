#pragma once

// The two interpretation maps between integrals and valuations.
//
// valuation_of_integral: μ_I(D(a)) = sup_n I(n·a⁺ ∧ 1).
// integral_of_valuation: I_μ(f) is cut by Stieltjes sums over partitions
// whose points avoid the atoms of s ↦ μ(f < s). The partitions come from a
// budgeted search (find_flat_interval) that only ever asks the valuation
// for lower bounds.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "riesz/measures.hpp"
#include "riesz/pwl.hpp"
#include "riesz/reals.hpp"
#include "riesz/simple_fns.hpp"

namespace riesz {

Valuation valuation_of_integral(const Integral& I);
/// The rational fed into the supremum at index n: the lower endpoint of
/// I(n·a⁺ ∧ 1) read at width 1/n (exactly, for exact integrals). Stage 0 is 0.
Rational stage_value(const Integral& I, const PwlFunction& a, Budget n);

/// A rational or one of the two infinities.
class ExtRational {
public:
  ExtRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT: implicit by design
  ExtRational(long v) : ExtRational(Rational(v)) {}                       // NOLINT
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }
  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }

  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Throws std::logic_error for an infinity.
  const Rational& value() const;
  std::string str() const;

  friend bool operator<(const ExtRational& a, const ExtRational& b);

private:
  enum class Kind { NegInf, Finite, PosInf };
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

/// The distribution data of f under μ. Requires 0 <= f <= b.
class DeltaFn {
public:
  DeltaFn(PwlFunction f, Valuation mu, Rational b);

  const PwlFunction& f() const { return f_; }
  const Valuation& mu() const { return mu_; }
  const Rational& b() const { return b_; }

  /// Δ(−∞, s) and Δ(s, ∞), memoized per point across copies of this DeltaFn.
  LowerReal below(const Rational& s) const;
  LowerReal above(const Rational& s) const;

private:
  struct TailCache;

  PwlFunction f_;
  Valuation mu_;
  Rational b_;
  std::shared_ptr<TailCache> tails_;
};

/// Δ(r,s) = μ(r < f < s). Throws std::invalid_argument unless r < s.
LowerReal delta_open(const DeltaFn& d, const ExtRational& r, const ExtRational& s);
/// Δ[r,s] = 1 − Δ(−∞,r) − Δ(s,∞). Throws std::invalid_argument unless r < s.
UpperReal delta_closed(const DeltaFn& d, const ExtRational& r, const ExtRational& s);
/// Δ[s] = Δ[s,s].
UpperReal delta_point(const DeltaFn& d, const Rational& s);

struct OpenInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  Rational mid() const { return midpoint(lo, hi); }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  std::string str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }
};

/// Limits for budgeted searches. Work is counted in queries (one comparison
/// of Δ approximations at one budget); exceeding either limit throws
/// BudgetExhausted.
struct SearchConfig {
  std::uint64_t work_ceiling = 1'000'000;
  Budget max_budget = Budget{1} << 40;
  /// First budget tried. Searches run in sequence pass their final budget
  /// forward here.
  Budget start_budget = 1;
};

enum class JumpSide { Left, Right };

struct JumpWitness {
  JumpSide side;
  Budget budget;
};

/// With J ≪ Iv and p < q, witnesses Δ(Iv) > p (Left) or Δ[J] < q (Right),
/// doubling the budget until one shows. Right is checked first at each
/// budget. Throws std::invalid_argument on a precondition violation.
JumpWitness decide_jump(const DeltaFn& d, const OpenInterval& J, const OpenInterval& Iv, const Rational& p,
                        const Rational& q, const SearchConfig& cfg = {});

struct FlatInterval {
  OpenInterval interval;
  Budget budget;
  /// Index of the winning candidate among the 2N subintervals of Iv.
  std::uint64_t candidate;
};

/// Returns J ≪ Iv with Δ[J] < 1/N. Iv is cut into 2N equal pieces, each
/// shrunk concentrically by a quarter of its width; candidates are admitted
/// one per round in index order while the budget doubles each round.
FlatInterval find_flat_interval(const DeltaFn& d, const OpenInterval& Iv, std::uint64_t N,
                                const SearchConfig& cfg = {});

struct BuiltPartition {
  Partition partition;
  /// Budget at which Σ Δ[sᵢ] < ε was certified over the interior points.
  Budget budget;
};

/// Partition of [0, b] with mesh < ε and Σ Δ[sᵢ] < ε over interior points.
BuiltPartition build_partition_certified(const DeltaFn& d, const Rational& eps, const SearchConfig& cfg = {});
Partition build_partition(const DeltaFn& d, const Rational& eps, const SearchConfig& cfg = {});

/// Lower Σ sᵢ·Δ(sᵢ, sᵢ₊₁) and upper Σ sᵢ₊₁·Δ[sᵢ, sᵢ₊₁], where the first cell
/// opens at −∞ and the last closes at +∞. Needs front() == 0 and
/// back() >= max f.
std::pair<LowerReal, UpperReal> stieltjes_sums(const DeltaFn& d, const Partition& p);

/// ε′ with ε′(1+ε′) + 2bε′ <= eps.
Rational partition_parameter(const Rational& eps, const Rational& b);

Integral integral_of_valuation(const Valuation& mu, const SearchConfig& cfg = {});
/// I_μ on a single f >= 0.
DedekindReal integrate_positive(const Valuation& mu, const PwlFunction& f, const SearchConfig& cfg = {});

}  // namespace riesz
