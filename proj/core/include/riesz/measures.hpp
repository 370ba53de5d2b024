#pragma once

// Valuations on Spec(R) and integrals on R, the shipped concrete instances
// (Lebesgue / Dirac / mixtures, Riemann / evaluation / mixtures), and budgeted
// checkers that turn the axioms of both theories into testable contracts.

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "riesz/pwl.hpp"
#include "riesz/reals.hpp"
#include "riesz/simple_fns.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

enum class MeasureKind { Lebesgue, Dirac, Riemann, Eval, Mixture, Derived };

/// Monotone, modular, Scott-continuous map from basic opens to lower reals
/// in [0,1]. Immutable; copies share the underlying closure.
class Valuation {
public:
  using Fn = std::function<LowerReal(const BasicOpen&)>;

  static Valuation lebesgue();
  /// Throws std::invalid_argument outside [0,1].
  static Valuation dirac(const Rational& point);
  /// Weights must be positive and sum to 1.
  static Valuation mixture(std::vector<std::pair<Rational, Valuation>> components);
  /// Wraps an arbitrary map; `exact` promises constant processes.
  static Valuation custom(std::string description, Fn fn, bool exact);

  LowerReal operator()(const BasicOpen& u) const { return fn_(u); }
  MeasureKind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  bool exact() const { return exact_; }

private:
  Valuation(MeasureKind kind, std::string description, Fn fn, bool exact)
      : kind_(kind), description_(std::move(description)), fn_(std::move(fn)), exact_(exact) {}

  MeasureKind kind_;
  std::string description_;
  Fn fn_;
  bool exact_;
};

/// Normalized positive additive functional from R to Dedekind reals.
class Integral {
public:
  using Fn = std::function<DedekindReal(const PwlFunction&)>;

  static Integral riemann();
  static Integral eval(const Rational& point);
  static Integral mixture(std::vector<std::pair<Rational, Integral>> components);
  /// `exact` promises every value is a constant rational.
  static Integral custom(std::string description, Fn fn, bool exact);

  DedekindReal operator()(const PwlFunction& f) const { return fn_(f); }
  MeasureKind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  bool exact() const { return exact_; }

private:
  Integral(MeasureKind kind, std::string description, Fn fn, bool exact)
      : kind_(kind), description_(std::move(description)), fn_(std::move(fn)), exact_(exact) {}

  MeasureKind kind_;
  std::string description_;
  Fn fn_;
  bool exact_;
};

LowerReal val_apply(const Valuation& mu, const BasicOpen& u);

/// Open sums: Σ rᵢ μ(xᵢ). Closed sums: (Σ rᵢ) − μ(Σ rᵢ ¬xᵢ) as an upper real.
using ExtendedValue = std::variant<LowerReal, UpperReal>;
ExtendedValue val_extend_simple(const Valuation& mu, const SimpleFn& s);
LowerReal val_extend_open(const Valuation& mu, const SimpleFn& s);
UpperReal val_extend_closed(const Valuation& mu, const SimpleFn& s);

DedekindReal int_apply(const Integral& I, const PwlFunction& f);
/// I(f) := I(f⁺) − I(f⁻) for a functional only defined on f >= 0.
DedekindReal int_extend_signed(const Integral::Fn& on_positive, const PwlFunction& f);

struct CheckReport {
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// μ(0) = 0, μ(1) = 1, modularity and Spec-order monotonicity over all
/// corpus pairs, and Scott continuity per corpus element, each read at the
/// given budget and tolerance.
CheckReport val_check(const Valuation& mu, const std::vector<BasicOpen>& corpus, Budget budget,
                      const Rational& tol);

/// I(0) = 0, I(1) = 1, additivity, positivity and monotonicity over corpus
/// pairs. Non-exact values are bracketed at width tol/4 (or 2^-20 when tol is
/// zero) and compared as intervals.
CheckReport int_check(const Integral& I, const std::vector<PwlFunction>& corpus, const Rational& tol);

/// `lebesgue` | `dirac <q>` | `mix <w> <spec> ; <w> <spec> ; ...`
Valuation parse_valuation(std::string_view text);
/// `riemann` | `eval <q>` | `mix <w> <spec> ; ...`
Integral parse_integral(std::string_view text);

}  // namespace riesz
