#pragma once

// Horn–Tarski formal simple functions Σ rᵢ·xᵢ with positive rational
// coefficients over lattice elements, stored semantically as Regions. All
// elements of one SimpleFn are open (the lattice Spec(R)) or all closed (its
// dual); mixed sums are not representable.
//
// The orders are decided by the subset conditions of the formal theory,
// evaluated with exact region algebra. Subset enumeration is exponential, so
// every entry point enforces a term-count guard.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "riesz/pwl.hpp"
#include "riesz/rational.hpp"
#include "riesz/region.hpp"

namespace riesz {

enum class Polarity { Open, Closed };

struct Term {
  Rational coeff;
  Region elem;
};

class SimpleFn {
public:
  /// Throws std::invalid_argument for a nonpositive coefficient, or for an
  /// element that is not relatively open (Open) / not closed (Closed).
  SimpleFn(Polarity polarity, std::vector<Term> terms);
  static SimpleFn zero(Polarity polarity) { return SimpleFn(polarity, {}); }

  Polarity polarity() const { return polarity_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero_sum() const { return terms_.empty(); }

  /// Sum of coefficients.
  Rational total() const;
  SimpleFn scaled(const Rational& c) const;
  /// Same polarity required.
  SimpleFn plus(const SimpleFn& o) const;

  /// Debug form: `1/2·(0,1/2) + 1·[1/2,1]`.
  std::string str() const;

private:
  Polarity polarity_;
  std::vector<Term> terms_;
};

/// Default subset-enumeration guard (terms per side).
inline constexpr std::size_t kDefaultTermGuard = 12;

/// Level-set equality: for every threshold t, ⋁{x_S : r_S >= t} agree. With
/// coefficients over one denominator this is the level-k join criterion on
/// unit copies, with the copies of a term collapsed into a multiplicity.
bool sf_equal(const SimpleFn& u, const SimpleFn& v, std::size_t guard = kDefaultTermGuard);

/// u <= v iff for every subset I of u's terms, x_I ⊆ ⋁{y_J : r_I <= s_J}.
/// Throws std::invalid_argument for mixed polarity.
bool sf_leq(const SimpleFn& u, const SimpleFn& v, std::size_t guard = kDefaultTermGuard);
/// The same condition between an open l and a closed k (the mixed order
/// used to compare lower and upper sandwiches).
bool sf_leq_cross(const SimpleFn& l, const SimpleFn& k, std::size_t guard = kDefaultTermGuard);

/// l <= f: for every subset I, x_I ∩ {f < r_I} = ∅. Needs l open, f >= 0.
bool sf_leq_fn(const SimpleFn& l, const PwlFunction& f, std::size_t guard = kDefaultTermGuard);
/// f <= k: ⋃_J ({f <= s_J} ∩ y_J) = [0,1], J ranging over all subsets (the
/// empty meet is the whole space). Needs f >= 0.
bool fn_leq_sf(const PwlFunction& f, const SimpleFn& k, std::size_t guard = kDefaultTermGuard);

class Partition {
public:
  /// Throws std::invalid_argument unless strictly increasing with >= 2 points.
  explicit Partition(std::vector<Rational> points);
  /// k equal cells over [lo, hi].
  static Partition uniform(const Rational& lo, const Rational& hi, std::size_t cells);

  const std::vector<Rational>& points() const { return points_; }
  std::size_t cells() const { return points_.size() - 1; }
  const Rational& front() const { return points_.front(); }
  const Rational& back() const { return points_.back(); }
  Rational mesh() const;
  std::string str() const;

private:
  std::vector<Rational> points_;
};

struct Sandwich {
  SimpleFn lower;  // Σ sᵢ·(sᵢ < f < sᵢ₊₁), open
  SimpleFn upper;  // Σ sᵢ₊₁·(sᵢ <= f <= sᵢ₊₁), closed
};

/// Throws std::invalid_argument if f < 0 somewhere or f exceeds the last
/// partition point. Zero coefficients and empty regions are dropped.
Sandwich partition_sandwich(const PwlFunction& f, const Partition& p);

/// (1/eps)·(a ∧ eps). Throws std::invalid_argument unless eps > 0 and a >= 0.
PwlFunction urysohn(const PwlFunction& a, const Rational& eps);

/// Meet of the elements indexed by `mask` (the whole space for mask 0).
Region subset_meet(const SimpleFn& s, std::size_t mask);
/// Sum of the coefficients indexed by `mask`.
Rational subset_coeff(const SimpleFn& s, std::size_t mask);

}  // namespace riesz
