#include <doctest.h>

#include <stdexcept>

#include "gen.hpp"
#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/simple_fns.hpp"
#include "riesz/spectrum.hpp"

using namespace riesz;
using testing::step_equal;
using testing::step_leq;

namespace {

const Rational half(1, 2), quarter(1, 4);
const PwlFunction x = PwlFunction::identity();

Region O(const Rational& a, const Rational& b) { return Region::open(a, b); }
Region C(const Rational& a, const Rational& b) { return Region::closed(a, b); }
SimpleFn open_sum(std::vector<Term> ts) { return SimpleFn(Polarity::Open, std::move(ts)); }
SimpleFn closed_sum(std::vector<Term> ts) { return SimpleFn(Polarity::Closed, std::move(ts)); }

SimpleFn random_sum(testing::Gen& g, Polarity pol, int max_terms) {
  std::vector<Term> ts;
  const int n = static_cast<int>(g.integer(0, max_terms));
  for (int i = 0; i < n; ++i) {
    Rational a = g.rational(Rational(0), Rational(1), 8), b = g.rational(Rational(0), Rational(1), 8);
    if (b < a) std::swap(a, b);
    Region r = pol == Polarity::Open ? Region::interval(a, b, a.sign() == 0 && a < b, b == Rational(1) && a < b)
                                     : Region::closed(a, b);
    ts.push_back({g.rational(Rational(1, 4), Rational(2), 4), std::move(r)});
  }
  return SimpleFn(pol, std::move(ts));
}

}  // namespace

TEST_CASE("construction rules") {
  CHECK_THROWS_AS(open_sum({{Rational(0), O(Rational(0), half)}}), std::invalid_argument);
  CHECK_THROWS_AS(open_sum({{Rational(1), C(Rational(0), half)}}), std::invalid_argument);
  CHECK_THROWS_AS(closed_sum({{Rational(1), O(Rational(0), half)}}), std::invalid_argument);
  CHECK(SimpleFn::zero(Polarity::Open).is_zero_sum());
  CHECK(open_sum({{half, O(Rational(0), half)}, {Rational(1), O(half, Rational(1))}}).str() ==
        "1/2·(0,1/2) + 1·(1/2,1)");
}

TEST_CASE("sf_equal examples") {
  const Region xr = O(Rational(0), half), yr = O(quarter, Rational(3, 4));
  CHECK(sf_equal(open_sum({{Rational(1), xr}, {Rational(1), yr}}),
                 open_sum({{Rational(1), O(Rational(0), Rational(3, 4))}, {Rational(1), O(quarter, half)}})));
  CHECK(sf_equal(open_sum({{Rational(2), O(Rational(0), Rational(1))}}),
                 open_sum({{Rational(1), O(Rational(0), Rational(1))}, {Rational(1), O(Rational(0), Rational(1))}})));
  CHECK_FALSE(sf_equal(open_sum({{Rational(1), O(Rational(0), half)}, {Rational(1), O(half, Rational(1))}}),
                       open_sum({{Rational(1), O(Rational(0), Rational(1))}})));
  CHECK_THROWS_AS(sf_equal(open_sum({}), closed_sum({})), std::invalid_argument);
}

TEST_CASE("sf_leq examples") {
  const Region unit = O(Rational(0), Rational(1));
  CHECK(sf_leq(open_sum({{half, unit}}), open_sum({{Rational(1), unit}})));
  CHECK_FALSE(sf_leq(open_sum({{Rational(1), unit}}), open_sum({{half, unit}})));
  const SimpleFn u = open_sum({{Rational(1), O(Rational(0), half)}, {Rational(1), O(quarter, Rational(3, 4))}});
  CHECK(sf_leq(u, u));
  CHECK(sf_leq(u, open_sum({{Rational(2), O(Rational(0), Rational(3, 4))}})));
  CHECK_THROWS_AS(sf_leq(open_sum({}), closed_sum({})), std::invalid_argument);
}

TEST_CASE("term guard") {
  std::vector<Term> many;
  for (int i = 0; i < 13; ++i) many.push_back({Rational(1), O(Rational(0), half)});
  const SimpleFn big = open_sum(many);
  CHECK_THROWS_AS(sf_leq(big, big), InstanceTooLarge);
  CHECK(sf_leq(big, big, 13));
}

TEST_CASE("sf_leq_fn and fn_leq_sf examples") {
  CHECK(sf_leq_fn(open_sum({{half, open_of(x - half).region()}}), x));
  CHECK_FALSE(sf_leq_fn(open_sum({{Rational(1), Region::interval(Rational(0), Rational(1), false, true)}}), x));
  CHECK(sf_leq_fn(SimpleFn::zero(Polarity::Open), x));
  CHECK(fn_leq_sf(x, closed_sum({{Rational(1), Region::full()}})));
  CHECK_FALSE(fn_leq_sf(x, closed_sum({{half, Region::full()}})));
  const Sandwich s = partition_sandwich(x, Partition({Rational(0), half, Rational(1)}));
  CHECK(fn_leq_sf(x, s.upper));
  CHECK_THROWS_AS(sf_leq_fn(open_sum({}), x - half), std::invalid_argument);
}

TEST_CASE("partition_sandwich examples") {
  const Sandwich s = partition_sandwich(x, Partition({Rational(0), half, Rational(1)}));
  REQUIRE(s.lower.terms().size() == 1);
  CHECK(s.lower.terms()[0].coeff == half);
  CHECK(s.lower.terms()[0].elem == O(half, Rational(1)));
  REQUIRE(s.upper.terms().size() == 2);
  CHECK(s.upper.terms()[0].coeff == half);
  CHECK(s.upper.terms()[0].elem == C(Rational(0), half));
  CHECK(s.upper.terms()[1].coeff == Rational(1));
  CHECK(s.upper.terms()[1].elem == C(half, Rational(1)));

  const Sandwich z = partition_sandwich(PwlFunction::constant(Rational(0)), Partition::uniform(Rational(0), Rational(1), 4));
  CHECK(z.lower.is_zero_sum());
  REQUIRE(z.upper.terms().size() == 1);
  CHECK(z.upper.terms()[0].coeff == quarter);
  CHECK(z.upper.terms()[0].elem.is_full());

  CHECK_THROWS_AS(partition_sandwich(Rational(2) * x, Partition::uniform(Rational(0), Rational(1), 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(partition_sandwich(x - half, Partition::uniform(Rational(0), Rational(1), 4)),
                  std::invalid_argument);
}

TEST_CASE("urysohn examples") {
  const PwlFunction u = urysohn(x, half);
  CHECK(u == Rational(2) * meet(x, PwlFunction::constant(half)));
  CHECK(open_of(x - half).region().subset_of(region_where(u, Cmp::GreaterEq, Rational(1))));
  CHECK(urysohn(PwlFunction::constant(Rational(1)), half) == PwlFunction::constant(Rational(1)));
  const PwlFunction plateau = urysohn(parse_pwl("pwl (0,0) (1/2,1/2) (1,0)"), quarter);
  CHECK(region_where(plateau, Cmp::GreaterEq, Rational(1)) == C(quarter, Rational(3, 4)));
  CHECK_THROWS_AS(urysohn(x, Rational(0)), std::invalid_argument);
}

TEST_CASE("partition") {
  const Partition p = Partition::uniform(Rational(0), Rational(2), 4);
  CHECK(p.cells() == 4);
  CHECK(p.mesh() == half);
  CHECK(p.str() == "{0, 1/2, 1, 3/2, 2}");
  CHECK_THROWS_AS(Partition({Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({Rational(0), Rational(0)}), std::invalid_argument);
}

TEST_CASE("property: orders agree with step-function semantics") {
  testing::Gen g(41);
  for (int i = 0; i < 300; ++i) {
    const Polarity pol = g.coin() ? Polarity::Open : Polarity::Closed;
    const SimpleFn u = random_sum(g, pol, 4), v = random_sum(g, pol, 4), w = random_sum(g, pol, 3);
    CHECK(sf_leq(u, v) == step_leq(u, v));
    CHECK(sf_equal(u, v) == step_equal(u, v));
    CHECK(sf_equal(u.plus(v), v.plus(u)));
    CHECK(sf_leq(u.plus(w), v.plus(w)) == sf_leq(u, v));
    if (sf_leq(u, v) && sf_leq(v, w)) CHECK(sf_leq(u, w));
  }
}

TEST_CASE("property: cancellation") {
  testing::Gen g(42);
  for (int i = 0; i < 200; ++i) {
    const SimpleFn u = random_sum(g, Polarity::Open, 4);
    bool all_empty = true;
    for (const auto& t : u.terms()) all_empty = all_empty && t.elem.is_empty();
    const Rational k = g.rational(Rational(1, 4), Rational(3), 4);
    CHECK(sf_leq(u.scaled(k), SimpleFn::zero(Polarity::Open)) == all_empty);
  }
}

TEST_CASE("property: sandwiches and gluing") {
  testing::Gen g(43);
  for (int i = 0; i < 60; ++i) {
    const PwlFunction f = g.pwl(2, Rational(0), Rational(1), 6);
    const PwlFunction h = g.pwl(2, Rational(0), Rational(1), 6);
    const Partition p = Partition::uniform(Rational(0), Rational(1), static_cast<std::size_t>(g.integer(1, 5)));
    const Sandwich s = partition_sandwich(f, p);
    CHECK(sf_leq_fn(s.lower, f));
    CHECK(fn_leq_sf(f, s.upper));
    CHECK(sf_leq_cross(s.lower, s.upper));
    CHECK(step_leq(s.lower, s.upper));
    // A smaller open sum stays below f.
    const SimpleFn smaller = s.lower.scaled(Rational(1, 2));
    if (sf_leq(smaller, s.lower)) CHECK(sf_leq_fn(smaller, f));
    // Lower sandwiches add.
    const Sandwich t = partition_sandwich(h, p);
    if (s.lower.terms().size() + t.lower.terms().size() <= kDefaultTermGuard)
      CHECK(sf_leq_fn(s.lower.plus(t.lower), f + h));
  }
}
