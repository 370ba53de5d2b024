#include <doctest.h>

#include <stdexcept>

#include "gen.hpp"
#include "riesz/errors.hpp"
#include "riesz/pwl.hpp"

using namespace riesz;

namespace {

PwlFunction P(const char* text) { return parse_pwl(text); }

const PwlFunction x = PwlFunction::identity();
const PwlFunction one = PwlFunction::constant(Rational(1));
const PwlFunction tent = P("pwl (0,0) (1/2,1/2) (1,0)");

}  // namespace

TEST_CASE("pwl_make canonicalizes and validates") {
  CHECK(pwl_make({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}) == x);
  CHECK(pwl_make({{Rational(0), Rational(0)}, {Rational(1, 3), Rational(1, 3)}, {Rational(1), Rational(1)}}) == x);
  CHECK(pwl_make({{Rational(0), Rational(1)}, {Rational(1), Rational(1)}}).is_constant());
  CHECK(tent.points().size() == 3);
  CHECK_THROWS_AS(pwl_make({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(pwl_make({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(1)},
                            {Rational(1), Rational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(pwl_make({{Rational(-1), Rational(0)}, {Rational(1), Rational(0)}}), std::invalid_argument);
}

TEST_CASE("parse_pwl reports positions") {
  CHECK(P("pwl (0,0) (1/2,1/2) (1,0)") == tent);
  CHECK(P("  pwl   (0, 1)   (1, 1) ") == one);
  try {
    parse_pwl("pwl (0,0) (1,x)", 3);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 14);
  }
  CHECK_THROWS_AS(parse_pwl("pwl (0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pwl("pwl (0,0) (1,1) junk"), ParseError);
  CHECK(tent.str() == "pwl (0,0) (1/2,1/2) (1,0)");
}

TEST_CASE("linear operations") {
  CHECK((x + (-x)) == PwlFunction::constant(Rational(0)));
  const PwlFunction twice = Rational(2) * tent;
  CHECK(twice(Rational(1, 2)) == Rational(1));
  CHECK(twice.max_value() == Rational(1));
  CHECK((x + Rational(1)) == P("pwl (0,1) (1,2)"));
  CHECK((Rational(1) - x) == P("pwl (0,1) (1,0)"));
}

TEST_CASE("lattice operations") {
  CHECK(join(x, Rational(1) - x) == P("pwl (0,1) (1/2,1/2) (1,1)"));
  CHECK(meet(x, Rational(1) - x) == tent);
  CHECK(pos(x - Rational(1, 2)) == P("pwl (0,0) (1/2,0) (1,1/2)"));
  CHECK(neg_part(x - Rational(1, 2)) == P("pwl (0,1/2) (1/2,0) (1,0)"));
  CHECK(abs(x - Rational(1, 2)) == P("pwl (0,1/2) (1/2,0) (1,1/2)"));
}

TEST_CASE("order, evaluation, bound") {
  CHECK(pwl_leq(x, one));
  CHECK(pwl_leq(tent, x));
  CHECK_FALSE(pwl_leq(x, tent));
  CHECK(pwl_eval(tent, Rational(1, 4)) == Rational(1, 4));
  CHECK_THROWS_AS(pwl_eval(x, Rational(2)), std::out_of_range);
  CHECK(pwl_bound(P("pwl (0,-3/2) (1,2)")) == 2);
  CHECK(pwl_bound(P("pwl (0,-5/2) (1,2)")) == 3);
  CHECK(pwl_bound(PwlFunction::constant(Rational(0))) == 0);
}

TEST_CASE("riemann integral") {
  CHECK(pwl_riemann(one) == Rational(1));
  CHECK(pwl_riemann(x) == Rational(1, 2));
  CHECK(pwl_riemann(tent) == Rational(1, 4));
  CHECK(pwl_riemann(x - Rational(1, 2)) == Rational(0));
}

TEST_CASE("property: Riesz identities on a random corpus") {
  testing::Gen g(2024);
  for (int i = 0; i < 200; ++i) {
    const PwlFunction f = g.pwl(), h = g.pwl(), k = g.pwl();
    const Rational c = g.rational(Rational(1, 10), Rational(3), 10);
    CHECK(f == pos(f) - neg_part(f));
    CHECK(abs(f) == pos(f) + neg_part(f));
    CHECK(f + h == join(f, h) + meet(f, h));
    CHECK(c * join(f, h) == join(c * f, c * h));
    CHECK(pwl_leq(meet(f, h), f));
    CHECK(pwl_leq(f, join(f, h)));
    if (pwl_leq(f, h)) CHECK(pwl_leq(f + k, h + k));
    if (pwl_leq(PwlFunction::constant(Rational(0)), f)) CHECK(pwl_leq(PwlFunction::constant(Rational(0)), c * f));
    const Rational n(static_cast<long>(pwl_bound(f)));
    CHECK(pwl_leq(-n * one, f));
    CHECK(pwl_leq(f, n * one));
  }
}

TEST_CASE("property: riemann is additive, positive, normalized") {
  testing::Gen g(77);
  for (int i = 0; i < 200; ++i) {
    const PwlFunction f = g.pwl(), h = g.pwl();
    CHECK(pwl_riemann(f + h) == pwl_riemann(f) + pwl_riemann(h));
    CHECK(pwl_riemann(Rational(3) * f) == Rational(3) * pwl_riemann(f));
    CHECK(pwl_riemann(abs(f)).sign() >= 0);
  }
}

TEST_CASE("property: pwl_leq agrees with dense sampling") {
  testing::Gen g(91);
  const auto pts = testing::grid(64);
  int disagreements = 0;
  for (int i = 0; i < 150; ++i) {
    // Small perturbations of one function make near-ties common.
    const PwlFunction f = g.pwl(3, Rational(0), Rational(1), 8);
    const PwlFunction h = f + g.pwl(2, Rational(-1, 8), Rational(1, 4), 8);
    bool sampled = true;
    for (const auto& t : pts) sampled = sampled && f(t) <= h(t);
    // Every breakpoint of h − f lies on the sample grid, so sampling is exact
    // for this family.
    if (pwl_leq(f, h) != sampled) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("property: unit_ramp and affine maps match the generic lattice path") {
  testing::Gen g(17);
  const PwlFunction one = PwlFunction::constant(Rational(1));
  for (int i = 0; i < 300; ++i) {
    const PwlFunction f = g.pwl();
    const Rational c = g.rational(Rational(1, 8), Rational(20), 8);
    const PwlFunction want = meet(pwl_make({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}) + c * pos(f), one);
    CHECK(unit_ramp(f, c) == want);
    CHECK(unit_ramp(f, c).points().size() == want.points().size());
    const Rational k = g.rational(Rational(-2), Rational(2), 6);
    std::vector<std::pair<Rational, Rational>> scaled, shifted, reflected;
    for (const auto& p : f.points()) {
      scaled.emplace_back(p.x, k * p.y);
      shifted.emplace_back(p.x, p.y + k);
      reflected.emplace_back(p.x, k - p.y);
    }
    CHECK(k * f == pwl_make(scaled));
    CHECK((k * f).points().size() == pwl_make(scaled).points().size());
    CHECK(f + k == pwl_make(shifted));
    CHECK(k - f == pwl_make(reflected));
  }
  CHECK_THROWS_AS(unit_ramp(PwlFunction::identity(), Rational(0)), std::invalid_argument);
}
