#include <doctest.h>

#include "gen.hpp"
#include "riesz/errors.hpp"
#include "riesz/transform.hpp"

using namespace riesz;

namespace {

const Rational half(1, 2), third(1, 3), quarter(1, 4);
const PwlFunction x = PwlFunction::identity();
const PwlFunction tent = parse_pwl("pwl (0,0) (1/2,1/2) (1,0)");
const Valuation leb = Valuation::lebesgue();

Rational lo(const LowerReal& l) { return l.approx(1); }
Rational up(const UpperReal& u) { return u.approx(1); }

// Lebesgue measure of {t : r < f(t) < s}, one linear segment at a time.
Rational lebesgue_band(const PwlFunction& f, const Rational& r, const Rational& s) {
  Rational total(0);
  const auto pts = f.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational h = pts[i + 1].x - pts[i].x;
    const Rational y0 = pts[i].y, y1 = pts[i + 1].y;
    if (y0 == y1) {
      if (r < y0 && y0 < s) total += h;
      continue;
    }
    const Rational ylo = std::min(y0, y1), yhi = std::max(y0, y1);
    const Rational a = std::max(ylo, r), b = std::min(yhi, s);
    if (a < b) total += h * (b - a) / (yhi - ylo);
  }
  return total;
}

// A valuation that never reports mass anywhere, as a non-exact process.
Valuation silent() {
  return Valuation::custom(
      "silent", [](const BasicOpen&) { return LowerReal::from_monotone([](Budget) { return Rational(0); }, Rational(1)); },
      false);
}

}  // namespace

TEST_CASE("extended rationals") {
  CHECK(ExtRational::neg_inf() < ExtRational(Rational(-1000)));
  CHECK(ExtRational(Rational(5)) < ExtRational::pos_inf());
  CHECK_FALSE(ExtRational::pos_inf() < ExtRational::pos_inf());
  CHECK(ExtRational::neg_inf().str() == "-inf");
  CHECK_THROWS_AS(ExtRational::pos_inf().value(), std::logic_error);
}

TEST_CASE("Δ examples") {
  const DeltaFn d(x, leb, Rational(1));
  CHECK(lo(delta_open(d, quarter, Rational(3, 4))) == half);
  for (const Rational s : {Rational(0), quarter, third, Rational(1)}) CHECK(up(delta_point(d, s)) == Rational(0));
  CHECK(lo(delta_open(d, ExtRational::neg_inf(), ExtRational::pos_inf())) == Rational(1));

  const DeltaFn dd(x, Valuation::dirac(third), Rational(1));
  CHECK(lo(delta_open(dd, quarter, half)) == Rational(1));
  CHECK(lo(delta_open(dd, third, half)) == Rational(0));
  CHECK(lo(delta_open(dd, Rational(0), third)) == Rational(0));
  CHECK(up(delta_point(dd, third)) == Rational(1));
  CHECK(up(delta_closed(dd, third, half)) == Rational(1));
  CHECK(up(delta_closed(dd, Rational(2, 5), half)) == Rational(0));

  CHECK_THROWS_AS(delta_open(d, half, half), std::invalid_argument);
  CHECK_THROWS_AS(delta_closed(d, ExtRational::pos_inf(), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(DeltaFn(x - half, leb, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(DeltaFn(Rational(2) * x, leb, Rational(1)), std::invalid_argument);
}

TEST_CASE("decide_jump") {
  const OpenInterval Iv{Rational(0), Rational(1)}, J{quarter, Rational(3, 4)};
  // Both sides hold here (Δ(Iv) = 1, Δ[J] = 1/2); Right is tried first.
  const JumpWitness w = decide_jump(DeltaFn(x, leb, Rational(1)), J, Iv, half, Rational(3, 4));
  CHECK(w.side == JumpSide::Right);
  // An atom inside J: only Left can hold.
  CHECK(decide_jump(DeltaFn(x, Valuation::dirac(half), Rational(1)), J, Iv, quarter, half).side == JumpSide::Left);
  // No mass near (1/8,1/4): only Right can hold.
  CHECK(decide_jump(DeltaFn(x, Valuation::dirac(half), Rational(1)), OpenInterval{Rational(1, 8), quarter},
                    OpenInterval{Rational(0), Rational(3, 8)}, quarter, half)
            .side == JumpSide::Right);

  const DeltaFn d(x, leb, Rational(1));
  CHECK_THROWS_AS(decide_jump(d, J, Iv, Rational(1), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(decide_jump(d, J, Iv, half, quarter), std::invalid_argument);
  CHECK_THROWS_AS(decide_jump(d, Iv, J, quarter, half), std::invalid_argument);
  CHECK_THROWS_AS(decide_jump(d, OpenInterval{Rational(0), half}, Iv, quarter, half), std::invalid_argument);

  SearchConfig tight;
  tight.max_budget = Budget{1} << 10;
  CHECK_THROWS_AS(decide_jump(DeltaFn(x, silent(), Rational(1)), J, Iv, quarter, half, tight), BudgetExhausted);
}

TEST_CASE("find_flat_interval") {
  const OpenInterval unit{Rational(0), Rational(1)};
  const FlatInterval a = find_flat_interval(DeltaFn(x, leb, Rational(1)), unit, 10);
  // Δ[J] is the length of J here; the guarantee is Δ[J] < 1/N.
  CHECK(up(delta_closed(DeltaFn(x, leb, Rational(1)), a.interval.lo, a.interval.hi)) == a.interval.width());
  CHECK(a.interval.width() < Rational(1, 10));
  CHECK(unit.lo < a.interval.lo);
  CHECK(a.interval.hi < unit.hi);

  const DeltaFn dd(x, Valuation::dirac(third), Rational(1));
  const FlatInterval b = find_flat_interval(dd, unit, 2);
  CHECK_FALSE((b.interval.lo <= third && third <= b.interval.hi));
  CHECK(up(delta_closed(dd, b.interval.lo, b.interval.hi)) < half);

  const DeltaFn dm(x, parse_valuation("mix 1/2 lebesgue ; 1/2 dirac 1/2"), Rational(1));
  const FlatInterval c = find_flat_interval(dm, unit, 4);
  CHECK_FALSE((c.interval.lo <= half && half <= c.interval.hi));
  CHECK(up(delta_closed(dm, c.interval.lo, c.interval.hi)) < quarter);

  CHECK_THROWS_AS(find_flat_interval(dm, unit, 0), std::invalid_argument);
}

TEST_CASE("build_partition") {
  const Rational eps(1, 10);
  const DeltaFn d(x, leb, Rational(1));
  const Partition p = build_partition(d, eps);
  CHECK(p.front() == Rational(0));
  CHECK(p.back() == Rational(1));
  CHECK(p.mesh() < eps);

  const DeltaFn dd(x, Valuation::dirac(third), Rational(1));
  const Partition q = build_partition(dd, eps);
  Rational atoms(0);
  for (std::size_t i = 1; i + 1 < q.points().size(); ++i) {
    CHECK(q.points()[i] != third);
    atoms += up(delta_point(dd, q.points()[i]));
  }
  CHECK(atoms == Rational(0));
  CHECK(q.mesh() < eps);
  CHECK_THROWS_AS(build_partition(d, Rational(0)), std::invalid_argument);
}

TEST_CASE("Stieltjes sums") {
  const DeltaFn d(x, leb, Rational(1));
  const auto [l, u] = stieltjes_sums(d, Partition::uniform(Rational(0), Rational(1), 10));
  CHECK(lo(l) == Rational(9, 20));
  CHECK(up(u) == Rational(11, 20));
  CHECK_THROWS_AS(stieltjes_sums(d, Partition::uniform(Rational(0), half, 2)), std::invalid_argument);
}

TEST_CASE("partition parameter") {
  for (const Rational eps : {Rational(1), Rational(1, 10), Rational(1, 1000)})
    for (const Rational b : {Rational(1), Rational(3), Rational(7, 2)}) {
      const Rational e = partition_parameter(eps, b);
      CHECK(e.sign() > 0);
      CHECK(e * (Rational(1) + e) + Rational(2) * b * e <= eps);
    }
}

TEST_CASE("valuation_of_integral") {
  const PwlFunction ramp = x - half;
  for (Budget n = 2; n <= 40; ++n) {
    CHECK(stage_value(Integral::riemann(), ramp, n) == half - Rational(1) / Rational(2 * static_cast<long>(n)));
    CHECK(stage_value(Integral::riemann(), tent, n) == Rational(1) - Rational(1) / Rational(static_cast<long>(n)));
  }
  CHECK(stage_value(Integral::riemann(), ramp, 1) == Rational(1, 8));
  CHECK(stage_value(Integral::riemann(), ramp, 0) == Rational(0));

  const Valuation mu = valuation_of_integral(Integral::riemann());
  CHECK(mu(open_of(ramp)).approx(100) == Rational(99, 200));
  CHECK(mu(open_of(ramp)).known_upper_bound() == Rational(1));

  const Valuation ev = valuation_of_integral(Integral::eval(Rational(2, 3)));
  CHECK(ev(open_of(ramp)).approx(1000) == Rational(1));
  CHECK(ev(open_of(half - x)).approx(1000) == Rational(0));

  // A non-exact integral still yields a lower real that climbs towards 1/2.
  const Integral blurred = Integral::custom(
      "blurred riemann",
      [](const PwlFunction& f) {
        const Rational v = pwl_riemann(f);
        return DedekindReal(LowerReal::from_monotone([v](Budget n) { return v - Rational(1) / Rational(static_cast<long>(n) + 1); }, v),
                            UpperReal::from_monotone([v](Budget n) { return v + Rational(1) / Rational(static_cast<long>(n) + 1); }, v),
                            [](const Rational& eps) { return static_cast<Budget>((Rational(2) / eps).ceil().get_ui()) + 1; });
      },
      false);
  const Rational got = valuation_of_integral(blurred)(open_of(ramp)).approx(1 << 12);
  CHECK(got <= half);
  CHECK(half - Rational(1, 50) < got);
}

TEST_CASE("integral_of_valuation") {
  const Rational eps(1, 100);
  const RationalInterval a = integral_of_valuation(leb)(x).approx(eps);
  CHECK(a.contains(half));
  CHECK(a.width() <= eps);
  const RationalInterval b = integral_of_valuation(Valuation::dirac(third))(x).approx(eps);
  CHECK(b.contains(third));
  CHECK(b.width() <= eps);
  const DedekindReal one = integral_of_valuation(parse_valuation("mix 1/2 lebesgue ; 1/2 dirac 1/5"))(
      PwlFunction::constant(Rational(1)));
  CHECK(one.exact_value() == Rational(1));
  const RationalInterval c = integral_of_valuation(leb)(x - half).approx(Rational(1, 20));
  CHECK(c.contains(Rational(0)));
  CHECK_THROWS_AS(integrate_positive(leb, x - half), std::invalid_argument);
}

TEST_CASE("property: Δ against independent oracles") {
  testing::Gen g(31);
  for (int i = 0; i < 80; ++i) {
    const PwlFunction f = g.pwl(static_cast<int>(g.integer(0, 3)), Rational(0), Rational(2), 8);
    const DeltaFn d(f, leb, Rational(2));
    Rational r = g.rational(Rational(-1, 2), Rational(5, 2), 8), s = g.rational(Rational(-1, 2), Rational(5, 2), 8);
    if (s < r) std::swap(r, s);
    if (r == s) s += Rational(1, 8);
    CHECK(lo(delta_open(d, r, s)) == lebesgue_band(f, r, s));
    const Rational x0 = g.unit(8);
    const DeltaFn dd(f, Valuation::dirac(x0), Rational(2));
    CHECK(lo(delta_open(dd, r, s)) == Rational(r < f(x0) && f(x0) < s ? 1 : 0));
    CHECK(up(delta_closed(dd, r, s)) == Rational(r <= f(x0) && f(x0) <= s ? 1 : 0));
  }
}

TEST_CASE("property: Δ structure on exact valuations") {
  testing::Gen g(32);
  for (const std::string spec : {"lebesgue", "dirac 1/3", "mix 1/2 lebesgue ; 1/2 dirac 1/2"}) {
    const Valuation mu = parse_valuation(spec);
    for (int i = 0; i < 40; ++i) {
      const PwlFunction f = g.pwl(static_cast<int>(g.integer(0, 3)), Rational(0), Rational(1), 6);
      const DeltaFn d(f, mu, Rational(1));
      std::vector<Rational> pts;
      for (int k = 0; k < 3; ++k) pts.push_back(g.rational(Rational(-1, 4), Rational(5, 4), 8));
      std::sort(pts.begin(), pts.end());
      if (!(pts[0] < pts[1] && pts[1] < pts[2])) continue;
      const Rational r = pts[0], s = pts[1], t = pts[2];
      INFO(spec, " f=", f.str(), " r=", r.str(), " s=", s.str(), " t=", t.str());

      const Rational open_rt = lo(delta_open(d, r, t));
      CHECK(Rational(0) <= open_rt);
      CHECK(open_rt <= Rational(1));
      CHECK(lo(delta_open(d, r, s)) <= open_rt);
      CHECK(open_rt <= up(delta_closed(d, r, t)));
      // Additivity with the atom at s.
      CHECK(lo(delta_open(d, r, s)) + lo(delta_open(d, s, t)) == open_rt - up(delta_point(d, s)));
      // Whole range and tails.
      CHECK(lo(delta_open(d, Rational(-1), Rational(2))) == Rational(1));
      CHECK(lo(delta_open(d, ExtRational::neg_inf(), s)) + up(delta_point(d, s)) +
                lo(delta_open(d, s, ExtRational::pos_inf())) ==
            Rational(1));
      // Inner regularity: some concentric shrink recovers the mass up to 1/64.
      bool found = false;
      for (int k = 2; k <= 40 && !found; ++k) {
        const Rational delta = (t - r) * Rational(1, 1L << k);
        found = open_rt - Rational(1, 64) <= lo(delta_open(d, r + delta, t - delta));
      }
      CHECK(found);
    }
  }
}

TEST_CASE("property: certified partitions close the Stieltjes gap") {
  testing::Gen g(33);
  for (int i = 0; i < 15; ++i) {
    const PwlFunction f = g.pwl(static_cast<int>(g.integer(0, 3)), Rational(0), Rational(1), 6);
    const Valuation mu = i % 3 == 0 ? leb : Valuation::dirac(g.unit(6));
    const Rational eps(1, static_cast<long>(g.integer(4, 12)));
    const DeltaFn d(f, mu, Rational(1));
    const Partition p = build_partition(d, eps);
    const auto [l, u] = stieltjes_sums(d, p);
    CHECK(up(u) - lo(l) <= eps * (Rational(1) + eps) + Rational(2) * eps);
    CHECK(lo(l) <= up(u));
  }
}
