#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "riesz/measures.hpp"
#include "riesz/region.hpp"
#include "riesz/simple_fns.hpp"
#include "riesz/spectrum.hpp"
#include "riesz/transform.hpp"

namespace riesz::cli {

namespace {

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success
};

std::string expect(bool ok, const std::string& detail) { return ok ? std::string() : detail; }

std::vector<BasicOpen> open_corpus() {
  std::vector<BasicOpen> out;
  for (const auto& a : default_open_corpus()) out.push_back(open_of(a));
  return out;
}

std::vector<Check> checks() {
  const Rational half(1, 2), third(1, 3);
  const PwlFunction x = PwlFunction::identity();
  std::vector<Check> list;

  list.push_back({"reals: dedekind sum brackets", [] {
                    const DedekindReal a = DedekindReal::constant(Rational(1, 3));
                    const RationalInterval iv = dedekind_add(a, a).approx(Rational(1, 1000));
                    return expect(iv.contains(Rational(2, 3)), "1/3 + 1/3 not bracketed");
                  }});
  list.push_back({"pwl: join + meet = f + g", [] {
                    const auto fs = default_function_corpus();
                    for (const auto& f : fs)
                      for (const auto& g : fs)
                        if (!(join(f, g) + meet(f, g) == f + g)) return "fails for " + f.str() + ", " + g.str();
                    return std::string();
                  }});
  list.push_back({"region: complement is an involution", [] {
                    const Region r = Region::open(Rational(1, 4), Rational(1, 2)).unite(Region::point(Rational(3, 4)));
                    return expect(r.complement().complement() == r, "complement twice changed " + r.str());
                  }});
  list.push_back({"spectrum: witness agrees with inclusion", [] {
                    const auto opens = open_corpus();
                    for (const auto& u : opens)
                      for (const auto& v : opens)
                        if (spec_leq(u, v).holds != u.region().subset_of(v.region()))
                          return "disagreement on " + u.region().str() + " vs " + v.region().str();
                    return std::string();
                  }});
  list.push_back({"simple functions: modular law", [] {
                    const Region a = Region::open(Rational(0), Rational(1, 2));
                    const Region b = Region::open(Rational(1, 4), Rational(3, 4));
                    const SimpleFn lhs(Polarity::Open, {{Rational(1), a}, {Rational(1), b}});
                    const SimpleFn rhs(Polarity::Open, {{Rational(1), a.unite(b)}, {Rational(1), a.intersect(b)}});
                    return expect(sf_equal(lhs, rhs), "x + y != (x v y) + (x ^ y)");
                  }});
  for (const char* spec : {"lebesgue", "dirac 1/3", "mix 1/2 lebesgue ; 1/2 dirac 1/2"}) {
    list.push_back({std::string("measures: val_check ") + spec, [spec] {
                      const CheckReport r = val_check(parse_valuation(spec), open_corpus(), 1000, Rational(0));
                      return expect(r.ok(), r.ok() ? "" : r.violations.front());
                    }});
  }
  for (const char* spec : {"riemann", "eval 1/3", "mix 1/3 riemann ; 2/3 eval 1/2"}) {
    list.push_back({std::string("measures: int_check ") + spec, [spec] {
                      const CheckReport r = int_check(parse_integral(spec), default_function_corpus(), Rational(0));
                      return expect(r.ok(), r.ok() ? "" : r.violations.front());
                    }});
  }
  list.push_back({"transform: uniform Stieltjes sums", [x] {
                    const DeltaFn d(x, Valuation::lebesgue(), Rational(1));
                    const auto [lo, hi] = stieltjes_sums(d, Partition::uniform(Rational(0), Rational(1), 10));
                    return expect(lo.approx(1) == Rational(9, 20) && hi.approx(1) == Rational(11, 20),
                                  "expected [9/20, 11/20]");
                  }});
  list.push_back({"transform: stage formula", [x, half] {
                    const PwlFunction a = x - half;
                    // At n = 1 the ramp never reaches 1: ∫ (x − 1/2)⁺ = 1/8.
                    if (stage_value(Integral::riemann(), a, 1) != Rational(1, 8)) return std::string("stage 1");
                    for (Budget n = 2; n <= 50; ++n) {
                      const Rational want = half - Rational(1) / Rational(2 * static_cast<long>(n));
                      if (stage_value(Integral::riemann(), a, n) != want) return "stage " + std::to_string(n);
                    }
                    return std::string();
                  }});
  list.push_back({"transform: I_mu for dirac 1/3", [x, third] {
                    const RationalInterval iv =
                        integral_of_valuation(Valuation::dirac(third))(x).approx(Rational(1, 20));
                    return expect(iv.contains(third), "1/3 not bracketed");
                  }});
  list.push_back({"transform: mu_I for riemann", [x] {
                    const Rational v = valuation_of_integral(Integral::riemann())(open_of(x - Rational(1, 2))).approx(100);
                    return expect(v == Rational(99, 200), "expected 99/200, got " + v.str());
                  }});
  return list;
}

}  // namespace

int cmd_selftest(const JobSpec& job, std::ostream& out, std::ostream&) {
  const bool kv = job.format == OutputFormat::KeyValue;
  std::size_t failed = 0, total = 0;
  for (const auto& c : checks()) {
    ++total;
    std::string problem;
    try {
      problem = c.run();
    } catch (const std::exception& e) {
      problem = std::string("threw: ") + e.what();
    }
    if (!problem.empty()) ++failed;
    if (kv)
      out << "check=\"" << c.name << "\" status=" << (problem.empty() ? "pass" : "fail") << "\n";
    else
      out << (problem.empty() ? "ok   " : "FAIL ") << c.name << (problem.empty() ? "" : ": " + problem) << "\n";
  }
  if (kv)
    out << "failed=" << failed << "\ntotal=" << total << "\n";
  else
    out << (total - failed) << "/" << total << " checks passed\n";
  return failed == 0 ? kOk : kFailure;
}

}  // namespace riesz::cli
