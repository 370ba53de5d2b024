#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "riesz/errors.hpp"
#include "riesz/measures.hpp"
#include "riesz/spectrum.hpp"
#include "riesz/transform.hpp"

namespace riesz::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FlagParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

PwlFunction parse_flag_pwl(const std::string& flag, const std::string& text) {
  try {
    return parse_pwl(text);
  } catch (const ParseError& e) {
    throw FlagParseError(flag + ": " + e.what());
  }
}

void print_interval(std::ostream& out, OutputFormat fmt, const RationalInterval& iv) {
  if (fmt == OutputFormat::KeyValue)
    out << "lo=" << iv.lo << "\nhi=" << iv.hi << "\nwidth=" << iv.width() << "\n";
  else
    out << "[" << iv.lo << ", " << iv.hi << "]\n";
}

// Best bracket below the level that ran out of budget, if any level finishes.
std::optional<RationalInterval> partial_bounds(const DedekindReal& x, const Rational& eps) {
  Budget n = x.gap_bound(eps);
  while (n > 1) {
    n /= 2;
    try {
      return x.at_budget(n);
    } catch (const BudgetExhausted&) {
    }
  }
  return std::nullopt;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::vector<PwlFunction> default_function_corpus() {
  const char* texts[] = {
      "pwl (0,1) (1,1)",
      "pwl (0,0) (1,1)",
      "pwl (0,1) (1,0)",
      "pwl (0,0) (1/2,1) (1,0)",
      "pwl (0,0) (1/4,1) (3/4,1) (1,0)",
      "pwl (0,0) (1/3,0) (2/3,1) (1,1)",
      "pwl (0,-1/2) (1,1/2)",
      "pwl (0,0) (1,2)",
      "pwl (0,1/2) (1,1/5)",
      "pwl (0,1/3) (1/5,1) (2/5,0) (3/5,2/3) (4/5,1/7) (1,1/2)",
  };
  std::vector<PwlFunction> out;
  for (const char* t : texts) out.push_back(parse_pwl(t));
  return out;
}

std::vector<PwlFunction> default_open_corpus() {
  const char* texts[] = {
      "pwl (0,-1/4) (1,3/4)",
      "pwl (0,1/2) (1,-1/2)",
      "pwl (0,-1) (1/2,1) (1,-1)",
      "pwl (0,1) (1/3,-1) (2/3,-1) (1,1)",
      "pwl (0,-1) (1,-1)",
      "pwl (0,1) (1,1)",
      "pwl (0,-2) (1,1)",
      "pwl (0,0) (1/2,1) (1,0)",
      "pwl (0,-1) (1/4,1) (1/2,-1) (3/4,1) (1,-1)",
      "pwl (0,1) (1/5,-1) (1,-1)",
  };
  std::vector<PwlFunction> out;
  for (const char* t : texts) out.push_back(parse_pwl(t));
  return out;
}

int cmd_integrate(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const Valuation mu = parse_valuation(job.valuation);
  const DedekindReal x = integral_of_valuation(mu)(*job.function);
  try {
    print_interval(out, job.format, x.approx(job.eps));
    return kOk;
  } catch (const BudgetExhausted& e) {
    err << e.what() << "\n";
    if (auto iv = partial_bounds(x, job.eps)) {
      err << "partial bounds (wider than requested):\n";
      print_interval(err, job.format, *iv);
    }
    return kBudget;
  }
}

int cmd_measure(const JobSpec& job, std::ostream& out, std::ostream&) {
  const Integral I = parse_integral(job.integral);
  const Rational lower = valuation_of_integral(I)(open_of(*job.open)).approx(job.budget);
  if (job.format == OutputFormat::KeyValue)
    out << "lower=" << lower << "\nbudget=" << job.budget << "\nnote=lower bound only\n";
  else
    out << lower << " (lower bound only)\n";
  return kOk;
}

int cmd_roundtrip(const JobSpec& job, std::ostream& out, std::ostream&) {
  const bool kv = job.format == OutputFormat::KeyValue;
  std::size_t passed = 0, total = 0;
  auto report = [&](bool ok, const std::string& subject, const std::string& expected, const std::string& got) {
    ++total;
    passed += ok ? 1 : 0;
    if (kv)
      out << "case=" << total << " status=" << (ok ? "pass" : "fail") << " subject=" << quoted(subject)
          << " expected=" << expected << " got=" << quoted(got) << "\n";
    else
      out << (ok ? "pass " : "FAIL ") << subject << ": expected " << expected << ", got " << got << "\n";
  };

  if (!job.integral.empty()) {
    const Integral J = parse_integral(job.integral);
    const Integral back = integral_of_valuation(valuation_of_integral(J));
    const auto corpus = job.function ? std::vector<PwlFunction>{*job.function} : default_function_corpus();
    for (const auto& f : corpus) {
      const DedekindReal want = J(f);
      const Rational v = want.exact_value() ? *want.exact_value() : want.approx(job.eps / Rational(4)).lo;
      const RationalInterval got = back(f).approx(job.eps);
      const bool ok = abs(got.lo - v) <= job.eps && abs(got.hi - v) <= job.eps;
      report(ok, f.str(), v.str(), "[" + got.lo.str() + ", " + got.hi.str() + "]");
    }
  } else {
    const Valuation nu = parse_valuation(job.valuation);
    const Valuation back = valuation_of_integral(integral_of_valuation(nu));
    const auto corpus = job.open ? std::vector<PwlFunction>{*job.open} : default_open_corpus();
    for (const auto& a : corpus) {
      const BasicOpen u = open_of(a);
      const Rational v = nu(u).approx(job.budget);
      const Rational got = back(u).approx(job.budget);
      const bool ok = v - job.eps <= got && got <= v;
      report(ok, "D(" + a.str() + ")", v.str(), got.str());
    }
  }
  if (kv)
    out << "passed=" << passed << "\ntotal=" << total << "\n";
  else
    out << passed << "/" << total << " cases passed\n";
  return passed == total ? kOk : kFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact integrals and valuations on rational piecewise-linear functions over [0,1]"};
  app.require_subcommand(1);

  std::string f_text, a_text, mu_text, i_text, eps_text = "1/100", format_text = "text";
  Budget budget = 1000;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--f", f_text, "function, e.g. \"pwl (0,0) (1,1)\"");
    sub->add_option("--a", a_text, "generator a of the basic open D(a)");
    sub->add_option("--mu", mu_text, "valuation: lebesgue | dirac <q> | mix <w> <spec> ; ...");
    sub->add_option("--i", i_text, "integral: riemann | eval <q> | mix <w> <spec> ; ...");
    sub->add_option("--eps", eps_text, "target width, a positive rational")->capture_default_str();
    sub->add_option("--budget", budget, "approximation budget")->capture_default_str();
    sub->add_option("--format", format_text, "output format")
        ->check(CLI::IsMember({"text", "kv"}))
        ->capture_default_str();
  };
  auto* integrate = app.add_subcommand("integrate", "bracket I_mu(f) within --eps");
  auto* measure = app.add_subcommand("measure", "lower bound of mu_I(D(a)) at --budget");
  auto* roundtrip = app.add_subcommand("roundtrip", "check that the two transforms invert each other");
  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  for (auto* sub : {integrate, measure, roundtrip, selftest}) common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  JobSpec job;
  try {
    if (integrate->parsed()) job.command = Command::Integrate;
    if (measure->parsed()) job.command = Command::Measure;
    if (roundtrip->parsed()) job.command = Command::Roundtrip;
    if (selftest->parsed()) job.command = Command::Selftest;
    try {
      job.eps = Rational::parse(eps_text);
    } catch (const std::invalid_argument&) {
      throw UsageError("--eps: not a rational: " + eps_text);
    }
    if (job.eps.sign() <= 0) throw UsageError("--eps must be positive, got " + eps_text);
    if (budget < 1) throw UsageError("--budget must be at least 1");
    job.budget = budget;
    job.format = format_text == "kv" ? OutputFormat::KeyValue : OutputFormat::Text;
    if (!f_text.empty()) job.function = parse_flag_pwl("--f", f_text);
    if (!a_text.empty()) job.open = parse_flag_pwl("--a", a_text);
    job.valuation = mu_text;
    job.integral = i_text;

    switch (job.command) {
      case Command::Integrate:
        if (mu_text.empty() || !job.function) throw UsageError("integrate needs --mu and --f");
        // Validate the spec before any work starts.
        parse_valuation(mu_text);
        return cmd_integrate(job, out, err);
      case Command::Measure:
        if (i_text.empty() || !job.open) throw UsageError("measure needs --i and --a");
        parse_integral(i_text);
        return cmd_measure(job, out, err);
      case Command::Roundtrip:
        if (mu_text.empty() == i_text.empty()) throw UsageError("roundtrip needs exactly one of --mu and --i");
        if (!mu_text.empty()) parse_valuation(mu_text);
        if (!i_text.empty()) parse_integral(i_text);
        return cmd_roundtrip(job, out, err);
      case Command::Selftest:
        return cmd_selftest(job, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FlagParseError& e) {
    err << "parse error in " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExhausted& e) {
    err << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace riesz::cli
