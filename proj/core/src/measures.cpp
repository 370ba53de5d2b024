#include "riesz/measures.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>

#include "riesz/errors.hpp"

namespace riesz {

namespace {

template <typename T>
void check_weights(const std::vector<std::pair<Rational, T>>& components) {
  if (components.empty()) throw std::invalid_argument("mixture needs at least one component");
  Rational total(0);
  for (const auto& [w, _] : components) {
    if (w.sign() <= 0) throw std::invalid_argument("mixture weight must be positive, got " + w.str());
    total += w;
  }
  if (total != Rational(1)) throw std::invalid_argument("mixture weights sum to " + total.str() + ", not 1");
}

template <typename T>
std::string mixture_description(const std::vector<std::pair<Rational, T>>& components) {
  std::string s = "mix";
  for (std::size_t i = 0; i < components.size(); ++i)
    s += (i ? " ; " : " ") + components[i].first.str() + " " + components[i].second.description();
  return s;
}

void require_unit(const Rational& x, const char* what) {
  if (x < Rational(0) || Rational(1) < x) throw std::invalid_argument(std::string(what) + " point outside [0,1]: " + x.str());
}

}  // namespace

Valuation Valuation::lebesgue() {
  return Valuation(MeasureKind::Lebesgue, "lebesgue",
                   [](const BasicOpen& u) { return LowerReal::constant(u.region().length()); }, true);
}

Valuation Valuation::dirac(const Rational& point) {
  require_unit(point, "dirac");
  return Valuation(MeasureKind::Dirac, "dirac " + point.str(),
                   [point](const BasicOpen& u) {
                     return LowerReal::constant(Rational(u.region().contains(point) ? 1 : 0));
                   },
                   true);
}

Valuation Valuation::mixture(std::vector<std::pair<Rational, Valuation>> components) {
  check_weights(components);
  const bool exact = std::all_of(components.begin(), components.end(), [](const auto& c) { return c.second.exact(); });
  std::string desc = mixture_description(components);
  return Valuation(MeasureKind::Mixture, std::move(desc),
                   [components](const BasicOpen& u) {
                     std::vector<LowerReal> parts;
                     for (const auto& [w, mu] : components) parts.push_back(lower_scale(w, mu(u)));
                     return lower_sum(parts);
                   },
                   exact);
}

Valuation Valuation::custom(std::string description, Fn fn, bool exact) {
  return Valuation(MeasureKind::Derived, std::move(description), std::move(fn), exact);
}

Integral Integral::riemann() {
  return Integral(MeasureKind::Riemann, "riemann",
                  [](const PwlFunction& f) { return DedekindReal::constant(pwl_riemann(f)); }, true);
}

Integral Integral::eval(const Rational& point) {
  require_unit(point, "eval");
  return Integral(MeasureKind::Eval, "eval " + point.str(),
                  [point](const PwlFunction& f) { return DedekindReal::constant(f(point)); }, true);
}

Integral Integral::mixture(std::vector<std::pair<Rational, Integral>> components) {
  check_weights(components);
  const bool exact = std::all_of(components.begin(), components.end(), [](const auto& c) { return c.second.exact(); });
  std::string desc = mixture_description(components);
  return Integral(MeasureKind::Mixture, std::move(desc),
                  [components](const PwlFunction& f) {
                    DedekindReal acc = DedekindReal::constant(Rational(0));
                    for (const auto& [w, I] : components) acc = dedekind_add(acc, dedekind_scale(w, I(f)));
                    return acc;
                  },
                  exact);
}

Integral Integral::custom(std::string description, Fn fn, bool exact) {
  return Integral(MeasureKind::Derived, std::move(description), std::move(fn), exact);
}

LowerReal val_apply(const Valuation& mu, const BasicOpen& u) { return mu(u); }

LowerReal val_extend_open(const Valuation& mu, const SimpleFn& s) {
  if (s.polarity() != Polarity::Open) throw std::invalid_argument("val_extend_open needs an open simple function");
  std::vector<LowerReal> parts;
  for (const auto& t : s.terms()) parts.push_back(lower_scale(t.coeff, mu(open_from_region(t.elem))));
  return lower_sum(parts);
}

UpperReal val_extend_closed(const Valuation& mu, const SimpleFn& s) {
  if (s.polarity() != Polarity::Closed) throw std::invalid_argument("val_extend_closed needs a closed simple function");
  std::vector<LowerReal> parts;
  for (const auto& t : s.terms())
    parts.push_back(lower_scale(t.coeff, mu(open_from_region(t.elem.complement()))));
  return upper_minus_lower(UpperReal::constant(s.total()), lower_sum(parts));
}

ExtendedValue val_extend_simple(const Valuation& mu, const SimpleFn& s) {
  if (s.polarity() == Polarity::Open) return val_extend_open(mu, s);
  return val_extend_closed(mu, s);
}

DedekindReal int_apply(const Integral& I, const PwlFunction& f) { return I(f); }

DedekindReal int_extend_signed(const Integral::Fn& on_positive, const PwlFunction& f) {
  const PwlFunction minus = neg_part(f);
  const PwlFunction plus = pos(f);
  if (minus.is_constant() && minus.min_value().sign() == 0) return on_positive(plus);
  if (plus.is_constant() && plus.min_value().sign() == 0) return dedekind_scale(Rational(-1), on_positive(minus));
  return dedekind_sub(on_positive(plus), on_positive(minus));
}

namespace {

class Recorder {
public:
  explicit Recorder(CheckReport& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) r_.violations.push_back(what);
  }

private:
  CheckReport& r_;
};

}  // namespace

CheckReport val_check(const Valuation& mu, const std::vector<BasicOpen>& corpus, Budget budget, const Rational& tol) {
  CheckReport report;
  Recorder rec(report);
  const Rational zero(0), one(1);
  auto at = [&](const BasicOpen& u) { return mu(u).approx(budget); };

  const Rational empty_v = at(open_of(PwlFunction::constant(Rational(-1))));
  rec.check(abs(empty_v) <= tol, "mu(0) = " + empty_v.str() + " (expected 0)");
  const Rational full_v = at(open_of(PwlFunction::constant(one)));
  rec.check(one - tol <= full_v && full_v <= one, "mu(1) = " + full_v.str() + " (expected 1)");

  std::vector<Rational> values;
  values.reserve(corpus.size());
  for (const auto& u : corpus) {
    values.push_back(at(u));
    rec.check(zero <= values.back() + tol && values.back() <= one,
              "mu(" + u.region().str() + ") = " + values.back().str() + " outside [0,1]");
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      const auto& u = corpus[i];
      const auto& v = corpus[j];
      const Rational lhs = values[i] + values[j];
      const Rational rhs = at(spec_join(u, v)) + at(spec_meet(u, v));
      rec.check(abs(lhs - rhs) <= tol, "modularity fails for " + u.region().str() + " and " + v.region().str() +
                                           ": " + lhs.str() + " vs " + rhs.str());
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        if (!spec_leq(corpus[a], corpus[b]).holds) continue;
        rec.check(values[a] <= values[b] + tol, "monotonicity fails: " + corpus[a].region().str() + " <= " +
                                                    corpus[b].region().str() + " but " + values[a].str() +
                                                    " > " + values[b].str());
      }
    }
  }

  // For p = mu(D(a)) - 1/(budget+1) look for k with p < mu(D(a - 2^-k)) + tol.
  const Rational slack = one / Rational(static_cast<long>(budget + 1));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Rational target = values[i] - slack;
    bool found = false;
    Rational shift = one;
    for (int k = 0; k <= 62 && !found; ++k, shift /= Rational(2))
      found = target < at(spec_shrink(corpus[i], shift)) + tol;
    rec.check(found, "Scott continuity fails at " + corpus[i].region().str());
  }
  return report;
}

namespace {

RationalInterval bracket(const DedekindReal& x, const Rational& width) {
  if (auto v = x.exact_value()) return {*v, *v};
  return x.approx(width);
}

// Distance between two intervals (zero when they overlap).
Rational gap_between(const RationalInterval& a, const RationalInterval& b) {
  return max(Rational(0), max(a.lo - b.hi, b.lo - a.hi));
}

RationalInterval add(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

}  // namespace

CheckReport int_check(const Integral& I, const std::vector<PwlFunction>& corpus, const Rational& tol) {
  CheckReport report;
  Recorder rec(report);
  const Rational width = tol.sign() > 0 ? tol / Rational(4) : Rational(1, 1L << 20);
  std::map<std::string, RationalInterval> cache;
  auto value = [&](const PwlFunction& f) -> const RationalInterval& {
    const std::string key = f.str();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, bracket(I(f), width)).first;
    return it->second;
  };
  const RationalInterval zero{Rational(0), Rational(0)}, one{Rational(1), Rational(1)};

  rec.check(gap_between(value(PwlFunction::constant(Rational(0))), zero) <= tol, "I(0) != 0");
  rec.check(gap_between(value(PwlFunction::constant(Rational(1))), one) <= tol, "I(1) != 1");
  for (const auto& f : corpus) {
    if (f.min_value().sign() >= 0)
      rec.check(-tol <= value(f).hi, "positivity fails for " + f.str());
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i; j < corpus.size(); ++j) {
      const auto& f = corpus[i];
      const auto& g = corpus[j];
      rec.check(gap_between(value(f + g), add(value(f), value(g))) <= tol,
                "additivity fails for " + f.str() + " and " + g.str());
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        if (!pwl_leq(corpus[a], corpus[b])) continue;
        rec.check(value(corpus[a]).lo <= value(corpus[b]).hi + tol,
                  "monotonicity fails for " + corpus[a].str() + " <= " + corpus[b].str());
      }
    }
  }
  return report;
}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text, int offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == ';') {
      out.push_back({";", offset + static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ';') ++i;
    out.push_back({std::string(text.substr(start, i - start)), offset + static_cast<int>(start) + 1});
  }
  return out;
}

Rational rational_token(const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a rational, got '" + t.text + "'", 1, t.column);
  }
}

template <typename T, typename Atom>
T parse_measure(std::string_view text, Atom atom, const char* what) {
  const auto tokens = tokenize(text, 0);
  if (tokens.empty()) throw ParseError(std::string("empty ") + what + " spec", 1, 1);
  if (tokens[0].text != "mix") {
    std::size_t pos = 0;
    T result = atom(tokens, pos);
    if (pos != tokens.size()) throw ParseError("unexpected '" + tokens[pos].text + "'", 1, tokens[pos].column);
    return result;
  }
  std::vector<std::pair<Rational, T>> components;
  std::size_t pos = 1;
  while (true) {
    if (pos >= tokens.size()) throw ParseError("expected a mixture weight", 1, static_cast<int>(text.size()) + 1);
    Rational w = rational_token(tokens[pos++]);
    if (pos < tokens.size() && tokens[pos].text == "mix")
      throw ParseError("nested mixtures are not supported", 1, tokens[pos].column);
    components.emplace_back(std::move(w), atom(tokens, pos));
    if (pos == tokens.size()) break;
    if (tokens[pos].text != ";") throw ParseError("expected ';'", 1, tokens[pos].column);
    ++pos;
  }
  try {
    return T::mixture(std::move(components));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

template <typename T, typename Make>
T point_atom(const std::vector<Token>& tokens, std::size_t& pos, Make make) {
  const Token& head = tokens[pos++];
  if (pos >= tokens.size() || tokens[pos].text == ";")
    throw ParseError("'" + head.text + "' needs a point", 1, head.column);
  const Token& arg = tokens[pos++];
  try {
    return make(rational_token(arg));
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, arg.column);
  }
}

}  // namespace

Valuation parse_valuation(std::string_view text) {
  return parse_measure<Valuation>(
      text,
      [](const std::vector<Token>& tokens, std::size_t& pos) {
        if (pos >= tokens.size()) throw ParseError("expected a valuation", 1, 1);
        const Token& head = tokens[pos];
        if (head.text == "lebesgue") {
          ++pos;
          return Valuation::lebesgue();
        }
        if (head.text == "dirac") return point_atom<Valuation>(tokens, pos, Valuation::dirac);
        throw ParseError("unknown valuation '" + head.text + "'", 1, head.column);
      },
      "valuation");
}

Integral parse_integral(std::string_view text) {
  return parse_measure<Integral>(
      text,
      [](const std::vector<Token>& tokens, std::size_t& pos) {
        if (pos >= tokens.size()) throw ParseError("expected an integral", 1, 1);
        const Token& head = tokens[pos];
        if (head.text == "riemann") {
          ++pos;
          return Integral::riemann();
        }
        if (head.text == "eval") return point_atom<Integral>(tokens, pos, Integral::eval);
        throw ParseError("unknown integral '" + head.text + "'", 1, head.column);
      },
      "integral");
}

}  // namespace riesz
