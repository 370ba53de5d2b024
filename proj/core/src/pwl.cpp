#include "riesz/pwl.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "riesz/errors.hpp"

namespace riesz {

namespace {

bool collinear(const Point& a, const Point& b, const Point& c) {
  return (b.y - a.y) * (c.x - a.x) == (c.y - a.y) * (b.x - a.x);
}

struct Sample {
  Rational x;
  Rational fx;
  Rational gx;
};

// Values of f and g on their merged grid, in one sweep over both point lists.
std::vector<Sample> merged_samples(const PwlFunction& f, const PwlFunction& g) {
  const auto a = f.points();
  const auto b = g.points();
  auto between = [](const Point& p, const Point& q, const Rational& x) {
    return p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x);
  };
  std::vector<Sample> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].x == b[j].x) {
      out.push_back({a[i].x, a[i].y, b[j].y});
      ++i;
      ++j;
    } else if (a[i].x < b[j].x) {
      out.push_back({a[i].x, a[i].y, between(b[j - 1], b[j], a[i].x)});
      ++i;
    } else {
      out.push_back({b[j].x, between(a[i - 1], a[i], b[j].x), b[j].y});
      ++j;
    }
  }
  return out;
}

template <typename Op>
PwlFunction pointwise(const PwlFunction& f, const PwlFunction& g, Op op) {
  std::vector<Point> pts;
  for (const auto& s : merged_samples(f, g)) pts.push_back({s.x, op(s.fx, s.gx)});
  return PwlFunction(std::move(pts));
}

// Merged samples refined by every strict crossing of the two graphs.
std::vector<Sample> crossing_samples(const PwlFunction& f, const PwlFunction& g) {
  const auto grid = merged_samples(f, g);
  std::vector<Sample> out;
  out.reserve(grid.size() * 2);
  out.push_back(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Sample& p = grid[i - 1];
    const Sample& q = grid[i];
    const Rational d0 = p.fx - p.gx, d1 = q.fx - q.gx;
    if ((d0.sign() < 0 && d1.sign() > 0) || (d0.sign() > 0 && d1.sign() < 0)) {
      const Rational t = d0 / (d0 - d1);
      const Rational y = p.fx + (q.fx - p.fx) * t;
      out.push_back({p.x + (q.x - p.x) * t, y, y});
    }
    out.push_back(q);
  }
  return out;
}

template <typename Pick>
PwlFunction lattice_op(const PwlFunction& f, const PwlFunction& g, Pick pick) {
  std::vector<Point> pts;
  for (const auto& s : crossing_samples(f, g)) pts.push_back({s.x, pick(s.fx, s.gx)});
  return PwlFunction(std::move(pts));
}

}  // namespace

PwlFunction::PwlFunction(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("pwl needs at least the points x=0 and x=1");
  if (points_.front().x != Rational(0) || points_.back().x != Rational(1))
    throw std::invalid_argument("pwl breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1].x < points_[i].x))
      throw std::invalid_argument("pwl breakpoints must be strictly increasing");

  std::vector<Point> kept;
  kept.reserve(points_.size());
  kept.push_back(points_.front());
  for (std::size_t i = 1; i + 1 < points_.size(); ++i)
    if (!collinear(kept.back(), points_[i], points_[i + 1])) kept.push_back(points_[i]);
  kept.push_back(points_.back());
  points_ = std::move(kept);
}

PwlFunction PwlFunction::constant(const Rational& c) {
  return PwlFunction({{Rational(0), c}, {Rational(1), c}});
}

PwlFunction PwlFunction::identity() {
  return PwlFunction({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
}

std::vector<Rational> PwlFunction::breakpoints() const {
  std::vector<Rational> xs;
  xs.reserve(points_.size());
  for (const auto& p : points_) xs.push_back(p.x);
  return xs;
}

Rational PwlFunction::operator()(const Rational& x) const {
  if (x < Rational(0) || Rational(1) < x) throw std::out_of_range("pwl evaluated outside [0,1] at " + x.str());
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const Point& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return it->y;
  const Point& b = *it;
  const Point& a = *std::prev(it);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

Rational PwlFunction::min_value() const {
  Rational m = points_.front().y;
  for (const auto& p : points_) m = min(m, p.y);
  return m;
}

Rational PwlFunction::max_value() const {
  Rational m = points_.front().y;
  for (const auto& p : points_) m = max(m, p.y);
  return m;
}

std::string PwlFunction::str() const {
  std::string s = "pwl";
  for (const auto& p : points_) s += " (" + p.x.str() + "," + p.y.str() + ")";
  return s;
}

bool operator==(const PwlFunction& a, const PwlFunction& b) {
  if (a.points_.size() != b.points_.size()) return false;
  for (std::size_t i = 0; i < a.points_.size(); ++i)
    if (a.points_[i].x != b.points_[i].x || a.points_[i].y != b.points_[i].y) return false;
  return true;
}

PwlFunction pwl_make(std::vector<std::pair<Rational, Rational>> points) {
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (auto& [x, y] : points) pts.push_back({std::move(x), std::move(y)});
  return PwlFunction(std::move(pts));
}

std::vector<Rational> merged_grid(const PwlFunction& f, const PwlFunction& g) {
  std::vector<Rational> xs;
  xs.reserve(f.points().size() + g.points().size());
  auto a = f.points();
  auto b = g.points();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].x < b[j].x)) {
      xs.push_back(a[i++].x);
    } else if (i == a.size() || b[j].x < a[i].x) {
      xs.push_back(b[j++].x);
    } else {
      xs.push_back(a[i].x);
      ++i;
      ++j;
    }
  }
  return xs;
}

PwlFunction operator+(const PwlFunction& f, const PwlFunction& g) {
  return pointwise(f, g, [](const Rational& a, const Rational& b) { return a + b; });
}

PwlFunction operator-(const PwlFunction& f, const PwlFunction& g) {
  return pointwise(f, g, [](const Rational& a, const Rational& b) { return a - b; });
}

PwlFunction operator-(const PwlFunction& f) { return Rational(-1) * f; }

// Affine maps of y with nonzero slope keep f canonical.
PwlFunction operator*(const Rational& c, const PwlFunction& f) {
  if (c.sign() == 0) return PwlFunction::constant(Rational(0));
  std::vector<Point> pts(f.points().begin(), f.points().end());
  for (auto& p : pts) p.y *= c;
  return PwlFunction(std::move(pts), PwlFunction::Trusted{});
}

PwlFunction operator+(const PwlFunction& f, const Rational& c) {
  std::vector<Point> pts(f.points().begin(), f.points().end());
  for (auto& p : pts) p.y += c;
  return PwlFunction(std::move(pts), PwlFunction::Trusted{});
}

PwlFunction operator-(const PwlFunction& f, const Rational& c) { return f + (-c); }
PwlFunction operator-(const Rational& c, const PwlFunction& f) {
  std::vector<Point> pts(f.points().begin(), f.points().end());
  for (auto& p : pts) p.y = c - p.y;
  return PwlFunction(std::move(pts), PwlFunction::Trusted{});
}

PwlFunction join(const PwlFunction& f, const PwlFunction& g) {
  return lattice_op(f, g, [](const Rational& a, const Rational& b) { return max(a, b); });
}

PwlFunction meet(const PwlFunction& f, const PwlFunction& g) {
  return lattice_op(f, g, [](const Rational& a, const Rational& b) { return min(a, b); });
}

PwlFunction pos(const PwlFunction& f) { return join(f, PwlFunction::constant(Rational(0))); }
PwlFunction neg_part(const PwlFunction& f) { return join(-f, PwlFunction::constant(Rational(0))); }
PwlFunction abs(const PwlFunction& f) { return pos(f) + neg_part(f); }

PwlFunction unit_ramp(const PwlFunction& f, const Rational& c) {
  if (c.sign() <= 0) throw std::invalid_argument("unit_ramp needs c > 0, got " + c.str());
  const Rational zero(0), one(1);
  auto clip = [&](const Rational& v) { return v < zero ? zero : (one < v ? one : v); };
  const auto pts = f.points();
  std::vector<Point> out;
  out.reserve(pts.size() * 2);
  out.push_back({pts[0].x, clip(c * pts[0].y)});
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Rational u = c * pts[i - 1].y, v = c * pts[i].y;
    // Interior crossings of the levels 0 and 1, in order along the segment.
    std::vector<Rational> ts;
    for (const Rational* level : {&zero, &one})
      if ((u < *level && *level < v) || (v < *level && *level < u)) ts.push_back((*level - u) / (v - u));
    std::sort(ts.begin(), ts.end());
    const Rational x0 = pts[i - 1].x, dx = pts[i].x - x0;
    for (const auto& t : ts) out.push_back({x0 + dx * t, clip(u + (v - u) * t)});
    out.push_back({pts[i].x, clip(v)});
  }
  // f is canonical and every crossing is a kink, so only runs flattened by
  // the clipping can leave collinear points.
  std::vector<Point> kept;
  kept.reserve(out.size());
  kept.push_back(std::move(out.front()));
  for (std::size_t i = 1; i + 1 < out.size(); ++i)
    if (!(kept.back().y == out[i].y && out[i].y == out[i + 1].y)) kept.push_back(std::move(out[i]));
  kept.push_back(std::move(out.back()));
  return PwlFunction(std::move(kept), PwlFunction::Trusted{});
}

// The difference g - f is linear between merged breakpoints, so its minimum
// is attained at one of them.
bool pwl_leq(const PwlFunction& f, const PwlFunction& g) {
  for (const auto& s : merged_samples(f, g))
    if (s.gx < s.fx) return false;
  return true;
}

Rational pwl_eval(const PwlFunction& f, const Rational& x) { return f(x); }

std::uint64_t pwl_bound(const PwlFunction& f) {
  Rational m(0);
  for (const auto& p : f.points()) m = max(m, abs(p.y));
  return to_u64_saturating(m.ceil());
}

Rational pwl_riemann(const PwlFunction& f) {
  Rational total(0);
  auto pts = f.points();
  for (std::size_t i = 1; i < pts.size(); ++i)
    total += (pts[i].x - pts[i - 1].x) * (pts[i].y + pts[i - 1].y);
  return total / Rational(2);
}

namespace {

class PwlParser {
public:
  PwlParser(std::string_view text, int line) : text_(text), line_(line) {}

  PwlFunction parse() {
    skip_ws();
    if (text_.substr(pos_, 3) != "pwl") fail("expected 'pwl'");
    pos_ += 3;
    std::vector<Point> pts;
    skip_ws();
    while (pos_ < text_.size()) {
      expect('(');
      Rational x = number();
      expect(',');
      Rational y = number();
      expect(')');
      pts.push_back({std::move(x), std::move(y)});
      skip_ws();
    }
    try {
      return PwlFunction(std::move(pts));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_, 1);
    }
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Rational number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '-' || text_[pos_] == '+' || text_[pos_] == '/'))
      ++pos_;
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument&) {
      pos_ = start;
      fail("expected a rational p/q");
    }
  }

  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

PwlFunction parse_pwl(std::string_view text, int line) { return PwlParser(text, line).parse(); }

}  // namespace riesz
