#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace riesz {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(long v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}     // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpz_class& v) : q_(v) {}
  explicit Rational(mpq_class v);

  /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  mpz_class floor() const;
  mpz_class ceil() const;

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

/// Midpoint (a + b) / 2.
Rational midpoint(const Rational& a, const Rational& b);

/// Converts a nonnegative integer to a natural machine count, saturating.
std::uint64_t to_u64_saturating(const mpz_class& z);

}  // namespace riesz
