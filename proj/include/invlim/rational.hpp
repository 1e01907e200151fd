#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace invlim {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline and
/// combined with 128-bit intermediates. Anything larger is promoted to a GMP
/// rational; results are demoted again whenever they fit. Every metric value in
/// the library is one of these, so the fast path matters.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);

  /// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  /// 2^-k for k >= 0, 2^|k| for k < 0.
  static Rational pow2_neg(int k);

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  int sign() const;

  mpq_class to_mpq() const;
  /// Always "p/q", including integers ("3/1") and zero ("0/1").
  std::string str() const;
  double to_double() const;  // diagnostics only

  Rational operator-() const;
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::size_t hash() const;

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

Rational pow(const Rational& base, int exponent);
Rational abs(const Rational& r);
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw std::invalid_argument("RationalInterval: lo > hi");
  }
  static RationalInterval point(const Rational& v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  /// Scaling by a nonnegative factor.
  friend RationalInterval operator*(const Rational& s, const RationalInterval& a);
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Three-valued comparison of an interval against a threshold.
enum class Tri { kTrue, kFalse, kIndeterminate };

/// Is every value of `a` <= t?  kTrue if a.hi <= t, kFalse if a.lo > t.
Tri leq(const RationalInterval& a, const Rational& t);

std::ostream& operator<<(std::ostream& os, const RationalInterval& r);

}  // namespace invlim

template <>
struct std::hash<invlim::Rational> {
  std::size_t operator()(const invlim::Rational& r) const noexcept { return r.hash(); }
};
