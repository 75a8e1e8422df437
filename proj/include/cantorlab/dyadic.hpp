#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cantorlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact rational of the form numerator / 2^exponent.
///
/// Always kept in canonical form: either the exponent is zero or the
/// numerator is odd, and zero is (0, 0). Record equality is therefore
/// value equality.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt numerator, std::uint32_t exponent);

  static Dyadic pow2(std::int64_t e);  // 2^e, e may be negative
  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1); }

  /// Parses "p/q" with q a power of two, or a plain integer.
  static Dyadic parse(std::string_view text);
  /// Converts an exact rational; throws Domain if the denominator is not a power of two.
  static Dyadic from_rational(const Rational& r);

  const BigInt& numerator() const noexcept { return num_; }
  std::uint32_t exponent() const noexcept { return exp_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  int sign() const noexcept { return num_.sign(); }

  Rational to_rational() const;
  double to_double() const;
  /// Decimal numerator/denominator, e.g. "5/8", "-3", "0".
  std::string to_string() const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator*=(const Dyadic& o);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  /// Multiplies by 2^e.
  Dyadic scaled(std::int64_t e) const;
  Dyadic half() const { return scaled(-1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  BigInt num_ = 0;
  std::uint32_t exp_ = 0;
};

std::strong_ordering compare(const Dyadic& a, const Rational& b);

/// "p/q" with any positive q, or a plain integer.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& r);

}  // namespace cantorlab
