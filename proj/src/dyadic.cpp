#include "cantorlab/dyadic.hpp"

#include <cctype>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt numerator, std::uint32_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  BigInt mag = mp::abs(num_);
  unsigned tz = mp::lsb(mag);
  unsigned shift = tz < exp_ ? tz : exp_;
  if (shift > 0) {
    num_ >>= shift;  // exact: the low bits are zero
    exp_ -= shift;
  }
}

Dyadic Dyadic::pow2(std::int64_t e) {
  if (e >= 0) {
    BigInt n = 1;
    n <<= static_cast<unsigned>(e);
    return Dyadic(n, 0);
  }
  return Dyadic(BigInt(1), static_cast<std::uint32_t>(-e));
}

Dyadic Dyadic::scaled(std::int64_t e) const {
  if (is_zero() || e == 0) return *this;
  if (e > 0) {
    if (static_cast<std::uint64_t>(e) <= exp_) return Dyadic(num_, exp_ - static_cast<std::uint32_t>(e));
    BigInt n = num_;
    n <<= static_cast<unsigned>(e - exp_);
    return Dyadic(n, 0);
  }
  return Dyadic(num_, exp_ + static_cast<std::uint32_t>(-e));
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.num_ = -r.num_;
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (exp_ >= o.exp_) {
    BigInt rhs = o.num_;
    rhs <<= (exp_ - o.exp_);
    num_ += rhs;
  } else {
    num_ <<= (o.exp_ - exp_);
    num_ += o.num_;
    exp_ = o.exp_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) { return *this += -o; }

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  // Bring both numerators to the larger exponent.
  if (a.exp_ == b.exp_) return a.num_.compare(b.num_) <=> 0;
  if (a.exp_ > b.exp_) {
    BigInt rb = b.num_;
    rb <<= (a.exp_ - b.exp_);
    return a.num_.compare(rb) <=> 0;
  }
  BigInt ra = a.num_;
  ra <<= (b.exp_ - a.exp_);
  return ra.compare(b.num_) <=> 0;
}

std::strong_ordering compare(const Dyadic& a, const Rational& b) {
  Rational ra = a.to_rational();
  if (ra < b) return std::strong_ordering::less;
  if (ra > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Dyadic::to_rational() const {
  BigInt den = 1;
  den <<= exp_;
  return Rational(num_, den);
}

double Dyadic::to_double() const { return static_cast<double>(to_rational()); }

std::string Dyadic::to_string() const {
  if (exp_ == 0) return num_.str();
  BigInt den = 1;
  den <<= exp_;
  return num_.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorKind::Parse, "bad dyadic literal '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(ErrorKind::Parse, "bad dyadic literal '" + std::string(whole) + "'");
    v *= 10;
    v += text[i] - '0';
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace

Dyadic Dyadic::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_integer(text, text), 0);
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den <= 0) throw Error(ErrorKind::Parse, "non-positive denominator in '" + std::string(text) + "'");
  unsigned e = mp::lsb(den);
  if (den != (BigInt(1) << e))
    throw Error(ErrorKind::Domain, "denominator of '" + std::string(text) + "' is not a power of two");
  return Dyadic(num, e);
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den <= 0) throw Error(ErrorKind::Parse, "non-positive denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Dyadic Dyadic::from_rational(const Rational& r) {
  BigInt den = mp::denominator(r);
  unsigned e = mp::lsb(den);
  if (den != (BigInt(1) << e)) throw Error(ErrorKind::Domain, "rational is not dyadic");
  return Dyadic(mp::numerator(r), e);
}

}  // namespace cantorlab
