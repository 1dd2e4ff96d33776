#include "fairdiv/value.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

uint128 uabs(int128 x) { return x < 0 ? static_cast<uint128>(-x) : static_cast<uint128>(x); }

uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr long long kMaxLL = std::numeric_limits<long long>::max();

}  // namespace

Value Value::from_ratio(int128 num, int128 den) {
  if (den == 0) throw ArithmeticOverflowError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  uint128 g = gcd128(uabs(num), static_cast<uint128>(den));
  if (g > 1) {
    num /= static_cast<int128>(g);
    den /= static_cast<int128>(g);
  }
  if (num > kMaxLL || num < -static_cast<int128>(kMaxLL) || den > kMaxLL) {
    throw ArithmeticOverflowError("exact value exceeds 64-bit range");
  }
  Value v;
  v.num_ = static_cast<long long>(num);
  v.den_ = static_cast<long long>(den);
  return v;
}

Value::Value(long long numerator, long long denominator) {
  Value v = from_ratio(numerator, denominator);
  num_ = v.num_;
  den_ = v.den_;
}

Value& Value::operator+=(const Value& o) {
  *this = from_ratio(static_cast<int128>(num_) * o.den_ + static_cast<int128>(o.num_) * den_,
                     static_cast<int128>(den_) * o.den_);
  return *this;
}

Value& Value::operator-=(const Value& o) {
  *this = from_ratio(static_cast<int128>(num_) * o.den_ - static_cast<int128>(o.num_) * den_,
                     static_cast<int128>(den_) * o.den_);
  return *this;
}

Value& Value::operator*=(const Value& o) {
  *this = from_ratio(static_cast<int128>(num_) * o.num_, static_cast<int128>(den_) * o.den_);
  return *this;
}

Value& Value::operator/=(const Value& o) {
  if (o.num_ == 0) throw ArithmeticOverflowError("division by zero value");
  *this = from_ratio(static_cast<int128>(num_) * o.den_, static_cast<int128>(den_) * o.num_);
  return *this;
}

Value Value::operator-() const { return from_ratio(-static_cast<int128>(num_), den_); }

std::string Value::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

namespace {

// Parses a run of decimal digits into acc. At most 18 digits so that any
// combination below stays comfortably inside 128 bits.
bool read_digits(std::string_view text, size_t& pos, int128& acc, int& count) {
  count = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    if (count == 18) return false;
    acc = acc * 10 + (text[pos] - '0');
    ++pos;
    ++count;
  }
  return true;
}

}  // namespace

Value Value::parse(std::string_view text) {
  const auto fail = [&] {
    throw ParseError("cannot parse exact value from \"" + std::string(text) + "\"");
  };

  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  int128 whole = 0;
  int whole_digits = 0;
  if (!read_digits(text, pos, whole, whole_digits)) fail();

  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    int128 den = 0;
    int den_digits = 0;
    if (!read_digits(text, pos, den, den_digits)) fail();
    if (whole_digits == 0 || den_digits == 0 || pos != text.size()) fail();
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    return from_ratio(negative ? -whole : whole, den);
  }

  int128 frac = 0;
  int frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    if (!read_digits(text, pos, frac, frac_digits)) fail();
    if (frac_digits == 0) fail();
  }
  if (pos != text.size() || (whole_digits == 0 && frac_digits == 0)) fail();

  int128 den = 1;
  for (int i = 0; i < frac_digits; ++i) den *= 10;
  int128 num = whole * den + frac;
  return from_ratio(negative ? -num : num, den);
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

}  // namespace fairdiv
