#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fairdiv {

// Exact rational utility value. Stored in lowest terms with a positive
// denominator; all arithmetic is exact and throws ArithmeticOverflowError
// if a reduced result leaves the 64-bit range. Fairness verdicts depend on
// exact comparisons, so no operation here may round.
class Value {
 public:
  constexpr Value() : num_(0), den_(1) {}
  Value(long long integer) : num_(integer), den_(1) {}  // NOLINT: implicit by design
  Value(long long numerator, long long denominator);

  // Accepts "42", "-7", "0.25" (exact decimal) and "1/3" (fraction).
  static Value parse(std::string_view text);

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  // "p" when the denominator is 1, "p/q" otherwise.
  std::string str() const;

  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o);
  Value& operator*=(const Value& o);
  Value& operator/=(const Value& o);

  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(Value a, const Value& b) { return a *= b; }
  friend Value operator/(Value a, const Value& b) { return a /= b; }
  Value operator-() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static Value from_ratio(__int128 num, __int128 den);

  long long num_;
  long long den_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace fairdiv
