#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace zfpkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact dyadic rational: mantissa * 2^exponent, kept normalized so the
// mantissa is odd (or the value is zero with exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long value);  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt mantissa, std::int64_t exponent);

  // Exact conversion; throws ParamError for NaN or infinity.
  static Dyadic from_double(double value);
  // Throws ParamError unless the denominator is a power of two.
  static Dyadic from_rational(const Rational& value);
  static Dyadic pow2(std::int64_t exponent);

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  bool is_zero() const { return mantissa_ == 0; }
  int sign() const;
  bool is_integer() const { return is_zero() || exponent_ >= 0; }
  BigInt to_integer() const;  // requires is_integer()
  Rational to_rational() const;
  // Round to nearest, ties to even; overflows to infinity.
  double to_double() const;

  // floor(log2|x|) and the lowest set bit position; both require nonzero.
  std::int64_t top_bit() const;
  std::int64_t low_bit() const { return exponent_; }

  Dyadic abs() const;
  Dyadic ldexp(std::int64_t shift) const;

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  std::string to_string() const;

 private:
  void normalize();

  BigInt mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

}  // namespace zfpkit
