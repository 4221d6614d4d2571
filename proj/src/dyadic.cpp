#include "zfpkit/dyadic.hpp"

#include <cmath>
#include <limits>

#include "zfpkit/error.hpp"

namespace zfpkit {
namespace mp = boost::multiprecision;

Dyadic::Dyadic(long long value) : mantissa_(value), exponent_(0) { normalize(); }

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  auto low = mp::lsb(mantissa_ < 0 ? BigInt(-mantissa_) : mantissa_);
  if (low > 0) {
    mantissa_ >>= low;  // exact, low bits are zero
    exponent_ += static_cast<std::int64_t>(low);
  }
}

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) throw ParamError("non-finite value has no dyadic expansion");
  if (value == 0) return {};
  int e = 0;
  double frac = std::frexp(std::fabs(value), &e);
  auto m = static_cast<long long>(std::ldexp(frac, 53));
  return Dyadic(BigInt(value < 0 ? -m : m), e - 53);
}

Dyadic Dyadic::from_rational(const Rational& value) {
  BigInt num = mp::numerator(value);
  BigInt den = mp::denominator(value);
  if (num == 0) return {};
  auto low = mp::lsb(den);
  if (den != (BigInt(1) << low)) throw ParamError("value has no finite binary expansion");
  return Dyadic(num, -static_cast<std::int64_t>(low));
}

Dyadic Dyadic::pow2(std::int64_t exponent) { return Dyadic(BigInt(1), exponent); }

int Dyadic::sign() const { return mantissa_ < 0 ? -1 : (mantissa_ > 0 ? 1 : 0); }

BigInt Dyadic::to_integer() const {
  if (!is_integer()) throw ParamError("value is not an integer: " + to_string());
  return mantissa_ << exponent_;
}

Rational Dyadic::to_rational() const {
  if (exponent_ >= 0) return Rational(mantissa_ << exponent_);
  return Rational(mantissa_, BigInt(1) << -exponent_);
}

std::int64_t Dyadic::top_bit() const {
  if (is_zero()) throw ParamError("top bit of zero is undefined");
  BigInt mag = mantissa_ < 0 ? BigInt(-mantissa_) : mantissa_;
  return static_cast<std::int64_t>(mp::msb(mag)) + exponent_;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  BigInt mag = mantissa_ < 0 ? BigInt(-mantissa_) : mantissa_;
  auto width = static_cast<std::int64_t>(mp::msb(mag)) + 1;
  std::int64_t top = width - 1 + exponent_;
  if (top > 1023) return mantissa_ < 0 ? -HUGE_VAL : HUGE_VAL;
  // bits that survive: 53 for normals, fewer once the result is subnormal
  std::int64_t keep = top >= -1022 ? 53 : top + 1075;
  std::int64_t exp = exponent_;
  if (keep <= 0) {
    // below half the smallest subnormal, or exactly half (ties to zero)
    bool above_half = keep == 0 && mag != (BigInt(1) << (width - 1));
    double tiny = above_half ? std::numeric_limits<double>::denorm_min() : 0.0;
    return mantissa_ < 0 ? -tiny : tiny;
  }
  if (width > keep) {
    auto drop = static_cast<unsigned>(width - keep);
    BigInt rest = mag & ((BigInt(1) << drop) - 1);
    BigInt half = BigInt(1) << (drop - 1);
    mag >>= drop;
    exp += drop;
    if (rest > half || (rest == half && mp::bit_test(mag, 0))) ++mag;
  }
  double r = std::ldexp(mag.convert_to<double>(), static_cast<int>(exp));
  return mantissa_ < 0 ? -r : r;
}

Dyadic Dyadic::abs() const {
  Dyadic r = *this;
  if (r.mantissa_ < 0) r.mantissa_ = -r.mantissa_;
  return r;
}

Dyadic Dyadic::ldexp(std::int64_t shift) const {
  Dyadic r = *this;
  if (!r.is_zero()) r.exponent_ += shift;
  return r;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.mantissa_ = -r.mantissa_;
  return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exponent_ <= b.exponent_)
    return Dyadic(a.mantissa_ + (b.mantissa_ << (b.exponent_ - a.exponent_)), a.exponent_);
  return Dyadic((a.mantissa_ << (a.exponent_ - b.exponent_)) + b.mantissa_, b.exponent_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Dyadic::to_string() const {
  if (exponent_ >= 0) return BigInt(mantissa_ << exponent_).str();
  return mantissa_.str() + "/2^" + std::to_string(-exponent_);
}

}  // namespace zfpkit
