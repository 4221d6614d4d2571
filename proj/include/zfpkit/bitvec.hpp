#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "zfpkit/dyadic.hpp"

namespace zfpkit {

// Finite set of digit positions holding a 1, stored ascending.
class BitString {
 public:
  using Storage = boost::container::small_vector<int, 16>;

  BitString() = default;
  BitString(std::initializer_list<int> positions);
  // Sorts; throws ParamError on duplicate positions.
  static BitString from_positions(std::vector<int> positions);
  // Positions must already be strictly increasing (checked).
  static BitString from_sorted(Storage positions);

  std::span<const int> positions() const { return {bits_.data(), bits_.size()}; }
  bool empty() const { return bits_.empty(); }
  std::size_t count() const { return bits_.size(); }
  bool test(int position) const;
  std::optional<int> top() const;
  std::optional<int> bottom() const;

  friend bool operator==(const BitString&, const BitString&) = default;

  // MSB-first digit string over [low, high], e.g. "0101100000".
  std::string digits(int high, int low) const;

 private:
  Storage bits_;
};

// Keep only positions strictly above cutoff.
BitString truncate(const BitString& v, int cutoff);
// Position i moves to i - ell, so the value scales by 2^-ell.
BitString shift(const BitString& v, int ell);

// Sign and magnitude; negative zero is rejected.
class SignedBinary {
 public:
  SignedBinary() = default;
  SignedBinary(bool negative, BitString magnitude);

  bool negative() const { return negative_; }
  const BitString& magnitude() const { return magnitude_; }
  bool is_zero() const { return magnitude_.empty(); }

  SignedBinary operator-() const;
  friend SignedBinary operator+(const SignedBinary& a, const SignedBinary& b);
  friend SignedBinary operator-(const SignedBinary& a, const SignedBinary& b);
  friend bool operator==(const SignedBinary&, const SignedBinary&) = default;

 private:
  bool negative_ = false;
  BitString magnitude_;
};

// Digits in base -2.
class Negabinary {
 public:
  Negabinary() = default;
  explicit Negabinary(BitString digits) : digits_(std::move(digits)) {}

  const BitString& digits() const { return digits_; }
  bool is_zero() const { return digits_.empty(); }
  friend bool operator==(const Negabinary&, const Negabinary&) = default;

 private:
  BitString digits_;
};

Dyadic value_of(const SignedBinary& v);
Dyadic value_of(const Negabinary& v);
SignedBinary to_signed_binary(const Dyadic& x);
// Throws ParamError for values without a finite binary expansion.
SignedBinary to_signed_binary(const Rational& x);
// Integer input only.
Negabinary to_negabinary(const BigInt& x);

SignedBinary truncate(const SignedBinary& v, int cutoff);
SignedBinary shift(const SignedBinary& v, int ell);
Negabinary truncate(const Negabinary& v, int cutoff);
Negabinary shift(const Negabinary& v, int ell);

// floor(v / 2); throws ParamError when v is not an integer.
SignedBinary round_half(const SignedBinary& v);

// Magnitude comparison: negative, zero or positive like a <=> b.
int compare_magnitude(const BitString& a, const BitString& b);

struct ExponentRange {
  int min;
  int max;
  friend bool operator==(const ExponentRange&, const ExponentRange&) = default;
};

Dyadic norm_inf(std::span<const SignedBinary> block);
Dyadic norm_inf(std::span<const Negabinary> block);
// Lowest and highest active digit position over the block; nullopt when
// every element is zero.
std::optional<ExponentRange> exponent_range(std::span<const SignedBinary> block);
std::optional<ExponentRange> exponent_range(std::span<const Negabinary> block);

}  // namespace zfpkit
