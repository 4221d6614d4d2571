#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "zfpkit/bitvec.hpp"
#include "zfpkit/error.hpp"

using namespace zfpkit;

namespace {

SignedBinary sb(long long v) { return to_signed_binary(Dyadic(v)); }

BigInt floor_div2(long long p) { return p >= 0 ? p / 2 : -((-p + 1) / 2); }

std::vector<SignedBinary> block_of(std::initializer_list<double> values) {
  std::vector<SignedBinary> out;
  for (double v : values) out.push_back(to_signed_binary(Dyadic::from_double(v)));
  return out;
}

BitString random_bits(std::mt19937_64& rng, int lo, int hi, double density) {
  std::vector<int> pos;
  std::bernoulli_distribution coin(density);
  for (int i = lo; i <= hi; ++i)
    if (coin(rng)) pos.push_back(i);
  return BitString::from_positions(pos);
}

}  // namespace

TEST(BitString, RejectsDuplicatesAndSorts) {
  EXPECT_THROW(BitString({3, 1, 3}), ParamError);
  BitString s{5, 1, 3};
  EXPECT_EQ(std::vector<int>(s.positions().begin(), s.positions().end()), (std::vector<int>{1, 3, 5}));
  EXPECT_TRUE(BitString().empty());
}

TEST(BitString, Truncate) {
  EXPECT_EQ(truncate(BitString{5, 3, 1}, 2), (BitString{5, 3}));
  EXPECT_EQ(truncate(BitString{}, 7), BitString{});
  EXPECT_EQ(truncate(BitString{8, 7, 4, 1, 0}, 3), (BitString{8, 7, 4}));
  BitString once = truncate(BitString{9, 4, 2, -3}, 2);
  EXPECT_EQ(truncate(once, 2), once);
}

TEST(BitString, Shift) {
  EXPECT_EQ(shift(BitString{12, 10, 9}, 4), (BitString{8, 6, 5}));
  EXPECT_EQ(shift(BitString{12, 10, 9}, 0), (BitString{12, 10, 9}));
  EXPECT_EQ(shift(BitString{0}, -3), BitString{3});
  EXPECT_EQ(shift(shift(BitString{7, 2, -5}, 6), -6), (BitString{7, 2, -5}));
}

TEST(SignedBinary, NoNegativeZero) {
  EXPECT_THROW(SignedBinary(true, BitString{}), ParamError);
  EXPECT_EQ(-SignedBinary(), SignedBinary());
}

TEST(SignedBinary, DecodeExamples) {
  EXPECT_EQ(value_of(SignedBinary(false, {12, 10, 9})), Dyadic(5632));
  EXPECT_EQ(value_of(SignedBinary()), Dyadic(0));
  EXPECT_EQ(value_of(SignedBinary(true, {1, 0})), Dyadic(-3));
}

TEST(SignedBinary, EncodeExamples) {
  EXPECT_EQ(sb(400), SignedBinary(false, {8, 7, 4}));
  EXPECT_EQ(sb(0), SignedBinary());
  EXPECT_EQ(to_signed_binary(Dyadic::from_double(-0.75)), SignedBinary(true, {-1, -2}));
  EXPECT_EQ(to_signed_binary(Rational(-3, 4)), SignedBinary(true, {-1, -2}));
  EXPECT_THROW(to_signed_binary(Rational(1, 3)), ParamError);
  EXPECT_EQ(SignedBinary(false, {12, 10, 9}).magnitude().digits(13, 0), "01011000000000");
}

TEST(SignedBinary, RoundTripExhaustive) {
  for (long long v = -(1 << 16); v <= (1 << 16); ++v) {
    SignedBinary s = sb(v);
    ASSERT_EQ(value_of(s), Dyadic(v));
    ASSERT_EQ(to_signed_binary(value_of(s)), s);
  }
}

TEST(SignedBinary, RoundTripRandomDyadic) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20000; ++t) {
    BitString bits = random_bits(rng, -80, 80, 0.3);
    SignedBinary s(!bits.empty() && (rng() & 1), bits);
    ASSERT_EQ(to_signed_binary(value_of(s)), s);
  }
}

TEST(SignedBinary, AddSubtractMatchIntegers) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> dist(-(1LL << 40), 1LL << 40);
  for (int t = 0; t < 20000; ++t) {
    long long a = dist(rng), b = dist(rng);
    if (t % 7 == 0) b = -a;
    ASSERT_EQ(sb(a) + sb(b), sb(a + b)) << a << " " << b;
    ASSERT_EQ(sb(a) - sb(b), sb(a - b)) << a << " " << b;
  }
}

TEST(SignedBinary, AddFractions) {
  auto x = to_signed_binary(Dyadic::from_double(0.375));
  auto y = to_signed_binary(Dyadic::from_double(-5.0625));
  EXPECT_EQ(value_of(x + y), Dyadic::from_double(-4.6875));
  EXPECT_EQ(value_of(y - x), Dyadic::from_double(-5.4375));
}

TEST(RoundHalf, Examples) {
  SignedBinary in = sb(356);
  EXPECT_EQ(in.magnitude().digits(9, 0), "0101100100");
  SignedBinary out = round_half(in);
  EXPECT_EQ(out, sb(178));
  EXPECT_EQ(out.magnitude().digits(9, 0), "0010110010");
  EXPECT_EQ(round_half(sb(0)), sb(0));
  EXPECT_EQ(round_half(sb(-7)), sb(-4));
  EXPECT_EQ(round_half(sb(-8)), sb(-4));
  EXPECT_EQ(round_half(sb(-1)), sb(-1));
  EXPECT_THROW(round_half(to_signed_binary(Dyadic::from_double(2.5))), ParamError);
}

TEST(RoundHalf, FloorDivisionOracle) {
  for (long long p = -5000; p <= 5000; ++p) {
    SignedBinary r = round_half(sb(p));
    ASSERT_EQ(value_of(r).to_integer(), floor_div2(p)) << p;
    Dyadic gap = (value_of(r) - Dyadic(p).ldexp(-1)).abs();
    ASSERT_LE(gap, Dyadic::pow2(-1));
  }
}

TEST(Negabinary, Examples) {
  EXPECT_EQ(value_of(Negabinary({8, 7, 4, 1, 0})), Dyadic(143));
  EXPECT_EQ(value_of(Negabinary()), Dyadic(0));
  EXPECT_EQ(to_negabinary(BigInt(-35)), Negabinary({5, 3, 2, 0}));
  EXPECT_EQ(value_of(to_negabinary(BigInt(-35))), Dyadic(-35));
  EXPECT_EQ(to_negabinary(BigInt(0)), Negabinary());
  EXPECT_EQ(value_of(Negabinary({-1})), Dyadic::from_double(-0.5));
}

TEST(Negabinary, RoundTripExhaustive) {
  for (long long v = -(1 << 16); v <= (1 << 16); ++v) {
    Negabinary n = to_negabinary(BigInt(v));
    ASSERT_EQ(value_of(n), Dyadic(v));
  }
}

TEST(Negabinary, RoundTripRandomWide) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5000; ++t) {
    BigInt v = BigInt(rng()) * BigInt(rng()) - (BigInt(1) << 100);
    ASSERT_EQ(value_of(to_negabinary(v)).to_integer(), v);
  }
}

TEST(BitVector, NormAndExponentRange) {
  auto x = block_of({5632, 3072, 400, 68});
  EXPECT_EQ(norm_inf(x), Dyadic(5632));
  EXPECT_EQ(exponent_range(x), (ExponentRange{2, 12}));
  EXPECT_EQ(exponent_range(block_of({1, 1, 1, 1})), (ExponentRange{0, 0}));
  EXPECT_EQ(exponent_range(block_of({0.125, 32})), (ExponentRange{-3, 5}));
  EXPECT_EQ(norm_inf(block_of({143, 120, -35, 19})), Dyadic(143));
  EXPECT_EQ(norm_inf(block_of({0, 0, 0, 0})), Dyadic(0));
  EXPECT_FALSE(exponent_range(block_of({0, 0, 0, 0})).has_value());
  std::vector<Negabinary> nb{to_negabinary(BigInt(-35)), to_negabinary(BigInt(19))};
  EXPECT_EQ(norm_inf(nb), Dyadic(35));
  EXPECT_EQ(exponent_range(nb), (ExponentRange{0, 5}));
}

// Magnitude lower bounds from the top digit.
TEST(BitVector, ValueAtLeastTopDigitFraction) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20000; ++t) {
    BitString bits = random_bits(rng, -20, 40, 0.4);
    if (bits.empty()) continue;
    Dyadic top = Dyadic::pow2(*bits.top());
    ASSERT_GE(value_of(SignedBinary(false, bits)), top);
    // |f_N(d)| >= 2^emax / 3
    Rational v = value_of(Negabinary(bits)).abs().to_rational();
    ASSERT_GE(3 * v, top.to_rational());
  }
}

TEST(BitVector, TruncationErrors) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20000; ++t) {
    int p = static_cast<int>(rng() % 60) - 30;
    int q = 1 + static_cast<int>(rng() % 20);
    BitString bits = random_bits(rng, p - 40, p, 0.5);
    Rational eps_scaled = Dyadic::pow2(1 - q + p).to_rational();  // eps_q 2^p
    SignedBinary s(false, bits);
    Rational e1 = (value_of(s) - value_of(truncate(s, p - q))).abs().to_rational();
    ASSERT_LE(e1, eps_scaled);
    Negabinary n(bits);
    Rational e2 = (value_of(n) - value_of(truncate(n, p - q))).abs().to_rational();
    ASSERT_LE(3 * e2, 2 * eps_scaled);
  }
}

TEST(BitVector, ShiftScalesNorm) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 5000; ++t) {
    std::vector<SignedBinary> blk, shifted;
    int ell = static_cast<int>(rng() % 41) - 20;
    for (int i = 0; i < 4; ++i) {
      BitString b = random_bits(rng, -10, 30, 0.3);
      blk.emplace_back(!b.empty() && (rng() & 1), b);
      shifted.push_back(shift(blk.back(), ell));
    }
    ASSERT_EQ(norm_inf(shifted), norm_inf(blk).ldexp(-ell));
  }
}
