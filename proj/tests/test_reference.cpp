#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "zfpkit/codec.hpp"
#include "zfpkit/reference.hpp"

using namespace zfpkit;

namespace {

Block random_block(std::mt19937_64& rng, std::size_t n, int k) {
  Block b(n);
  int base = static_cast<int>(rng() % 64) - 32;
  int spread = static_cast<int>(rng() % 30);
  for (auto& v : b) {
    switch (rng() % 8) {
      case 0: v = 0; break;
      default: {
        double m = std::ldexp(static_cast<double>(rng() >> (64 - k)), -k);
        v = std::ldexp(m, base - static_cast<int>(rng() % (spread + 1))) * ((rng() & 1) ? -1 : 1);
      }
    }
  }
  return b;
}

void expect_same(const Block& b, const CodecParams& p) {
  BlockTrace fast = trace_block(b, p);
  reference::Trace ref = reference::trace_block(b, p);
  ASSERT_EQ(reference::to_fast(ref.fp), fast.fp);
  ASSERT_EQ(reference::to_fast(ref.transformed), fast.transformed);
  ASSERT_EQ(reference::to_fast(ref.ordered), fast.ordered);
  ASSERT_EQ(reference::to_fast(ref.nega), fast.nega);
  ASSERT_EQ(reference::to_fast(ref.truncated), fast.truncated);
  ASSERT_EQ(reference::to_fast(ref.decoded), fast.decoded);
  ASSERT_EQ(reference::to_fast(ref.unordered), fast.unordered);
  ASSERT_EQ(reference::to_fast(ref.restored), fast.restored);
  for (std::size_t i = 0; i < b.size(); ++i) ASSERT_EQ(ref.output[i].to_double(), fast.output[i]);
}

}  // namespace

TEST(Reference, WorkedExample) {
  CodecParams p;
  p.dim = 1, p.k = 13, p.q = 9, p.beta = 7;
  auto t = reference::trace_block(Block{5632, 3072, 400, 68}, p);
  EXPECT_EQ(t.fp.ints[0], SignedBinary(false, {8, 6, 5}));
  EXPECT_EQ(t.transformed.ints[2], to_signed_binary(Dyadic(-35)));
  EXPECT_EQ(t.nega.digits[0], Negabinary({8, 7, 4, 1, 0}));
  EXPECT_EQ(t.truncated.digits[0], Negabinary({8, 7, 4}));
  EXPECT_EQ(t.output[3], Dyadic(-192));
}

TEST(Reference, KeepMantissa) {
  EXPECT_EQ(reference::keep_mantissa(to_signed_binary(Dyadic((1 << 12) + 1)), 12),
            to_signed_binary(Dyadic(1 << 12)));
  EXPECT_EQ(reference::keep_mantissa(to_signed_binary(Dyadic(-7)), 2), to_signed_binary(Dyadic(-6)));
}

class Equivalence : public ::testing::TestWithParam<int> {};

TEST_P(Equivalence, FastMatchesReferenceEveryStage) {
  int dim = GetParam();
  std::mt19937_64 rng(100 + dim);
  for (int t = 0; t < 1500; ++t) {
    CodecParams p;
    p.dim = dim;
    p.k = t % 2 ? 24 : 53;
    p.q = t % 3 == 0 ? 30 : (t % 3 == 1 ? 62 : 2 * dim + static_cast<int>(rng() % 20));
    p.beta = static_cast<int>(rng() % (p.q + 3));
    p.allow_partial_inverse = true;
    expect_same(random_block(rng, p.block_size(), p.k), p);
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, Equivalence, ::testing::Values(1, 2, 3));
