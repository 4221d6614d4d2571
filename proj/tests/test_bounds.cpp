#include <cmath>

#include <gtest/gtest.h>

#include "zfpkit/bounds.hpp"
#include "zfpkit/error.hpp"

using namespace zfpkit;

namespace {

BoundInputs in(int d, int k, int q, int beta, bool unchecked = false) {
  BoundInputs b{d, k, q, beta};
  b.unchecked = unchecked;
  return b;
}

}  // namespace

TEST(Bounds, Epsilon) {
  EXPECT_EQ(epsilon(1), 1);
  EXPECT_EQ(epsilon(9), Rational(1, 256));
  EXPECT_EQ(to_double(epsilon(53)), 0x1p-52);
}

TEST(Bounds, LiftingConstants) {
  EXPECT_EQ(k_L(1), Rational(7, 4));
  EXPECT_EQ(k_L(2), Rational(21, 4));
  EXPECT_EQ(k_Linv(3), Rational(35, 2));
  EXPECT_EQ(k_Linv(1), Rational(5, 2));
}

// Pinned values from an independent exact-fraction evaluation.
TEST(Bounds, KBetaPinned) {
  EXPECT_EQ(K_beta_exact(in(1, 13, 9, 7)), Rational(BigInt(6847205995), BigInt(34359738368)));
  EXPECT_DOUBLE_EQ(K_beta(in(1, 13, 9, 7)), 0.1992799223808106);
  EXPECT_NEAR(K_beta(in(1, 13, 9, 7)) * 5632, 1122.34, 0.01);
  EXPECT_LT(K_beta(in(2, 24, 30, 32, true)), 1.0);
  EXPECT_DOUBLE_EQ(K_beta(in(2, 24, 30, 32, true)), 1.8575520009577666e-06);
  const double pinned[3][3] = {{10.000000000000004, 4.656613710216996e-09, 8.382238046028556e-16},
                               {37.500000000000014, 1.7462301434658965e-08, 3.164684497531517e-15},
                               {140.62500000000006, 6.548363054006035e-08, 1.2027656092774251e-14}};
  const int betas[3] = {1, 32, 64};
  for (int d = 1; d <= 3; ++d)
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(K_beta(in(d, 53, 62, betas[j], true)), pinned[d - 1][j]);
}

TEST(Bounds, KBetaDomain) {
  EXPECT_THROW(K_beta(in(1, 13, 9, 10)), ParamError);  // between q-2d+2 and q+2
  EXPECT_NO_THROW(K_beta(in(1, 13, 9, 11)));           // beta = q+2
  EXPECT_NO_THROW(K_beta(in(1, 13, 9, 10, true)));
  EXPECT_THROW(K_beta(in(0, 13, 9, 1)), ParamError);
  EXPECT_THROW(K_beta(in(1, 1, 9, 1)), ParamError);
  EXPECT_THROW(K_beta(in(1, 13, 9, -1)), ParamError);
}

TEST(Bounds, KBetaMonotone) {
  for (int d = 1; d <= 5; ++d)
    for (int b = 0; b < 70; ++b) {
      ASSERT_GT(K_beta_exact(in(d, 53, 62, b, true)), K_beta_exact(in(d, 53, 62, b + 1, true)));
      ASSERT_LT(K_beta_exact(in(d, 53, 62, b, true)), K_beta_exact(in(d + 1, 53, 62, b, true)));
    }
}

TEST(Bounds, KBetaDeterministic) {
  EXPECT_EQ(K_beta(in(3, 24, 30, 17)), K_beta(in(3, 24, 30, 17)));
}

TEST(Bounds, BBeta) {
  EXPECT_EQ(B_beta_exact(in(1, 13, 9, 9)), Rational(BigInt(4275405813955), BigInt(52776558133248)));
  Rational expected = K_beta_exact(in(1, 13, 9, 9)) +
                      Rational(5, 2) * Rational(1, 256) * (1 + Rational(1, 4096)) * truncation_term(in(1, 13, 9, 9));
  EXPECT_EQ(B_beta_exact(in(1, 13, 9, 9)), expected);
  for (int d = 1; d <= 3; ++d)
    for (int b = 0; b <= 64; ++b) ASSERT_GE(B_beta_exact(in(d, 53, 62, b)), K_beta_exact(in(d, 53, 62, b, true)));
}

TEST(Bounds, Componentwise) {
  BoundInputs b = in(2, 24, 30, 12);
  b.emax = 5, b.emin = 5;
  EXPECT_EQ(componentwise_bound_exact(b), K_beta_exact(b));
  b.emin = -2;
  EXPECT_EQ(componentwise_bound_exact(b), 128 * K_beta_exact(b));
  b.emin.reset();
  EXPECT_THROW(componentwise_bound(b), ParamError);
  b.emin = 0;
  Rational prev = 0;
  for (int rho = 0; rho < 20; ++rho) {
    b.emax = rho;
    ASSERT_GT(componentwise_bound_exact(b), prev);
    prev = componentwise_bound_exact(b);
  }
}

TEST(Bounds, ToDoubleCorrectlyRounded) {
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(Rational(-2, 3)), -2.0 / 3.0);
  EXPECT_EQ(to_double(Rational(BigInt(1) << 200, 7)), std::ldexp(1.0, 200) / 7.0);
  // exact tie between two doubles rounds to even
  Rational tie = Rational((BigInt(1) << 53) + 1);
  EXPECT_EQ(to_double(tie), 0x1p53);
}

TEST(BetaForAccuracy, IdealPrecision) {
  auto r = beta_for_accuracy_ideal(1, 0, 0);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.beta, 5);  // ceil(log2 20)
  EXPECT_EQ(beta_for_accuracy_ideal(2, 0, 0).beta, 7);  // ceil(log2 75)
}

TEST(BetaForAccuracy, MatchesBruteForceSearch) {
  struct Case { int d, k, q, b, e, beta; };
  const Case cases[] = {{1, 53, 62, 20, 0, 25}, {2, 53, 62, 30, 3, 40}, {3, 53, 62, 10, -5, 14},
                        {1, 24, 30, 10, 0, 15}, {3, 53, 62, 40, 0, 49}, {2, 53, 62, 45, 0, 52}};
  for (auto c : cases) {
    BoundInputs b = in(c.d, c.k, c.q, 0);
    b.accuracy_bits = c.b, b.emax = c.e;
    auto r = beta_for_accuracy(b);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.beta, c.beta) << c.d << " " << c.b << " " << c.e;
  }
}

TEST(BetaForAccuracy, Infeasible) {
  BoundInputs b = in(1, 13, 9, 0);
  b.accuracy_bits = 3, b.emax = 12;
  auto r = beta_for_accuracy(b);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.limit, "k");
  // k is generous, q is not
  b = in(1, 53, 9, 0);
  b.accuracy_bits = 10, b.emax = 0;
  EXPECT_EQ(beta_for_accuracy(b).limit, "q");
  BoundInputs missing = in(1, 53, 62, 0);
  EXPECT_THROW(beta_for_accuracy(missing), ParamError);
}

TEST(BetaForAccuracy, FeasibilityMonotoneInBits) {
  for (int d = 1; d <= 3; ++d)
    for (int e = -3; e <= 3; ++e) {
      bool was_feasible = true;
      for (int bits = 0; bits < 70; ++bits) {
        BoundInputs b = in(d, 53, 62, 0);
        b.accuracy_bits = bits, b.emax = e;
        bool f = beta_for_accuracy(b).feasible;
        ASSERT_TRUE(was_feasible || !f);
        was_feasible = f;
      }
    }
}

TEST(RateBound, Examples) {
  EXPECT_EQ(rate_lower_bound(7, 1, 8), 10);
  EXPECT_EQ(rate_lower_bound(9, 3, 0), 10);
  EXPECT_EQ(rate_lower_bound(16, 2, 11), Rational(283, 16));
}

TEST(Surface, ShapeAndOrdering) {
  auto rows = kbeta_surface(1, 5, 1, 64, 53, 62);
  ASSERT_EQ(rows.size(), 320u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i % 64) ASSERT_LT(rows[i].log10_K, rows[i - 1].log10_K);
    if (i >= 64) ASSERT_GT(rows[i].log10_K, rows[i - 64].log10_K);
  }
  std::string csv = surface_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "d,beta,log10_Kbeta");
  EXPECT_THROW(kbeta_surface(2, 1, 1, 64, 53, 62), ParamError);
}
