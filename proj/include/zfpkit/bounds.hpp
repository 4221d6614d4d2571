#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zfpkit/dyadic.hpp"

namespace zfpkit {

struct BoundInputs {
  int dim = 1;
  int k = 53;
  int q = 62;
  int beta = 0;
  std::optional<int> emax;
  std::optional<int> emin;
  std::optional<int> accuracy_bits;  // b
  std::optional<int> exponent_bits;  // b_e
  // Evaluate K_beta even where it is not a proven bound (beta between
  // q-2d+2 and q+2, or d > 3).
  bool unchecked = false;

  // Throws ParamError on d < 1, k or q < 2, beta < 0.
  void validate() const;
};

// 2^(1-m)
Rational epsilon(int m);
// 7/4 (2^d - 1) and 5/2 (2^d - 1)
Rational k_L(int dim);
Rational k_Linv(int dim);

// (8/3) eps_beta + eps_q (1 + (8/3) eps_beta) (k_L (1 + eps_q) + 1)
Rational truncation_term(const BoundInputs& in);

Rational K_beta_exact(const BoundInputs& in);
Rational B_beta_exact(const BoundInputs& in);
// K_beta * 2^(emax - emin); needs both exponents.
Rational componentwise_bound_exact(const BoundInputs& in);

// Correctly rounded (nearest, ties to even).
double to_double(const Rational& r);

double K_beta(const BoundInputs& in);
double B_beta(const BoundInputs& in);
double componentwise_bound(const BoundInputs& in);

struct AccuracyResult {
  bool feasible = false;
  int beta = 0;
  // For infeasible targets: "k" (source precision), "q" (block precision)
  // or "beta" (needs more planes than q-2d+2).
  std::string limit;
};

// Smallest beta with K_beta * 2^emax <= 2^-b. Uses in.accuracy_bits and in.emax.
AccuracyResult beta_for_accuracy(const BoundInputs& in);
// Same with infinite source and block precision.
AccuracyResult beta_for_accuracy_ideal(int dim, int accuracy_bits, int emax);

// beta + b_e / 4^d + 1 bits per value
Rational rate_lower_bound(int beta, int dim, int exponent_bits);

struct SurfaceRow {
  int dim;
  int beta;
  double log10_K;
};

std::vector<SurfaceRow> kbeta_surface(int dim_lo, int dim_hi, int beta_lo, int beta_hi, int k, int q);
std::string surface_csv(const std::vector<SurfaceRow>& rows);

}  // namespace zfpkit
