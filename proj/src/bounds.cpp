#include "zfpkit/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "zfpkit/error.hpp"

namespace zfpkit {
namespace mp = boost::multiprecision;
namespace {

Rational pow_rational(Rational base, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

Rational pow2(int e) {
  if (e >= 0) return Rational(BigInt(1) << e);
  return Rational(BigInt(1), BigInt(1) << -e);
}

Rational bracket(int dim, const Rational& eps_beta, const Rational& eps_q) {
  Rational eight_thirds(8, 3);
  return eight_thirds * eps_beta + eps_q * (1 + eight_thirds * eps_beta) * (k_L(dim) * (1 + eps_q) + 1);
}

// Smallest integer n with 2^n >= r, for r > 0.
int ceil_log2(const Rational& r) {
  BigInt num = mp::numerator(r), den = mp::denominator(r);
  int n = static_cast<int>(mp::msb(num)) - static_cast<int>(mp::msb(den));
  auto holds = [&](int e) { return e >= 0 ? (den << e) >= num : den >= (num << -e); };
  while (!holds(n)) ++n;
  while (holds(n - 1)) --n;
  return n;
}

AccuracyResult solve_beta(int dim, int accuracy_bits, int emax, const Rational& eps_k,
                          const Rational& eps_q, std::optional<int> beta_cap) {
  Rational target = pow_rational(Rational(4, 15), dim) * pow2(-accuracy_bits - emax);
  Rational c = eps_q * (k_L(dim) * (1 + eps_q) + 1);
  Rational denom = (target - eps_k) / (1 + eps_k) - c;
  if (target <= eps_k) return {false, 0, "k"};
  if (denom <= 0) return {false, 0, "q"};
  int beta = std::max(0, ceil_log2(Rational(16, 3) * (1 + c) / denom));
  if (beta_cap && beta > *beta_cap) return {false, beta, "beta"};
  return {true, beta, ""};
}

}  // namespace

void BoundInputs::validate() const {
  if (dim < 1) throw ParamError("d must be at least 1");
  if (k < 2 || q < 2) throw ParamError("k and q must be at least 2");
  if (beta < 0) throw ParamError("beta must be nonnegative");
}

Rational epsilon(int m) { return pow2(1 - m); }

Rational k_L(int dim) { return Rational(7, 4) * ((BigInt(1) << dim) - 1); }

Rational k_Linv(int dim) { return Rational(5, 2) * ((BigInt(1) << dim) - 1); }

Rational truncation_term(const BoundInputs& in) {
  return bracket(in.dim, epsilon(in.beta), epsilon(in.q));
}

Rational K_beta_exact(const BoundInputs& in) {
  in.validate();
  if (!in.unchecked) {
    if (in.dim > 3) throw ParamError("d > 3 needs unchecked evaluation");
    int limit = in.q - 2 * in.dim + 2;
    if (in.beta > limit && in.beta != in.q + 2)
      throw ParamError("K_beta is only a bound for beta <= q-2d+2 = " + std::to_string(limit) +
                       " or beta = q+2 (got " + std::to_string(in.beta) + ")");
  }
  Rational eps_k = epsilon(in.k);
  return pow_rational(Rational(15, 4), in.dim) * ((1 + eps_k) * truncation_term(in) + eps_k);
}

Rational B_beta_exact(const BoundInputs& in) {
  BoundInputs all = in;
  all.unchecked = true;
  return k_Linv(in.dim) * epsilon(in.q) * (1 + epsilon(in.k)) * truncation_term(in) + K_beta_exact(all);
}

Rational componentwise_bound_exact(const BoundInputs& in) {
  if (!in.emax || !in.emin) throw ParamError("componentwise bound needs emax and emin");
  if (*in.emax < *in.emin) throw ParamError("emax must not be below emin");
  return K_beta_exact(in) * pow2(*in.emax - *in.emin);
}

double to_double(const Rational& r) {
  BigInt num = mp::numerator(r), den = mp::denominator(r);
  if (num == 0) return 0.0;
  bool neg = num < 0;
  if (neg) num = -num;
  // quotient with at least 55 significant bits plus a sticky bit
  int shift = 55 - (static_cast<int>(mp::msb(num)) - static_cast<int>(mp::msb(den)));
  BigInt scaled = shift >= 0 ? BigInt(num << shift) : BigInt(num >> -shift);
  bool inexact = shift < 0 && (scaled << -shift) != num;
  BigInt qt, rm;
  mp::divide_qr(scaled, den, qt, rm);
  inexact |= rm != 0;
  double v = Dyadic(qt * 2 + (inexact ? 1 : 0), -shift - 1).to_double();
  return neg ? -v : v;
}

double K_beta(const BoundInputs& in) { return to_double(K_beta_exact(in)); }
double B_beta(const BoundInputs& in) { return to_double(B_beta_exact(in)); }
double componentwise_bound(const BoundInputs& in) { return to_double(componentwise_bound_exact(in)); }

AccuracyResult beta_for_accuracy(const BoundInputs& in) {
  in.validate();
  if (!in.accuracy_bits || !in.emax) throw ParamError("accuracy target needs b and emax");
  return solve_beta(in.dim, *in.accuracy_bits, *in.emax, epsilon(in.k), epsilon(in.q),
                    in.q - 2 * in.dim + 2);
}

AccuracyResult beta_for_accuracy_ideal(int dim, int accuracy_bits, int emax) {
  if (dim < 1) throw ParamError("d must be at least 1");
  return solve_beta(dim, accuracy_bits, emax, 0, 0, std::nullopt);
}

Rational rate_lower_bound(int beta, int dim, int exponent_bits) {
  if (beta < 0 || dim < 1 || exponent_bits < 0) throw ParamError("rate bound needs beta >= 0, d >= 1, b_e >= 0");
  Rational n = BigInt(1) << (2 * dim);
  return (n * beta + exponent_bits) / n + 1;
}

std::vector<SurfaceRow> kbeta_surface(int dim_lo, int dim_hi, int beta_lo, int beta_hi, int k, int q) {
  if (dim_lo > dim_hi || beta_lo > beta_hi) throw ParamError("surface ranges must be nonempty");
  std::vector<SurfaceRow> rows;
  for (int d = dim_lo; d <= dim_hi; ++d)
    for (int b = beta_lo; b <= beta_hi; ++b) {
      BoundInputs in{d, k, q, b};
      in.unchecked = true;
      rows.push_back({d, b, std::log10(K_beta(in))});
    }
  return rows;
}

std::string surface_csv(const std::vector<SurfaceRow>& rows) {
  std::string out = "d,beta,log10_Kbeta\n";
  char buf[64];
  for (auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", r.dim, r.beta, r.log10_K);
    out += buf;
  }
  return out;
}

}  // namespace zfpkit
