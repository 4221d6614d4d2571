#pragma once

#include <cstddef>

namespace zfpkit {

// Codec configuration. Field names follow the usual ZFP symbols:
// dim = d, k = source mantissa bits, q = block integer precision,
// beta = number of bit planes kept.
struct CodecParams {
  int dim = 1;
  int k = 53;
  int q = 62;
  int beta = 62;
  int exponent_bits = 11;
  // Allow beta strictly between q-2d+2 and q+2, where the inverse transform
  // itself rounds and the weaker bound applies.
  bool allow_partial_inverse = false;

  std::size_t block_size() const { return std::size_t{1} << (2 * dim); }
  // ell = e_max - q + 1
  int shift_for(int emax) const { return emax - q + 1; }
  // Largest beta for which the inverse transform is exact on kept planes.
  int beta_limit() const { return q - 2 * dim + 2; }
  bool in_partial_regime() const { return beta > beta_limit() && beta < q + 2; }

  // Throws ParamError with a one-line reason.
  void validate() const;

  friend bool operator==(const CodecParams&, const CodecParams&) = default;
};

// Conventional (k, q) pairings for float and double sources.
CodecParams float_params(int dim);
CodecParams double_params(int dim);

}  // namespace zfpkit
