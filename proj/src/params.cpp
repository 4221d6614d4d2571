#include "zfpkit/params.hpp"

#include <string>

#include "zfpkit/error.hpp"

namespace zfpkit {

void CodecParams::validate() const {
  if (dim < 1 || dim > 3) throw ParamError("d must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  if (k < 2 || k > 53) throw ParamError("k must lie in [2, 53] (got " + std::to_string(k) + ")");
  if (q < 2 || q > 62) throw ParamError("q must lie in [2, 62] (got " + std::to_string(q) + ")");
  if (beta < 0 || beta > q + 2)
    throw ParamError("beta must lie in [0, q+2] = [0, " + std::to_string(q + 2) + "] (got " +
                     std::to_string(beta) + ")");
  if (exponent_bits < 2 || exponent_bits > 16)
    throw ParamError("exponent field width must lie in [2, 16]");
  if (in_partial_regime() && !allow_partial_inverse)
    throw ParamError("beta = " + std::to_string(beta) + " exceeds q-2d+2 = " +
                     std::to_string(beta_limit()) +
                     ", where the main error bound does not hold; opt in with --allow-appendix-b");
}

CodecParams float_params(int dim) {
  CodecParams p;
  p.dim = dim;
  p.k = 24;
  p.q = 30;
  p.beta = p.beta_limit();
  return p;
}

CodecParams double_params(int dim) {
  CodecParams p;
  p.dim = dim;
  p.beta = p.beta_limit();
  return p;
}

}  // namespace zfpkit
