#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zfpkit/bitvec.hpp"
#include "zfpkit/codec.hpp"
#include "zfpkit/params.hpp"

// Slow codec built only from the bit-vector model. Used as the oracle for the
// integer fast path.
namespace zfpkit::reference {

struct BlockFP {
  std::vector<SignedBinary> ints;
  std::optional<int> emax;
  int shift = 0;
};

struct NegaBlock {
  std::vector<Negabinary> digits;
  std::optional<int> emax;
  int shift = 0;
};

BlockFP block_fp_forward(std::span<const double> values, const CodecParams& p);
std::vector<Dyadic> block_fp_inverse(const BlockFP& f, const CodecParams& p);
SignedBinary keep_mantissa(const SignedBinary& v, int k);

void forward_lift(SignedBinary& x, SignedBinary& y, SignedBinary& z, SignedBinary& w);
void inverse_lift(SignedBinary& x, SignedBinary& y, SignedBinary& z, SignedBinary& w);
BlockFP transform_forward(BlockFP f, const CodecParams& p);
BlockFP transform_inverse(BlockFP f, const CodecParams& p);

BlockFP sequency_permute(const BlockFP& f, const CodecParams& p);
BlockFP sequency_unpermute(const BlockFP& f, const CodecParams& p);

NegaBlock to_negabinary(const BlockFP& f, const CodecParams& p);
BlockFP from_negabinary(const NegaBlock& nb, const CodecParams& p);
NegaBlock bitplane_truncate(const NegaBlock& nb, const CodecParams& p);

struct Trace {
  BlockFP fp;
  BlockFP transformed;
  BlockFP ordered;
  NegaBlock nega;
  NegaBlock truncated;
  BlockFP decoded;
  BlockFP unordered;
  BlockFP restored;
  std::vector<Dyadic> output;
};

Trace trace_block(std::span<const double> values, const CodecParams& p);

// Conversions to the fast-path representation for comparison.
zfpkit::BlockFP to_fast(const BlockFP& f);
zfpkit::NegaBlock to_fast(const NegaBlock& nb);

}  // namespace zfpkit::reference
