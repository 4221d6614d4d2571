#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zfpkit/bitstream.hpp"
#include "zfpkit/params.hpp"

namespace zfpkit {

// Wide enough that no inverse-transform intermediate can overflow, even on
// heavily truncated coefficients.
using Int = __int128;

using Block = std::vector<double>;

// Block-floating-point integers sharing one exponent.
struct BlockFP {
  std::vector<Int> ints;
  std::optional<int> emax;  // empty for an all-zero block
  int shift = 0;            // emax - q + 1

  bool is_zero() const { return !emax.has_value(); }
  friend bool operator==(const BlockFP&, const BlockFP&) = default;
};

// Coefficients as q+2 negabinary digits, bit i = weight (-2)^i.
struct NegaBlock {
  std::vector<std::uint64_t> digits;
  std::optional<int> emax;
  int shift = 0;

  bool is_zero() const { return !emax.has_value(); }
  friend bool operator==(const NegaBlock&, const NegaBlock&) = default;
};

struct CompressedBlock {
  bool zero = true;
  int emax = 0;
  int planes = 0;
  BitBuffer payload;  // empty when zero
};

// One lifting pass over a 4-vector.
void forward_lift(Int* p, std::ptrdiff_t stride);
void inverse_lift(Int* p, std::ptrdiff_t stride);

BlockFP block_fp_forward(std::span<const double> values, const CodecParams& p);
Block block_fp_inverse(const BlockFP& f, const CodecParams& p);
// Keep the k most significant bits of v, truncating toward zero.
Int keep_mantissa(Int v, int k);

// Throws InternalError if any intermediate leaves the q+1 bit envelope.
BlockFP transform_forward(BlockFP f, const CodecParams& p);
BlockFP transform_inverse(BlockFP f, const CodecParams& p);

NegaBlock to_negabinary(const BlockFP& f, const CodecParams& p);
BlockFP from_negabinary(const NegaBlock& nb, const CodecParams& p);
std::uint64_t int_to_negabinary(Int v, int width);
Int negabinary_to_int(std::uint64_t digits);

NegaBlock bitplane_truncate(NegaBlock nb, const CodecParams& p);

// Group-test plane coder: per plane one bit (0 = all zero), then the raw
// plane when nonzero. Planes run from position q+1 downward.
CompressedBlock encode_planes(const NegaBlock& nb, const CodecParams& p);
void write_planes(const NegaBlock& nb, const CodecParams& p, BitWriter& out);
NegaBlock decode_planes(const CompressedBlock& cb, const CodecParams& p);
NegaBlock read_planes(BitReader& in, int emax, const CodecParams& p);

// Every intermediate of a block round trip.
struct BlockTrace {
  BlockFP fp;           // after block-FP conversion
  BlockFP transformed;  // after the forward transform
  BlockFP ordered;      // after sequency ordering
  NegaBlock nega;
  NegaBlock truncated;
  BlockFP decoded;      // back from negabinary, still in sequency order
  BlockFP unordered;
  BlockFP restored;     // after the inverse transform
  Block output;
};

BlockTrace trace_block(std::span<const double> values, const CodecParams& p);
CompressedBlock compress_block(std::span<const double> values, const CodecParams& p);
Block decompress_block(const CompressedBlock& cb, const CodecParams& p);
// Round trip without the bit coder (it is lossless).
Block round_trip(std::span<const double> values, const CodecParams& p);

}  // namespace zfpkit
