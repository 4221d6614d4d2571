#include "zfpkit/codec.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "zfpkit/error.hpp"
#include "zfpkit/sequency.hpp"

namespace zfpkit {
namespace {

using UInt = unsigned __int128;

constexpr std::uint64_t kOddMask = 0xAAAAAAAAAAAAAAAAull;

std::uint64_t low_mask(int width) { return width >= 64 ? ~0ull : (1ull << width) - 1; }

int bit_width(UInt v) {
  auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi) return 64 + std::bit_width(hi);
  return std::bit_width(static_cast<std::uint64_t>(v));
}

struct NoCheck {
  void operator()(Int) const {}
};

struct Envelope {
  Int limit;
  void operator()(Int v) const {
    if (v >= limit || v <= -limit) throw InternalError("transform value escaped the guard bit");
  }
};

template <class Check>
void lift_forward(Int* p, std::ptrdiff_t s, Check check) {
  Int x = p[0], y = p[s], z = p[2 * s], w = p[3 * s];
  x += w; check(x); x >>= 1; w -= x; check(w);
  z += y; check(z); z >>= 1; y -= z; check(y);
  x += z; check(x); x >>= 1; z -= x; check(z);
  w += y; check(w); w >>= 1; y -= w; check(y);
  w += y >> 1; check(w); y -= w >> 1; check(y);
  p[0] = x, p[s] = y, p[2 * s] = z, p[3 * s] = w;
}

// Lifting lines along each axis; axis with stride 1 (last index) first.
template <class Fn>
void for_each_line(std::size_t n, std::ptrdiff_t stride, Fn fn) {
  for (std::size_t m = 0; m < n; ++m)
    if ((m / stride) % 4 == 0) fn(static_cast<std::ptrdiff_t>(m));
}

void check_size(std::size_t got, const CodecParams& p) {
  if (got != p.block_size())
    throw ParamError("block must hold " + std::to_string(p.block_size()) + " values, got " +
                     std::to_string(got));
}

template <class T>
std::vector<T> permuted(const std::vector<T>& v, int dim, bool forward) {
  std::span<const T> s(v);
  return forward ? sequency_permute(s, dim) : sequency_unpermute(s, dim);
}

}  // namespace

void forward_lift(Int* p, std::ptrdiff_t stride) { lift_forward(p, stride, NoCheck{}); }

void inverse_lift(Int* p, std::ptrdiff_t s) {
  Int x = p[0], y = p[s], z = p[2 * s], w = p[3 * s];
  y += w >> 1; w -= y >> 1;
  y += w; w *= 2; w -= y;
  z += x; x *= 2; x -= z;
  y += z; z *= 2; z -= y;
  w += x; x *= 2; x -= w;
  p[0] = x, p[s] = y, p[2 * s] = z, p[3 * s] = w;
}

BlockFP block_fp_forward(std::span<const double> values, const CodecParams& p) {
  check_size(values.size(), p);
  BlockFP f;
  f.ints.assign(values.size(), 0);
  for (double v : values) {
    if (!std::isfinite(v)) throw ParamError("input contains NaN or infinity");
    if (v != 0) f.emax = std::max(f.emax.value_or(INT32_MIN), std::ilogb(v));
  }
  if (!f.emax) return f;
  f.shift = p.shift_for(*f.emax);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = values[i];
    if (v == 0) continue;
    int e = 0;
    double frac = std::frexp(std::fabs(v), &e);
    auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
    int s = e - 53 - f.shift;
    // magnitude truncated toward zero, sign applied afterwards
    std::uint64_t mag = s >= 0 ? mant << s : (-s >= 64 ? 0 : mant >> -s);
    f.ints[i] = v < 0 ? -static_cast<Int>(mag) : static_cast<Int>(mag);
  }
  return f;
}

Int keep_mantissa(Int v, int k) {
  UInt mag = v < 0 ? -static_cast<UInt>(v) : static_cast<UInt>(v);
  int width = bit_width(mag);
  if (width > k) mag &= ~((UInt{1} << (width - k)) - 1);
  return v < 0 ? -static_cast<Int>(mag) : static_cast<Int>(mag);
}

Block block_fp_inverse(const BlockFP& f, const CodecParams& p) {
  check_size(f.ints.size(), p);
  Block out(f.ints.size(), 0.0);
  if (f.is_zero()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Int v = keep_mantissa(f.ints[i], p.k);
    UInt mag = v < 0 ? -static_cast<UInt>(v) : static_cast<UInt>(v);
    double r = std::ldexp(static_cast<double>(mag), f.shift);
    out[i] = v < 0 ? -r : r;
  }
  return out;
}

BlockFP transform_forward(BlockFP f, const CodecParams& p) {
  check_size(f.ints.size(), p);
  Envelope check{Int{1} << (p.q + 1)};
  for (Int v : f.ints) check(v);
  for (int axis = 0; axis < p.dim; ++axis) {
    std::ptrdiff_t stride = std::ptrdiff_t{1} << (2 * axis);
    for_each_line(f.ints.size(), stride,
                  [&](std::ptrdiff_t m) { lift_forward(f.ints.data() + m, stride, check); });
  }
  return f;
}

BlockFP transform_inverse(BlockFP f, const CodecParams& p) {
  check_size(f.ints.size(), p);
  for (int axis = p.dim - 1; axis >= 0; --axis) {
    std::ptrdiff_t stride = std::ptrdiff_t{1} << (2 * axis);
    for_each_line(f.ints.size(), stride,
                  [&](std::ptrdiff_t m) { inverse_lift(f.ints.data() + m, stride); });
  }
  return f;
}

std::uint64_t int_to_negabinary(Int v, int width) {
  std::uint64_t mask = low_mask(width);
  std::uint64_t odd = kOddMask & mask;
  Int hi = static_cast<Int>(mask & ~odd), lo = -static_cast<Int>(odd);
  if (v > hi || v < lo)
    throw RangeError("value does not fit " + std::to_string(width) + " negabinary digits");
  return ((static_cast<std::uint64_t>(v) + odd) ^ odd) & mask;
}

Int negabinary_to_int(std::uint64_t digits) {
  return static_cast<Int>(digits ^ kOddMask) - static_cast<Int>(kOddMask);
}

NegaBlock to_negabinary(const BlockFP& f, const CodecParams& p) {
  NegaBlock nb{{}, f.emax, f.shift};
  nb.digits.reserve(f.ints.size());
  for (Int v : f.ints) nb.digits.push_back(int_to_negabinary(v, p.q + 2));
  return nb;
}

BlockFP from_negabinary(const NegaBlock& nb, const CodecParams&) {
  BlockFP f{{}, nb.emax, nb.shift};
  f.ints.reserve(nb.digits.size());
  for (auto u : nb.digits) f.ints.push_back(negabinary_to_int(u));
  return f;
}

NegaBlock bitplane_truncate(NegaBlock nb, const CodecParams& p) {
  int cutoff = p.q + 1 - p.beta;  // positions <= cutoff are dropped
  if (cutoff < 0) return nb;
  std::uint64_t keep = ~low_mask(cutoff + 1);
  for (auto& u : nb.digits) u &= keep;
  return nb;
}

void write_planes(const NegaBlock& nb, const CodecParams& p, BitWriter& out) {
  for (int pos = p.q + 1; pos > p.q + 1 - p.beta; --pos) {
    bool any = false;
    for (auto u : nb.digits) any |= (u >> pos) & 1;
    out.put(any);
    if (any)
      for (auto u : nb.digits) out.put((u >> pos) & 1);
  }
}

CompressedBlock encode_planes(const NegaBlock& nb, const CodecParams& p) {
  CompressedBlock cb;
  cb.planes = p.beta;
  if (nb.is_zero()) return cb;
  cb.zero = false;
  cb.emax = *nb.emax;
  BitWriter w;
  write_planes(nb, p, w);
  cb.payload = w.take();
  return cb;
}

NegaBlock read_planes(BitReader& in, int emax, const CodecParams& p) {
  NegaBlock nb{std::vector<std::uint64_t>(p.block_size(), 0), emax, p.shift_for(emax)};
  int plane = 0;
  try {
    for (int pos = p.q + 1; pos > p.q + 1 - p.beta; --pos, ++plane) {
      if (!in.get()) continue;
      bool any = false;
      for (auto& u : nb.digits) {
        bool b = in.get();
        any |= b;
        u |= static_cast<std::uint64_t>(b) << pos;
      }
      if (!any) throw DecodeError("plane flagged nonzero but all bits are zero");
    }
  } catch (const DecodeError& e) {
    throw DecodeError(e.what(), std::nullopt, plane);
  }
  return nb;
}

NegaBlock decode_planes(const CompressedBlock& cb, const CodecParams& p) {
  if (cb.zero) return NegaBlock{std::vector<std::uint64_t>(p.block_size(), 0), std::nullopt, 0};
  if (cb.planes != p.beta) throw DecodeError("block plane count does not match parameters");
  BitReader r(cb.payload);
  NegaBlock nb = read_planes(r, cb.emax, p);
  if (r.remaining() != 0) throw DecodeError("trailing bits after last plane");
  return nb;
}

BlockTrace trace_block(std::span<const double> values, const CodecParams& p) {
  BlockTrace t;
  t.fp = block_fp_forward(values, p);
  t.transformed = transform_forward(t.fp, p);
  t.ordered = t.transformed;
  t.ordered.ints = permuted(t.transformed.ints, p.dim, true);
  t.nega = to_negabinary(t.ordered, p);
  t.truncated = bitplane_truncate(t.nega, p);
  t.decoded = from_negabinary(t.truncated, p);
  t.unordered = t.decoded;
  t.unordered.ints = permuted(t.decoded.ints, p.dim, false);
  t.restored = transform_inverse(t.unordered, p);
  t.output = block_fp_inverse(t.restored, p);
  return t;
}

CompressedBlock compress_block(std::span<const double> values, const CodecParams& p) {
  BlockFP f = transform_forward(block_fp_forward(values, p), p);
  f.ints = permuted(f.ints, p.dim, true);
  return encode_planes(bitplane_truncate(to_negabinary(f, p), p), p);
}

Block decompress_block(const CompressedBlock& cb, const CodecParams& p) {
  BlockFP f = from_negabinary(decode_planes(cb, p), p);
  f.ints = permuted(f.ints, p.dim, false);
  return block_fp_inverse(transform_inverse(std::move(f), p), p);
}

Block round_trip(std::span<const double> values, const CodecParams& p) {
  BlockFP f = transform_forward(block_fp_forward(values, p), p);
  f.ints = permuted(f.ints, p.dim, true);
  f = from_negabinary(bitplane_truncate(to_negabinary(f, p), p), p);
  f.ints = permuted(f.ints, p.dim, false);
  return block_fp_inverse(transform_inverse(std::move(f), p), p);
}

}  // namespace zfpkit
