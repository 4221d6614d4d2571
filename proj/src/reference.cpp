#include "zfpkit/reference.hpp"

#include <cmath>

#include "zfpkit/error.hpp"
#include "zfpkit/sequency.hpp"

namespace zfpkit::reference {
namespace {

const SignedBinary kZero;

void check_size(std::size_t got, const CodecParams& p) {
  if (got != p.block_size()) throw ParamError("block size does not match dimension");
}

SignedBinary twice(const SignedBinary& v) { return shift(v, -1); }

template <class Fn>
void each_line(BlockFP& f, int axis, Fn fn) {
  std::size_t stride = std::size_t{1} << (2 * axis);
  for (std::size_t m = 0; m < f.ints.size(); ++m)
    if ((m / stride) % 4 == 0)
      fn(f.ints[m], f.ints[m + stride], f.ints[m + 2 * stride], f.ints[m + 3 * stride]);
}

}  // namespace

BlockFP block_fp_forward(std::span<const double> values, const CodecParams& p) {
  check_size(values.size(), p);
  std::vector<SignedBinary> exact;
  for (double v : values) exact.push_back(to_signed_binary(Dyadic::from_double(v)));
  BlockFP f;
  auto range = exponent_range(exact);
  if (!range) {
    f.ints.assign(values.size(), kZero);
    return f;
  }
  f.emax = range->max;
  f.shift = range->max - p.q + 1;
  for (auto& v : exact) f.ints.push_back(truncate(shift(v, f.shift), -1));
  return f;
}

SignedBinary keep_mantissa(const SignedBinary& v, int k) {
  if (v.is_zero()) return v;
  return truncate(v, *v.magnitude().top() - k);
}

std::vector<Dyadic> block_fp_inverse(const BlockFP& f, const CodecParams& p) {
  std::vector<Dyadic> out;
  for (auto& v : f.ints)
    out.push_back(f.emax ? value_of(shift(keep_mantissa(v, p.k), -f.shift)) : Dyadic());
  return out;
}

void forward_lift(SignedBinary& x, SignedBinary& y, SignedBinary& z, SignedBinary& w) {
  x = x + w; x = round_half(x); w = w - x;
  z = z + y; z = round_half(z); y = y - z;
  x = x + z; x = round_half(x); z = z - x;
  w = w + y; w = round_half(w); y = y - w;
  w = w + round_half(y); y = y - round_half(w);
}

void inverse_lift(SignedBinary& x, SignedBinary& y, SignedBinary& z, SignedBinary& w) {
  y = y + round_half(w); w = w - round_half(y);
  y = y + w; w = twice(w); w = w - y;
  z = z + x; x = twice(x); x = x - z;
  y = y + z; z = twice(z); z = z - y;
  w = w + x; x = twice(x); x = x - w;
}

BlockFP transform_forward(BlockFP f, const CodecParams& p) {
  check_size(f.ints.size(), p);
  for (int axis = 0; axis < p.dim; ++axis) each_line(f, axis, forward_lift);
  return f;
}

BlockFP transform_inverse(BlockFP f, const CodecParams& p) {
  check_size(f.ints.size(), p);
  for (int axis = p.dim - 1; axis >= 0; --axis) each_line(f, axis, inverse_lift);
  return f;
}

BlockFP sequency_permute(const BlockFP& f, const CodecParams& p) {
  BlockFP r = f;
  r.ints = zfpkit::sequency_permute(std::span<const SignedBinary>(f.ints), p.dim);
  return r;
}

BlockFP sequency_unpermute(const BlockFP& f, const CodecParams& p) {
  BlockFP r = f;
  r.ints = zfpkit::sequency_unpermute(std::span<const SignedBinary>(f.ints), p.dim);
  return r;
}

NegaBlock to_negabinary(const BlockFP& f, const CodecParams& p) {
  NegaBlock nb{{}, f.emax, f.shift};
  for (auto& v : f.ints) {
    Negabinary n = zfpkit::to_negabinary(value_of(v).to_integer());
    if (!n.is_zero() && *n.digits().top() > p.q + 1)
      throw RangeError("value does not fit q+2 negabinary digits");
    nb.digits.push_back(std::move(n));
  }
  return nb;
}

BlockFP from_negabinary(const NegaBlock& nb, const CodecParams&) {
  BlockFP f{{}, nb.emax, nb.shift};
  for (auto& d : nb.digits) f.ints.push_back(to_signed_binary(value_of(d)));
  return f;
}

NegaBlock bitplane_truncate(const NegaBlock& nb, const CodecParams& p) {
  NegaBlock r{{}, nb.emax, nb.shift};
  for (auto& d : nb.digits) r.digits.push_back(truncate(d, p.q + 1 - p.beta));
  return r;
}

Trace trace_block(std::span<const double> values, const CodecParams& p) {
  Trace t;
  t.fp = reference::block_fp_forward(values, p);
  t.transformed = reference::transform_forward(t.fp, p);
  t.ordered = reference::sequency_permute(t.transformed, p);
  t.nega = reference::to_negabinary(t.ordered, p);
  t.truncated = reference::bitplane_truncate(t.nega, p);
  t.decoded = reference::from_negabinary(t.truncated, p);
  t.unordered = reference::sequency_unpermute(t.decoded, p);
  t.restored = reference::transform_inverse(t.unordered, p);
  t.output = reference::block_fp_inverse(t.restored, p);
  return t;
}

zfpkit::BlockFP to_fast(const BlockFP& f) {
  zfpkit::BlockFP r{{}, f.emax, f.shift};
  for (auto& v : f.ints) {
    Int x = 0;
    for (int pos : v.magnitude().positions()) {
      if (pos < 0 || pos > 125) throw RangeError("value is not a 128-bit integer");
      x |= Int{1} << pos;
    }
    if (v.negative()) x = -x;
    r.ints.push_back(x);
  }
  return r;
}

zfpkit::NegaBlock to_fast(const NegaBlock& nb) {
  zfpkit::NegaBlock r{{}, nb.emax, nb.shift};
  for (auto& d : nb.digits) {
    std::uint64_t u = 0;
    for (int pos : d.digits().positions()) {
      if (pos < 0 || pos > 63) throw RangeError("negabinary digit outside 64-bit word");
      u |= std::uint64_t{1} << pos;
    }
    r.digits.push_back(u);
  }
  return r;
}

}  // namespace zfpkit::reference
