#include "zfpkit/container.hpp"

#include <cstring>
#include <string>

#include "zfpkit/bitstream.hpp"
#include "zfpkit/error.hpp"
#include "zfpkit/parallel.hpp"
#include "zfpkit/sequency.hpp"

namespace zfpkit {
namespace {

constexpr char kMagic[4] = {'Z', 'F', 'P', 'K'};
constexpr std::uint8_t kFlagPartialInverse = 1;
constexpr std::uint8_t kFlagFloatSource = 2;

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteCursor {
 public:
  explicit ByteCursor(std::span<const std::uint8_t> b) : b_(b) {}
  std::uint64_t le(int bytes) {
    if (pos_ + bytes > b_.size()) throw DecodeError("truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{b_[pos_ + i]} << (8 * i);
    pos_ += bytes;
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

// Per-axis block counts and strides for a grid of the given shape.
struct Tiling {
  std::vector<std::size_t> shape;
  std::vector<std::size_t> blocks;  // blocks along each axis

  explicit Tiling(std::span<const std::size_t> s) : shape(s.begin(), s.end()) {
    for (auto n : shape) blocks.push_back((n + 3) / 4);
  }

  // Grid offset of element j inside block b, clamped to the last value.
  template <class Fn>
  void visit(std::size_t b, Fn fn) const {
    int d = static_cast<int>(shape.size());
    std::vector<std::size_t> origin(d);
    for (int a = d - 1; a >= 0; --a) {
      origin[a] = (b % blocks[a]) * 4;
      b /= blocks[a];
    }
    std::size_t n = std::size_t{1} << (2 * d);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t offset = 0;
      bool inside = true;
      for (int a = 0; a < d; ++a) {
        std::size_t local = (j >> (2 * (d - 1 - a))) & 3;
        std::size_t c = origin[a] + local;
        if (c >= shape[a]) inside = false, c = shape[a] - 1;
        offset = offset * shape[a] + c;
      }
      fn(j, offset, inside);
    }
  }
};

void check_shape(std::span<const std::size_t> shape, int dim) {
  if (static_cast<int>(shape.size()) != dim)
    throw ParamError("grid has " + std::to_string(shape.size()) + " axes but d = " +
                     std::to_string(dim));
  for (auto n : shape)
    if (n == 0) throw ParamError("grid dimensions must be positive");
}

}  // namespace

std::size_t scalar_bytes(ScalarType t) { return t == ScalarType::f32 ? 4 : 8; }

std::size_t Grid::size() const {
  if (shape.empty()) return 0;
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

std::size_t block_count(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= (s + 3) / 4;
  return n;
}

std::vector<Block> partition(const Grid& grid, int dim) {
  check_shape(grid.shape, dim);
  if (grid.values.size() != grid.size()) throw ParamError("grid values do not match its shape");
  Tiling t(grid.shape);
  std::vector<Block> out(block_count(grid.shape), Block(std::size_t{1} << (2 * dim)));
  for (std::size_t b = 0; b < out.size(); ++b)
    t.visit(b, [&](std::size_t j, std::size_t off, bool) { out[b][j] = grid.values[off]; });
  return out;
}

Grid unpartition(std::span<const Block> blocks, std::span<const std::size_t> shape, int dim) {
  check_shape(shape, dim);
  if (blocks.size() != block_count(shape)) throw ParamError("block count does not match shape");
  Grid g{{shape.begin(), shape.end()}, {}};
  g.values.assign(g.size(), 0.0);
  Tiling t(shape);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].size() != std::size_t{1} << (2 * dim)) throw ParamError("block has wrong size");
    t.visit(b, [&](std::size_t j, std::size_t off, bool inside) {
      if (inside) g.values[off] = blocks[b][j];
    });
  }
  return g;
}

void write_header(const ArrayHeader& h, std::vector<std::uint8_t>& out) {
  const auto& p = h.params;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_le(out, h.version, 1);
  put_le(out, p.dim, 1);
  put_le(out, p.k, 2);
  put_le(out, p.q, 2);
  put_le(out, p.beta, 2);
  put_le(out, p.exponent_bits, 1);
  std::uint8_t flags = (p.allow_partial_inverse ? kFlagPartialInverse : 0) |
                       (h.source == ScalarType::f32 ? kFlagFloatSource : 0);
  put_le(out, flags, 1);
  for (auto n : h.dims) {
    if (n > 0xFFFFFFFFu) throw ParamError("dimension exceeds 32 bits");
    put_le(out, n, 4);
  }
}

std::pair<ArrayHeader, std::size_t> read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw DecodeError("bad magic, not a ZFPK container");
  ByteCursor c(bytes.subspan(4));
  ArrayHeader h;
  h.version = static_cast<std::uint8_t>(c.le(1));
  if (h.version != kFormatVersion)
    throw DecodeError("unsupported container version " + std::to_string(h.version));
  auto& p = h.params;
  p.dim = static_cast<int>(c.le(1));
  p.k = static_cast<int>(c.le(2));
  p.q = static_cast<int>(c.le(2));
  p.beta = static_cast<int>(c.le(2));
  p.exponent_bits = static_cast<int>(c.le(1));
  auto flags = c.le(1);
  if (flags & ~std::uint64_t{kFlagPartialInverse | kFlagFloatSource})
    throw DecodeError("unknown header flags");
  p.allow_partial_inverse = flags & kFlagPartialInverse;
  h.source = (flags & kFlagFloatSource) ? ScalarType::f32 : ScalarType::f64;
  try {
    p.validate();
  } catch (const ParamError& e) {
    throw DecodeError(std::string("invalid header parameters: ") + e.what());
  }
  for (int a = 0; a < p.dim; ++a) {
    h.dims.push_back(c.le(4));
    if (h.dims.back() == 0) throw DecodeError("zero dimension in header");
  }
  return {h, 4 + c.pos()};
}

std::vector<std::uint8_t> compress(const Grid& grid, const CodecParams& p, ScalarType source) {
  p.validate();
  auto blocks = partition(grid, p.dim);
  int bias = 1 << (p.exponent_bits - 1);
  std::vector<BitBuffer> encoded(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t b) {
    CompressedBlock cb = compress_block(blocks[b], p);
    BitWriter w;
    w.put(cb.zero);
    if (!cb.zero) {
      int stored = cb.emax + bias;
      if (stored < 0 || stored >= 2 * bias)
        throw RangeError("block exponent " + std::to_string(cb.emax) + " does not fit " +
                         std::to_string(p.exponent_bits) + " bits; raise the exponent width");
      w.put_bits(static_cast<std::uint64_t>(stored), p.exponent_bits);
      w.append(cb.payload);
    }
    encoded[b] = w.take();
  });
  std::vector<std::uint8_t> out;
  write_header(ArrayHeader{kFormatVersion, p, source, grid.shape}, out);
  for (auto& e : encoded) out.insert(out.end(), e.bytes.begin(), e.bytes.end());
  return out;
}

Decompressed decompress(std::span<const std::uint8_t> bytes) {
  auto [header, offset] = read_header(bytes);
  const CodecParams& p = header.params;
  auto body = bytes.subspan(offset);
  BitReader in(body, body.size() * 8);
  int bias = 1 << (p.exponent_bits - 1);
  std::vector<CompressedBlock> cbs(header.block_count());
  std::vector<NegaBlock> planes(cbs.size());
  for (std::size_t b = 0; b < cbs.size(); ++b) {
    try {
      if (!in.get()) {
        int emax = static_cast<int>(in.get_bits(p.exponent_bits)) - bias;
        planes[b] = read_planes(in, emax, p);
        cbs[b].zero = false;
      }
    } catch (const DecodeError& e) {
      throw e.at_block(b);
    }
    in.align();
  }
  if (in.remaining() != 0) throw DecodeError("trailing bytes after last block");
  std::vector<Block> blocks(cbs.size());
  parallel_for(blocks.size(), [&](std::size_t b) {
    if (cbs[b].zero) {
      blocks[b].assign(p.block_size(), 0.0);
      return;
    }
    BlockFP f = from_negabinary(planes[b], p);
    f.ints = sequency_unpermute(std::span<const Int>(f.ints), p.dim);
    blocks[b] = block_fp_inverse(transform_inverse(std::move(f), p), p);
  });
  return {header, unpartition(blocks, header.dims, p.dim)};
}

}  // namespace zfpkit
