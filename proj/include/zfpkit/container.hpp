#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "zfpkit/codec.hpp"
#include "zfpkit/params.hpp"

namespace zfpkit {

enum class ScalarType { f32, f64 };

std::size_t scalar_bytes(ScalarType t);

// Row-major array, last index fastest.
struct Grid {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  std::size_t size() const;
};

// Blocks in lexicographic order of block coordinates; partial blocks are
// padded by repeating the last value along each short axis.
std::vector<Block> partition(const Grid& grid, int dim);
Grid unpartition(std::span<const Block> blocks, std::span<const std::size_t> shape, int dim);
std::size_t block_count(std::span<const std::size_t> shape);

inline constexpr std::uint8_t kFormatVersion = 1;

struct ArrayHeader {
  std::uint8_t version = kFormatVersion;
  CodecParams params;
  ScalarType source = ScalarType::f64;
  std::vector<std::size_t> dims;

  std::size_t block_count() const { return zfpkit::block_count(dims); }
  friend bool operator==(const ArrayHeader&, const ArrayHeader&) = default;
};

void write_header(const ArrayHeader& h, std::vector<std::uint8_t>& out);
// Returns the header and the number of bytes it occupies.
std::pair<ArrayHeader, std::size_t> read_header(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> compress(const Grid& grid, const CodecParams& p,
                                   ScalarType source = ScalarType::f64);

struct Decompressed {
  ArrayHeader header;
  Grid grid;
};

Decompressed decompress(std::span<const std::uint8_t> bytes);

}  // namespace zfpkit
