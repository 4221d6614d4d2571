#include "zfpkit/raw_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <random>
#include <string>

#include "zfpkit/error.hpp"

namespace zfpkit {

static_assert(std::endian::native == std::endian::little, "raw grids are read as little-endian");

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read failed: " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed: " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

Grid read_raw_grid(const std::filesystem::path& path, std::vector<std::size_t> shape,
                   ScalarType type) {
  Grid g{std::move(shape), {}};
  for (auto n : g.shape)
    if (n == 0) throw ParamError("grid dimensions must be positive");
  auto bytes = read_file(path);
  std::size_t width = scalar_bytes(type);
  if (bytes.size() != g.size() * width)
    throw ParamError(path.string() + " holds " + std::to_string(bytes.size()) + " bytes, dims need " +
                     std::to_string(g.size() * width));
  g.values.resize(g.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (type == ScalarType::f32) {
      float f;
      std::memcpy(&f, bytes.data() + 4 * i, 4);
      g.values[i] = f;
    } else {
      std::memcpy(&g.values[i], bytes.data() + 8 * i, 8);
    }
  }
  return g;
}

std::vector<std::uint8_t> encode_raw(const Grid& grid, ScalarType type) {
  std::vector<std::uint8_t> out(grid.values.size() * scalar_bytes(type));
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    if (type == ScalarType::f32) {
      auto f = static_cast<float>(grid.values[i]);
      std::memcpy(out.data() + 4 * i, &f, 4);
    } else {
      std::memcpy(out.data() + 8 * i, &grid.values[i], 8);
    }
  }
  return out;
}

}  // namespace zfpkit
