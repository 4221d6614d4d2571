#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "zfpkit/container.hpp"

namespace zfpkit {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// Headerless little-endian IEEE values, row-major.
Grid read_raw_grid(const std::filesystem::path& path, std::vector<std::size_t> shape,
                   ScalarType type);
std::vector<std::uint8_t> encode_raw(const Grid& grid, ScalarType type);

}  // namespace zfpkit
