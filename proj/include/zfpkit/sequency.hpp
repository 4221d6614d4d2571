#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zfpkit {

// order[j] is the row-major index placed at position j.
std::span<const std::uint8_t> sequency_order(int dim);
// Rebuilds the ordering from its definition: ascending coordinate sum, ties
// by descending coordinate vector.
std::vector<std::uint8_t> generate_sequency_order(int dim);

template <class T>
std::vector<T> sequency_permute(std::span<const T> in, int dim) {
  auto order = sequency_order(dim);
  std::vector<T> out(in.size());
  for (std::size_t j = 0; j < order.size(); ++j) out[j] = in[order[j]];
  return out;
}

template <class T>
std::vector<T> sequency_unpermute(std::span<const T> in, int dim) {
  auto order = sequency_order(dim);
  std::vector<T> out(in.size());
  for (std::size_t j = 0; j < order.size(); ++j) out[order[j]] = in[j];
  return out;
}

}  // namespace zfpkit
