#include "zfpkit/sequency.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include "zfpkit/error.hpp"

namespace zfpkit {
namespace {

constexpr std::array<std::uint8_t, 4> kOrder1 = {0, 1, 2, 3};

constexpr std::array<std::uint8_t, 16> kOrder2 = {0, 4, 1, 8, 5, 2, 12, 9, 6, 3, 13, 10, 7, 14, 11, 15};

constexpr std::array<std::uint8_t, 64> kOrder3 = {
    0,  16, 4,  1,  32, 20, 17, 8,  5,  2,  48, 36, 33, 24, 21, 18, 12, 9,  6,  3,  52, 49,
    40, 37, 34, 28, 25, 22, 19, 13, 10, 7,  56, 53, 50, 44, 41, 38, 35, 29, 26, 23, 14, 11,
    60, 57, 54, 51, 45, 42, 39, 30, 27, 15, 61, 58, 55, 46, 43, 31, 62, 59, 47, 63};

}  // namespace

std::span<const std::uint8_t> sequency_order(int dim) {
  switch (dim) {
    case 1: return kOrder1;
    case 2: return kOrder2;
    case 3: return kOrder3;
  }
  throw ParamError("dimension must be 1, 2 or 3");
}

std::vector<std::uint8_t> generate_sequency_order(int dim) {
  if (dim < 1 || dim > 3) throw ParamError("dimension must be 1, 2 or 3");
  int n = 1 << (2 * dim);
  std::vector<std::tuple<int, std::array<int, 3>, int>> keys;
  for (int m = 0; m < n; ++m) {
    std::array<int, 3> coord{};
    int sum = 0;
    for (int a = dim - 1, t = m; a >= 0; --a, t >>= 2) {
      coord[a] = -(t & 3);  // negated so ascending sort is descending lex
      sum += t & 3;
    }
    keys.emplace_back(sum, coord, m);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::uint8_t> order;
  for (auto& k : keys) order.push_back(static_cast<std::uint8_t>(std::get<2>(k)));
  return order;
}

}  // namespace zfpkit
