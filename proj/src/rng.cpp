#include "zfpkit/rng.hpp"

namespace zfpkit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x5A46504B;  // "ZFPK"
  for (auto k : keys) h = splitmix64(h ^ k);
  return h;
}

Rng make_rng(std::initializer_list<std::uint64_t> keys) { return Rng(mix_keys(keys)); }

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // rejection sampling on the largest multiple of n
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return v % n;
}

}  // namespace zfpkit
