#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace zfpkit {

// Streams are std::mt19937_64 (fully specified by the standard) seeded from
// SplitMix64-mixed keys; the distributions below are hand-rolled because the
// std ones are implementation defined.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys);
Rng make_rng(std::initializer_list<std::uint64_t> keys);

// [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);
// [0, n), unbiased.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace zfpkit
