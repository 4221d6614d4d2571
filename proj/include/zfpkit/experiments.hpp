#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zfpkit/codec.hpp"
#include "zfpkit/container.hpp"
#include "zfpkit/dyadic.hpp"
#include "zfpkit/rng.hpp"

namespace zfpkit {

// Magnitudes span [2^emin, 2^emax], split into 4^d equal exponent bands with
// one draw per band.
struct WorstCaseSpec {
  int dim = 2;
  int emin = 0;
  int emax = 0;
  int k = 53;  // generated values are rounded to k significant bits
};

Block gen_worst_case_block(const WorstCaseSpec& spec, Rng& rng);

// Bounds applying to a block under the given parameters with exponent range rho.
struct CellBounds {
  Rational block;
  Rational componentwise;
  double block_d = 0;
  double componentwise_d = 0;
  bool partial = false;  // weaker partial-inverse bound in use
};

CellBounds cell_bounds(const CodecParams& p, int rho);

struct ExperimentRecord {
  int dim = 0, k = 0, q = 0, beta = 0;
  int emin = 0, emax = 0;
  std::uint64_t seed = 0;
  double block_error = 0;  // ||x' - x|| / ||x||
  double comp_error = 0;   // max |x'_i - x_i| / |x_i| over nonzero x_i
  double block_bound = 0;
  double comp_bound = 0;
  bool block_violation = false;
  bool comp_violation = false;

  bool violation() const { return block_violation || comp_violation; }
};

// Exponent range taken from the block itself:
// emax = ceil(log2 max|x|), emin = floor(log2 min nonzero |x|).
ExperimentRecord measure(std::span<const double> block, const CodecParams& p);
// Uses the caller's bounds and exponent labels.
ExperimentRecord measure(std::span<const double> block, const CodecParams& p, const CellBounds& bounds,
                         int emin, int emax);

struct SweepSpec {
  int dim = 2;
  int k = 24;
  int q = 30;
  int emin = 0;
  std::vector<int> rhos{0, 7, 14};
  std::vector<int> betas;  // empty: every legal beta
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  bool allow_partial_inverse = false;
};

// 0..q-2d+2 plus q+2.
std::vector<int> legal_betas(int dim, int q);

struct SweepCell {
  int beta = 0, emin = 0, emax = 0;
  std::size_t trials = 0;
  double block_min = 0, block_max = 0, block_mean = 0;
  double comp_min = 0, comp_max = 0, comp_mean = 0;
  double block_bound = 0, comp_bound = 0;
  std::size_t violations = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<ExperimentRecord> offending;  // every violating record

  std::size_t violations() const { return offending.size(); }
};

SweepResult sweep(const SweepSpec& spec,
                  const std::function<void(const ExperimentRecord&)>& on_record = {});
std::string sweep_csv(const SweepSpec& spec, const SweepResult& result);
std::string records_csv(std::span<const ExperimentRecord> records);

struct GridRow {
  int beta = 0;
  double max_block_error = 0;
  double bound = 0;
  double ratio = 0;
  std::size_t violations = 0;
};

std::vector<GridRow> analyze_grid(const Grid& grid, const CodecParams& base, std::span<const int> betas,
                                  ScalarType source = ScalarType::f64);
std::string grid_csv(std::span<const GridRow> rows);

// Synthetic inputs: a smooth field and one with random exponents spanning
// many binades.
Grid smooth_grid(std::vector<std::size_t> shape);
Grid high_dynamic_range_grid(std::vector<std::size_t> shape, std::uint64_t seed, int span = 40);

}  // namespace zfpkit
