#include "zfpkit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "zfpkit/bounds.hpp"
#include "zfpkit/error.hpp"
#include "zfpkit/parallel.hpp"

namespace zfpkit {
namespace {

// Slack for the double-precision screen before falling back to exact checks.
constexpr double kScreen = 1.0 - 1e-9;

double round_to_bits(double v, int k) {
  int e = 0;
  double f = std::frexp(v, &e);
  return std::ldexp(std::nearbyint(std::ldexp(f, k)), e - k);
}

// |approx - exact| <= bound * scale, decided exactly when the double screen
// is inconclusive.
bool within(double approx, double exact, double scale, const Rational& bound, double bound_d) {
  if (!std::isfinite(approx)) return false;
  double diff = std::fabs(approx - exact);
  if (diff <= bound_d * scale * kScreen) return true;
  Dyadic d = (Dyadic::from_double(approx) - Dyadic::from_double(exact)).abs();
  return d.to_rational() <= bound * Dyadic::from_double(scale).to_rational();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Block gen_worst_case_block(const WorstCaseSpec& spec, Rng& rng) {
  if (spec.emax < spec.emin) throw ParamError("emax must not be below emin");
  std::size_t n = std::size_t{1} << (2 * spec.dim);
  double lo_edge = std::ldexp(1.0, spec.emin), hi_edge = std::ldexp(1.0, spec.emax);
  double delta = static_cast<double>(spec.emax - spec.emin) / static_cast<double>(n);
  Block b(n);
  for (std::size_t h = 0; h < n; ++h) {
    double lo = h == 0 ? lo_edge : std::exp2(spec.emin + static_cast<double>(h) * delta);
    double hi = h + 1 == n ? hi_edge : std::exp2(spec.emin + static_cast<double>(h + 1) * delta);
    double mag = std::clamp(lo + uniform_unit(rng) * (hi - lo), lo, hi);
    mag = std::clamp(round_to_bits(mag, spec.k), lo_edge, hi_edge);
    b[h] = (rng() >> 63) ? -mag : mag;
  }
  for (std::size_t i = n - 1; i > 0; --i) std::swap(b[i], b[uniform_index(rng, i + 1)]);
  return b;
}

CellBounds cell_bounds(const CodecParams& p, int rho) {
  BoundInputs in{p.dim, p.k, p.q, p.beta};
  CellBounds c;
  c.partial = p.in_partial_regime();
  c.block = c.partial ? B_beta_exact(in) : K_beta_exact(in);
  c.componentwise = c.block * Rational(BigInt(1) << rho);
  c.block_d = to_double(c.block);
  c.componentwise_d = to_double(c.componentwise);
  return c;
}

ExperimentRecord measure(std::span<const double> block, const CodecParams& p, const CellBounds& bounds,
                         int emin, int emax) {
  Block out = round_trip(block, p);
  double norm = 0, err = 0;
  for (double v : block) norm = std::max(norm, std::fabs(v));
  if (norm == 0) throw ParamError("measure needs a nonzero block");
  ExperimentRecord r;
  r.dim = p.dim, r.k = p.k, r.q = p.q, r.beta = p.beta, r.emin = emin, r.emax = emax;
  r.block_bound = bounds.block_d;
  r.comp_bound = bounds.componentwise_d;
  for (std::size_t i = 0; i < block.size(); ++i) {
    double diff = std::fabs(out[i] - block[i]);
    if (!(diff <= err)) err = diff;  // also picks up NaN
    if (block[i] != 0) {
      r.comp_error = std::max(r.comp_error, diff / std::fabs(block[i]));
      if (!within(out[i], block[i], std::fabs(block[i]), bounds.componentwise, bounds.componentwise_d))
        r.comp_violation = true;
    }
  }
  r.block_error = err / norm;
  for (std::size_t i = 0; i < block.size() && !r.block_violation; ++i)
    r.block_violation = !within(out[i], block[i], norm, bounds.block, bounds.block_d);
  return r;
}

ExperimentRecord measure(std::span<const double> block, const CodecParams& p) {
  p.validate();
  double hi = 0, lo = INFINITY;
  for (double v : block) {
    if (v == 0) continue;
    hi = std::max(hi, std::fabs(v));
    lo = std::min(lo, std::fabs(v));
  }
  if (hi == 0) throw ParamError("measure needs a nonzero block");
  int emax = std::ilogb(hi);
  if (std::ldexp(1.0, emax) != hi) ++emax;
  int emin = std::ilogb(lo);
  return measure(block, p, cell_bounds(p, emax - emin), emin, emax);
}

std::vector<int> legal_betas(int dim, int q) {
  std::vector<int> out;
  for (int b = 0; b <= q - 2 * dim + 2; ++b) out.push_back(b);
  out.push_back(q + 2);
  return out;
}

SweepResult sweep(const SweepSpec& spec, const std::function<void(const ExperimentRecord&)>& on_record) {
  if (spec.trials < 1) throw ParamError("trials must be at least 1");
  std::vector<int> betas = spec.betas.empty() ? legal_betas(spec.dim, spec.q) : spec.betas;
  SweepResult result;
  for (int rho : spec.rhos) {
    if (rho < 0) throw ParamError("rho must be nonnegative");
    for (int beta : betas) {
      CodecParams p;
      p.dim = spec.dim, p.k = spec.k, p.q = spec.q, p.beta = beta;
      p.allow_partial_inverse = spec.allow_partial_inverse;
      p.validate();
      CellBounds bounds = cell_bounds(p, rho);
      WorstCaseSpec gen{spec.dim, spec.emin, spec.emin + rho, spec.k};
      std::vector<ExperimentRecord> recs(spec.trials);
      parallel_for(spec.trials, [&](std::size_t t) {
        std::uint64_t stream = mix_keys({spec.seed, std::uint64_t(spec.dim), std::uint64_t(spec.k),
                                         std::uint64_t(spec.q), std::uint64_t(rho), std::uint64_t(beta), t});
        Rng rng(stream);
        Block b = gen_worst_case_block(gen, rng);
        recs[t] = measure(b, p, bounds, gen.emin, gen.emax);
        recs[t].seed = stream;
      });
      SweepCell c;
      c.beta = beta, c.emin = gen.emin, c.emax = gen.emax, c.trials = recs.size();
      c.block_bound = bounds.block_d, c.comp_bound = bounds.componentwise_d;
      c.block_min = c.comp_min = INFINITY;
      for (auto& r : recs) {
        c.block_min = std::min(c.block_min, r.block_error);
        c.block_max = std::max(c.block_max, r.block_error);
        c.comp_min = std::min(c.comp_min, r.comp_error);
        c.comp_max = std::max(c.comp_max, r.comp_error);
        c.block_mean += r.block_error;
        c.comp_mean += r.comp_error;
        if (r.violation()) ++c.violations, result.offending.push_back(r);
        if (on_record) on_record(r);
      }
      c.block_mean /= static_cast<double>(recs.size());
      c.comp_mean /= static_cast<double>(recs.size());
      result.cells.push_back(c);
    }
  }
  return result;
}

std::string sweep_csv(const SweepSpec& spec, const SweepResult& result) {
  std::string out =
      "d,k,q,beta,emin,emax,err_block_min,err_block_max,err_comp_min,err_comp_max,K_beta,comp_bound,violations\n";
  for (auto& c : result.cells) {
    out += std::to_string(spec.dim) + "," + std::to_string(spec.k) + "," + std::to_string(spec.q) + "," +
           std::to_string(c.beta) + "," + std::to_string(c.emin) + "," + std::to_string(c.emax) + "," +
           fmt(c.block_min) + "," + fmt(c.block_max) + "," + fmt(c.comp_min) + "," + fmt(c.comp_max) + "," +
           fmt(c.block_bound) + "," + fmt(c.comp_bound) + "," + std::to_string(c.violations) + "\n";
  }
  return out;
}

std::string records_csv(std::span<const ExperimentRecord> records) {
  std::string out = "d,k,q,beta,emin,emax,seed,err_block,err_comp,K_beta,comp_bound,violation\n";
  for (auto& r : records) {
    out += std::to_string(r.dim) + "," + std::to_string(r.k) + "," + std::to_string(r.q) + "," +
           std::to_string(r.beta) + "," + std::to_string(r.emin) + "," + std::to_string(r.emax) + "," +
           std::to_string(r.seed) + "," + fmt(r.block_error) + "," + fmt(r.comp_error) + "," +
           fmt(r.block_bound) + "," + fmt(r.comp_bound) + "," + (r.violation() ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<GridRow> analyze_grid(const Grid& grid, const CodecParams& base, std::span<const int> betas,
                                  ScalarType source) {
  auto original = partition(grid, base.dim);
  double raw_bytes = static_cast<double>(grid.size() * scalar_bytes(source));
  std::vector<GridRow> rows;
  for (int beta : betas) {
    CodecParams p = base;
    p.beta = beta;
    p.validate();
    auto bytes = compress(grid, p, source);
    auto decoded = partition(decompress(bytes).grid, p.dim);
    CellBounds bounds = cell_bounds(p, 0);
    GridRow row;
    row.beta = beta;
    row.bound = bounds.block_d;
    row.ratio = raw_bytes / static_cast<double>(bytes.size());
    for (std::size_t b = 0; b < original.size(); ++b) {
      double norm = 0, err = 0;
      for (double v : original[b]) norm = std::max(norm, std::fabs(v));
      if (norm == 0) continue;
      bool ok = true;
      for (std::size_t i = 0; i < original[b].size(); ++i) {
        err = std::max(err, std::fabs(decoded[b][i] - original[b][i]));
        ok = ok && within(decoded[b][i], original[b][i], norm, bounds.block, bounds.block_d);
      }
      row.max_block_error = std::max(row.max_block_error, err / norm);
      if (!ok) ++row.violations;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string grid_csv(std::span<const GridRow> rows) {
  std::string out = "beta,max_block_err,K_beta,ratio\n";
  for (auto& r : rows)
    out += std::to_string(r.beta) + "," + fmt(r.max_block_error) + "," + fmt(r.bound) + "," + fmt(r.ratio) + "\n";
  return out;
}

Grid smooth_grid(std::vector<std::size_t> shape) {
  Grid g{std::move(shape), {}};
  g.values.resize(g.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    double v = 1.5;
    std::size_t rest = i;
    for (std::size_t a = g.shape.size(); a-- > 0;) {
      double c = static_cast<double>(rest % g.shape[a]);
      rest /= g.shape[a];
      v += std::sin(0.11 * c + 0.7 * static_cast<double>(a)) * std::cos(0.05 * c);
    }
    g.values[i] = v;
  }
  return g;
}

Grid high_dynamic_range_grid(std::vector<std::size_t> shape, std::uint64_t seed, int span) {
  Grid g{std::move(shape), {}};
  g.values.resize(g.size());
  Rng rng(mix_keys({seed, 0x4844ull}));
  for (auto& v : g.values) {
    double e = (uniform_unit(rng) - 0.5) * span;
    v = std::exp2(e) * ((rng() >> 63) ? -1.0 : 1.0);
  }
  return g;
}

}  // namespace zfpkit
