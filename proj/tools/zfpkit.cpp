// zfpkit: compress / decompress raw grids, print error bounds, run sweeps.
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zfpkit/bounds.hpp"
#include "zfpkit/container.hpp"
#include "zfpkit/error.hpp"
#include "zfpkit/experiments.hpp"
#include "zfpkit/raw_io.hpp"

namespace {

using namespace zfpkit;

constexpr int kViolationExit = 3;

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::string item;
  std::stringstream ss(text);
  char sep = text.find('x') != std::string::npos ? 'x' : ',';
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = std::stoll(item, &used);
    if (used != item.size() || v <= 0) throw ParamError("bad dims entry '" + item + "'");
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.empty() || dims.size() > 3) throw ParamError("--dims needs 1 to 3 positive extents");
  return dims;
}

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw ParamError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParamError("empty list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  int lo = std::stoi(text.substr(0, colon)), hi = std::stoi(text.substr(colon + 1));
  if (lo > hi) throw ParamError("empty range '" + text + "'");
  return {lo, hi};
}

std::vector<int> range_values(std::pair<int, int> r) {
  std::vector<int> out;
  for (int v = r.first; v <= r.second; ++v) out.push_back(v);
  return out;
}

ScalarType parse_scalar(const std::string& s) { return s == "f32" ? ScalarType::f32 : ScalarType::f64; }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  write_file_atomic(out_path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct CodecFlags {
  std::optional<int> dim, k, q, beta;
  int exponent_bits = 11;
  bool allow_partial = false;
  std::string scalar = "f64";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--d", dim, "Block dimension (defaults to the number of --dims entries)")->check(CLI::Range(1, 3));
    cmd->add_option("--k", k, "Source mantissa bits");
    cmd->add_option("--q", q, "Block integer precision");
    cmd->add_option("--beta", beta, "Bit planes kept");
    cmd->add_option("--exponent-bits", exponent_bits, "Width of the stored block exponent")->capture_default_str();
    cmd->add_flag("--allow-appendix-b", allow_partial, "Allow q-2d+2 < beta < q+2");
    cmd->add_option("--scalar", scalar, "Scalar type")->check(CLI::IsMember({"f32", "f64"}))->capture_default_str();
  }

  CodecParams resolve(int default_dim) const {
    int d = dim.value_or(default_dim);
    CodecParams p = parse_scalar(scalar) == ScalarType::f32 ? float_params(d) : double_params(d);
    if (k) p.k = *k;
    if (q) p.q = *q;
    p.beta = beta.value_or(p.q - 2 * d + 2);
    p.exponent_bits = exponent_bits;
    p.allow_partial_inverse = allow_partial;
    p.validate();
    return p;
  }
};

std::string bound_summary(const CodecParams& p) {
  BoundInputs in{p.dim, p.k, p.q, p.beta};
  if (p.in_partial_regime()) return "B_beta = " + fmt(B_beta(in));
  return "K_beta = " + fmt(K_beta(in));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-precision ZFP codec with round-off error bounds"};
  app.require_subcommand(1);

  // compress
  auto* comp = app.add_subcommand("compress", "Compress a raw grid");
  std::string comp_in, comp_out, comp_dims;
  CodecFlags comp_flags;
  comp->add_option("input", comp_in, "Raw little-endian grid")->required();
  comp->add_option("--dims", comp_dims, "Grid extents, slowest first (e.g. 10,10)")->required();
  comp->add_option("--out", comp_out, "Container path")->required();
  comp_flags.add_to(comp);

  // decompress
  auto* dec = app.add_subcommand("decompress", "Decompress a container to a raw grid");
  std::string dec_in, dec_out, dec_scalar;
  dec->add_option("input", dec_in, "Container")->required();
  dec->add_option("--out", dec_out, "Raw output path")->required();
  dec->add_option("--scalar", dec_scalar, "Output scalar type (defaults to the source type)")
      ->check(CLI::IsMember({"f32", "f64"}));

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Print error bounds and mode selections");
  int b_dim = 1, b_k = 53, b_q = 62, b_beta = -1, b_be = 11;
  std::optional<int> b_rho, b_bits, b_emax;
  bool b_surface = false, b_partial = false;
  std::string b_beta_range = "1:64", b_d_range = "1:5", b_out;
  bnd->add_option("--d", b_dim, "Dimension")->capture_default_str();
  bnd->add_option("--k", b_k)->capture_default_str();
  bnd->add_option("--q", b_q)->capture_default_str();
  bnd->add_option("--beta", b_beta, "Bit planes (default q-2d+2)");
  bnd->add_option("--rho", b_rho, "Exponent range for the componentwise bound");
  bnd->add_option("--b", b_bits, "Accuracy target in bits");
  bnd->add_option("--emax", b_emax, "Block exponent for the accuracy target");
  bnd->add_option("--be", b_be, "Exponent field width for the rate bound")->capture_default_str();
  bnd->add_flag("--allow-appendix-b", b_partial, "Allow q-2d+2 < beta < q+2");
  bnd->add_flag("--surface", b_surface, "Emit the log10 K_beta surface as CSV");
  bnd->add_option("--beta-range", b_beta_range, "Surface beta range lo:hi")->capture_default_str();
  bnd->add_option("--d-range", b_d_range, "Surface dimension range lo:hi")->capture_default_str();
  bnd->add_option("--out", b_out, "Write output here instead of stdout");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Worst-case sweep, or per-beta analysis of a raw grid");
  int e_dim = 2, e_k = 24, e_q = 30, e_emin = 0;
  std::size_t e_trials = 10000;
  std::uint64_t e_seed = 1;
  bool e_partial = false;
  std::string e_rhos = "0,7,14", e_beta_range, e_out, e_records, e_grid, e_dims, e_scalar = "f64";
  exp->add_option("--d", e_dim)->capture_default_str();
  exp->add_option("--k", e_k)->capture_default_str();
  exp->add_option("--q", e_q)->capture_default_str();
  exp->add_option("--emin", e_emin, "Lowest exponent of generated magnitudes")->capture_default_str();
  exp->add_option("--rho-list", e_rhos, "Exponent ranges to sweep")->capture_default_str();
  exp->add_option("--beta-range", e_beta_range, "Bit planes lo:hi (default: all legal)");
  exp->add_option("--trials", e_trials)->capture_default_str();
  exp->add_option("--seed", e_seed)->capture_default_str();
  exp->add_flag("--allow-appendix-b", e_partial);
  exp->add_option("--out", e_out, "CSV path (default stdout)");
  exp->add_option("--records", e_records, "Also write every trial record here");
  exp->add_option("--grid", e_grid, "Analyze this raw grid instead of sweeping");
  exp->add_option("--dims", e_dims, "Extents of --grid");
  exp->add_option("--scalar", e_scalar)->check(CLI::IsMember({"f32", "f64"}))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (comp->parsed()) {
      auto dims = parse_dims(comp_dims);
      CodecParams p = comp_flags.resolve(static_cast<int>(dims.size()));
      ScalarType type = parse_scalar(comp_flags.scalar);
      Grid g = read_raw_grid(comp_in, dims, type);
      auto bytes = compress(g, p, type);
      write_file_atomic(comp_out, bytes);
      double ratio = static_cast<double>(g.size() * scalar_bytes(type)) / static_cast<double>(bytes.size());
      std::cout << "blocks " << block_count(dims) << ", " << bytes.size() << " bytes, ratio " << fmt(ratio)
                << ", per-block relative bound " << bound_summary(p) << "\n";
    } else if (dec->parsed()) {
      auto bytes = read_file(dec_in);
      auto result = decompress(bytes);
      ScalarType type = dec_scalar.empty() ? result.header.source : parse_scalar(dec_scalar);
      write_file_atomic(dec_out, encode_raw(result.grid, type));
      std::cout << "restored " << result.grid.size() << " values\n";
    } else if (bnd->parsed()) {
      if (b_surface) {
        auto [dlo, dhi] = parse_range(b_d_range);
        auto [blo, bhi] = parse_range(b_beta_range);
        emit(surface_csv(kbeta_surface(dlo, dhi, blo, bhi, b_k, b_q)), b_out);
        return 0;
      }
      BoundInputs in{b_dim, b_k, b_q, b_beta < 0 ? b_q - 2 * b_dim + 2 : b_beta};
      in.validate();
      CodecParams p;
      p.dim = b_dim, p.k = b_k, p.q = b_q, p.beta = in.beta, p.allow_partial_inverse = b_partial;
      std::ostringstream os;
      os << "d=" << in.dim << " k=" << in.k << " q=" << in.q << " beta=" << in.beta << "\n";
      if (b_dim > 3) throw ParamError("--d must be 1, 2 or 3 outside --surface");
      p.validate();
      BoundInputs any = in;
      any.unchecked = true;
      os << "K_beta = " << fmt(K_beta(any)) << "\n";
      if (p.in_partial_regime()) os << "B_beta = " << fmt(B_beta(in)) << "\n";
      if (b_rho) {
        any.emin = 0, any.emax = *b_rho;
        double kb = p.in_partial_regime() ? B_beta(in) : K_beta(any);
        os << "componentwise bound (rho=" << *b_rho << ") = " << fmt(kb * std::ldexp(1.0, *b_rho)) << "\n";
      }
      if (b_bits) {
        BoundInputs acc = in;
        acc.accuracy_bits = *b_bits;
        acc.emax = b_emax.value_or(0);
        auto r = beta_for_accuracy(acc);
        if (r.feasible)
          os << "beta for " << *b_bits << " bits at emax=" << *acc.emax << ": " << r.beta << "\n";
        else
          os << "beta for " << *b_bits << " bits at emax=" << *acc.emax << ": infeasible (limited by "
             << (r.limit == "k" ? "source precision k" : r.limit == "q" ? "block precision q" : "beta <= q-2d+2")
             << ")\n";
      }
      Rational rate = rate_lower_bound(in.beta, in.dim, b_be);
      os << "rate >= " << rate.str() << " = " << fmt(to_double(rate)) << " bits/value (b_e=" << b_be << ")\n";
      emit(os.str(), b_out);
    } else if (exp->parsed()) {
      if (!e_grid.empty()) {
        if (e_dims.empty()) throw ParamError("--grid needs --dims");
        auto dims = parse_dims(e_dims);
        CodecParams base;
        base.dim = static_cast<int>(dims.size());
        base.k = e_k, base.q = e_q, base.allow_partial_inverse = e_partial;
        ScalarType type = parse_scalar(e_scalar);
        Grid g = read_raw_grid(e_grid, dims, type);
        auto betas = e_beta_range.empty() ? legal_betas(base.dim, base.q) : range_values(parse_range(e_beta_range));
        auto rows = analyze_grid(g, base, betas, type);
        emit(grid_csv(rows), e_out);
        std::size_t bad = 0;
        for (auto& r : rows) bad += r.violations;
        if (bad) {
          std::cerr << "zfpkit: " << bad << " blocks exceeded the bound\n";
          return kViolationExit;
        }
        return 0;
      }
      SweepSpec spec;
      spec.dim = e_dim, spec.k = e_k, spec.q = e_q, spec.emin = e_emin;
      spec.rhos = parse_list(e_rhos);
      if (!e_beta_range.empty()) spec.betas = range_values(parse_range(e_beta_range));
      spec.trials = e_trials, spec.seed = e_seed, spec.allow_partial_inverse = e_partial;
      std::vector<ExperimentRecord> all;
      auto result = sweep(spec, e_records.empty() ? std::function<void(const ExperimentRecord&)>{}
                                                  : [&](const ExperimentRecord& r) { all.push_back(r); });
      emit(sweep_csv(spec, result), e_out);
      if (!e_records.empty()) emit(records_csv(all), e_records);
      if (result.violations()) {
        std::cerr << "zfpkit: " << result.violations() << " bound violations\n" << records_csv(result.offending);
        return kViolationExit;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "zfpkit: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
