#include <cstring>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zfpkit/bounds.hpp"
#include "zfpkit/codec.hpp"
#include "zfpkit/container.hpp"
#include "zfpkit/error.hpp"
#include "zfpkit/experiments.hpp"

namespace py = pybind11;
using namespace zfpkit;

namespace {

py::object to_py(Int v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return py::int_(static_cast<long long>(v));
  bool neg = v < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (m) s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(m % 10))), m /= 10;
  return py::int_(py::str((neg ? "-" : "") + s));
}

py::list ints(const BlockFP& f) {
  py::list out;
  for (Int v : f.ints) out.append(to_py(v));
  return out;
}

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::int_(py::str(boost::multiprecision::numerator(r).str())),
             py::int_(py::str(boost::multiprecision::denominator(r).str())));
}

BoundInputs inputs(int d, int k, int q, int beta, bool unchecked) {
  BoundInputs in{d, k, q, beta};
  in.unchecked = unchecked;
  return in;
}

Grid grid_from(const py::array& a, ScalarType& type) {
  if (a.ndim() < 1 || a.ndim() > 3) throw ParamError("arrays must have 1 to 3 dimensions");
  Grid g;
  for (py::ssize_t i = 0; i < a.ndim(); ++i) g.shape.push_back(static_cast<std::size_t>(a.shape(i)));
  if (py::isinstance<py::array_t<float>>(a)) {
    type = ScalarType::f32;
    auto c = py::array_t<float, py::array::c_style | py::array::forcecast>::ensure(a);
    g.values.assign(c.data(), c.data() + c.size());
  } else {
    type = ScalarType::f64;
    auto c = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(a);
    g.values.assign(c.data(), c.data() + c.size());
  }
  return g;
}

CodecParams resolve(int dim, ScalarType type, std::optional<int> k, std::optional<int> q, std::optional<int> beta,
                    int exponent_bits, bool allow_partial) {
  CodecParams p = type == ScalarType::f32 ? float_params(dim) : double_params(dim);
  if (k) p.k = *k;
  if (q) p.q = *q;
  p.beta = beta.value_or(p.beta_limit());
  p.exponent_bits = exponent_bits;
  p.allow_partial_inverse = allow_partial;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_zfpkit, m) {
  m.doc() = "Fixed-precision ZFP codec with exact round-off error bounds";

  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);

  py::class_<CodecParams>(m, "CodecParams")
      .def(py::init([](int dim, int k, int q, int beta, int exponent_bits, bool allow_partial_inverse) {
             CodecParams p{dim, k, q, beta, exponent_bits, allow_partial_inverse};
             p.validate();
             return p;
           }),
           py::arg("dim"), py::arg("k"), py::arg("q"), py::arg("beta"), py::arg("exponent_bits") = 11,
           py::arg("allow_partial_inverse") = false)
      .def_readwrite("dim", &CodecParams::dim)
      .def_readwrite("k", &CodecParams::k)
      .def_readwrite("q", &CodecParams::q)
      .def_readwrite("beta", &CodecParams::beta)
      .def_readwrite("exponent_bits", &CodecParams::exponent_bits)
      .def_readwrite("allow_partial_inverse", &CodecParams::allow_partial_inverse)
      .def_property_readonly("beta_limit", &CodecParams::beta_limit)
      .def("validate", &CodecParams::validate)
      .def("__repr__", [](const CodecParams& p) {
        return "CodecParams(dim=" + std::to_string(p.dim) + ", k=" + std::to_string(p.k) + ", q=" +
               std::to_string(p.q) + ", beta=" + std::to_string(p.beta) + ")";
      });
  m.def("float_params", &float_params, py::arg("dim"));
  m.def("double_params", &double_params, py::arg("dim"));

  m.def(
      "compress",
      [](const py::array& a, std::optional<int> beta, std::optional<int> k, std::optional<int> q, int exponent_bits,
         bool allow_partial_inverse) {
        ScalarType type;
        Grid g = grid_from(a, type);
        CodecParams p = resolve(static_cast<int>(g.shape.size()), type, k, q, beta, exponent_bits,
                                allow_partial_inverse);
        std::vector<std::uint8_t> bytes;
        {
          py::gil_scoped_release release;
          bytes = compress(g, p, type);
        }
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("array"), py::arg("beta") = py::none(), py::arg("k") = py::none(), py::arg("q") = py::none(),
      py::arg("exponent_bits") = 11, py::arg("allow_partial_inverse") = false,
      "Compress a 1-3 dimensional float32/float64 array; beta defaults to q-2d+2.");

  m.def(
      "decompress",
      [](const py::bytes& data) {
        std::string s = data;
        Decompressed d;
        {
          py::gil_scoped_release release;
          d = decompress(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        }
        std::vector<py::ssize_t> shape(d.grid.shape.begin(), d.grid.shape.end());
        if (d.header.source == ScalarType::f32) {
          py::array_t<float> out(shape);
          float* dst = out.mutable_data();
          for (std::size_t i = 0; i < d.grid.values.size(); ++i) dst[i] = static_cast<float>(d.grid.values[i]);
          return py::array(out);
        }
        py::array_t<double> out(shape);
        std::memcpy(out.mutable_data(), d.grid.values.data(), d.grid.values.size() * sizeof(double));
        return py::array(out);
      },
      py::arg("data"));

  m.def(
      "read_header",
      [](const py::bytes& data) {
        std::string s = data;
        auto [h, used] = read_header(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        py::dict out;
        out["version"] = h.version;
        out["params"] = h.params;
        out["scalar"] = h.source == ScalarType::f32 ? "f32" : "f64";
        out["dims"] = h.dims;
        out["header_bytes"] = used;
        return out;
      },
      py::arg("data"));

  m.def(
      "round_trip_block",
      [](const std::vector<double>& block, const CodecParams& p) { return round_trip(block, p); },
      py::arg("block"), py::arg("params"));

  m.def(
      "trace_block",
      [](const std::vector<double>& block, const CodecParams& p) {
        BlockTrace t = trace_block(block, p);
        py::dict out;
        out["emax"] = t.fp.emax ? py::object(py::int_(*t.fp.emax)) : py::object(py::none());
        out["shift"] = t.fp.shift;
        out["block_fp"] = ints(t.fp);
        out["transformed"] = ints(t.transformed);
        out["ordered"] = ints(t.ordered);
        out["negabinary"] = t.nega.digits;
        out["truncated"] = t.truncated.digits;
        out["decoded"] = ints(t.decoded);
        out["restored"] = ints(t.restored);
        out["output"] = t.output;
        return out;
      },
      py::arg("block"), py::arg("params"));

  m.def(
      "K_beta", [](int d, int k, int q, int beta, bool unchecked) { return K_beta(inputs(d, k, q, beta, unchecked)); },
      py::arg("d"), py::arg("k"), py::arg("q"), py::arg("beta"), py::arg("unchecked") = false);
  m.def(
      "K_beta_exact",
      [](int d, int k, int q, int beta, bool unchecked) { return fraction(K_beta_exact(inputs(d, k, q, beta, unchecked))); },
      py::arg("d"), py::arg("k"), py::arg("q"), py::arg("beta"), py::arg("unchecked") = false);
  m.def(
      "B_beta", [](int d, int k, int q, int beta) { return B_beta(inputs(d, k, q, beta, false)); }, py::arg("d"),
      py::arg("k"), py::arg("q"), py::arg("beta"));
  m.def(
      "componentwise_bound",
      [](int d, int k, int q, int beta, int rho) {
        BoundInputs in = inputs(d, k, q, beta, false);
        in.emin = 0, in.emax = rho;
        return componentwise_bound(in);
      },
      py::arg("d"), py::arg("k"), py::arg("q"), py::arg("beta"), py::arg("rho"));
  m.def(
      "beta_for_accuracy",
      [](int d, int k, int q, int bits, int emax) {
        BoundInputs in = inputs(d, k, q, 0, false);
        in.accuracy_bits = bits, in.emax = emax;
        AccuracyResult r = beta_for_accuracy(in);
        py::dict out;
        out["feasible"] = r.feasible;
        out["beta"] = r.feasible ? py::object(py::int_(r.beta)) : py::object(py::none());
        out["limit"] = r.feasible ? py::object(py::none()) : py::object(py::str(r.limit));
        return out;
      },
      py::arg("d"), py::arg("k"), py::arg("q"), py::arg("bits"), py::arg("emax"));
  m.def(
      "rate_lower_bound",
      [](int beta, int d, int exponent_bits) { return fraction(rate_lower_bound(beta, d, exponent_bits)); },
      py::arg("beta"), py::arg("d"), py::arg("exponent_bits") = 11);
  m.def(
      "kbeta_surface",
      [](int d_lo, int d_hi, int beta_lo, int beta_hi, int k, int q) {
        std::vector<std::tuple<int, int, double>> out;
        for (auto& r : kbeta_surface(d_lo, d_hi, beta_lo, beta_hi, k, q)) out.emplace_back(r.dim, r.beta, r.log10_K);
        return out;
      },
      py::arg("d_lo") = 1, py::arg("d_hi") = 5, py::arg("beta_lo") = 1, py::arg("beta_hi") = 64, py::arg("k") = 53,
      py::arg("q") = 62);

  m.def(
      "sweep",
      [](int d, int k, int q, std::vector<int> rhos, std::vector<int> betas, std::size_t trials, std::uint64_t seed,
         int emin, bool allow_partial_inverse) {
        SweepSpec s;
        s.dim = d, s.k = k, s.q = q, s.rhos = std::move(rhos), s.betas = std::move(betas), s.trials = trials;
        s.seed = seed, s.emin = emin, s.allow_partial_inverse = allow_partial_inverse;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = sweep(s);
        }
        py::dict out;
        out["csv"] = sweep_csv(s, r);
        out["violations"] = r.violations();
        return out;
      },
      py::arg("d") = 2, py::arg("k") = 24, py::arg("q") = 30, py::arg("rhos") = std::vector<int>{0, 7, 14},
      py::arg("betas") = std::vector<int>{}, py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("emin") = 0,
      py::arg("allow_partial_inverse") = false);

  m.def(
      "analyze_grid",
      [](const py::array& a, std::vector<int> betas, std::optional<int> k, std::optional<int> q,
         bool allow_partial_inverse) {
        ScalarType type;
        Grid g = grid_from(a, type);
        int dim = static_cast<int>(g.shape.size());
        CodecParams base = resolve(dim, type, k, q, std::nullopt, 11, allow_partial_inverse);
        if (betas.empty()) betas = legal_betas(dim, base.q);
        std::vector<GridRow> rows;
        {
          py::gil_scoped_release release;
          rows = analyze_grid(g, base, betas, type);
        }
        py::list out;
        for (auto& r : rows) {
          py::dict row;
          row["beta"] = r.beta;
          row["max_block_err"] = r.max_block_error;
          row["K_beta"] = r.bound;
          row["ratio"] = r.ratio;
          row["violations"] = r.violations;
          out.append(row);
        }
        return out;
      },
      py::arg("array"), py::arg("betas") = std::vector<int>{}, py::arg("k") = py::none(), py::arg("q") = py::none(),
      py::arg("allow_partial_inverse") = false);
}
