// Python bindings. Values cross the boundary as doubles; r, nbar and t'
// may also be passed as strings to keep full precision (r - 1 is tiny for
// the published parameters).

#include "cvnet/io.hpp"
#include "cvnet/mc_oracle.hpp"
#include "cvnet/network.hpp"
#include "cvnet/presets.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cvnet;

namespace {

Real to_real(const py::handle& value) {
  if (py::isinstance<py::str>(value)) return parse_real(value.cast<std::string>());
  return Real(value.cast<double>());
}

CouplingParams params_of(const py::object& nbar, const py::object& r) {
  return CouplingParams(to_real(r), to_real(nbar));
}

DistillMethod method_of(const std::string& text) {
  if (text == "trace") return DistillMethod::trace;
  if (text == "het") return DistillMethod::heterodyne;
  throw std::invalid_argument("method must be 'trace' or 'het'");
}

EprSign sign_of(const std::string& text) {
  if (text == "plus") return EprSign::plus;
  if (text == "minus") return EprSign::minus;
  throw std::invalid_argument("sign must be 'plus' or 'minus'");
}

DistillConfig config_of(std::size_t k, const std::string& method, const py::object& nbar, const py::object& r,
                        std::complex<double> alpha) {
  DistillConfig config;
  config.discarded_mode = k;
  config.method = method_of(method);
  config.alpha = {Real(alpha.real()), Real(alpha.imag())};
  config.params = params_of(nbar, r);
  return config;
}

py::array_t<double> to_numpy(const Matrix& m) {
  py::array_t<double> out(std::vector<py::ssize_t>{m.rows(), m.cols()});
  auto view = out.mutable_unchecked<2>();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) view(i, j) = to_double(m(i, j));
  return out;
}

py::array_t<double> to_numpy(const std::vector<Real>& v) {
  py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  auto view = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) view(static_cast<py::ssize_t>(i)) = to_double(v[i]);
  return out;
}

Matrix from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  auto view = a.unchecked<2>();
  Matrix m(view.shape(0), view.shape(1));
  for (py::ssize_t i = 0; i < view.shape(0); ++i)
    for (py::ssize_t j = 0; j < view.shape(1); ++j) m(i, j) = Real(view(i, j));
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Three-mode optomechanical teleportation network";

  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);

  m.def("reference_ratio", [] { return format_real(reference_ratio(), 17); },
        "Coupling ratio of the published curves, as a full-precision string.");

  m.def(
      "coefficients",
      [](const py::object& t_prime, const py::object& nbar, const py::object& r) {
        const CmCoefficients q = coefficients(to_real(t_prime), params_of(nbar, r));
        py::dict d;
        d["Q0"] = to_double(q.q0);
        d["Q1"] = to_double(q.q1);
        d["Q2"] = to_double(q.q2);
        d["T0"] = to_double(q.t0);
        d["T1"] = to_double(q.t1);
        d["T2"] = to_double(q.t2);
        return d;
      },
      py::arg("t_prime"), py::arg("nbar"), py::arg("r"));

  m.def(
      "covariance",
      [](const py::object& t_prime, const py::object& nbar, const py::object& r) {
        return to_numpy(evolve(to_real(t_prime), params_of(nbar, r)).cm());
      },
      py::arg("t_prime"), py::arg("nbar"), py::arg("r"), "6x6 covariance matrix at t'.");

  m.def(
      "symplectic_eigenvalues", [](const py::array_t<double>& cm) { return to_numpy(symplectic_spectrum(from_numpy(cm))); },
      py::arg("cm"));

  m.def(
      "ppt_separable",
      [](const py::array_t<double>& cm) {
        const Matrix v = from_numpy(cm);
        return ppt_separable(GaussianState(Vector::Zero(v.rows()), v));
      },
      py::arg("cm"), "PPT test of a two-mode (4x4) covariance matrix.");

  m.def(
      "fidelity",
      [](const py::object& t_prime, std::size_t k, const std::string& method, const std::string& sign,
         const py::object& nbar, const py::object& r, std::complex<double> alpha) {
        return to_double(distilled_fidelity(to_real(t_prime), config_of(k, method, nbar, r, alpha), sign_of(sign)));
      },
      py::arg("t_prime"), py::arg("k"), py::arg("method") = "trace", py::arg("sign") = "minus",
      py::arg("nbar") = 0.0, py::arg("r") = py::str("1.00000025"), py::arg("alpha") = std::complex<double>{});

  m.def(
      "fidelity_curve",
      [](std::size_t k, const std::string& method, const py::object& nbar, const py::object& r,
         const std::vector<double>& grid, std::complex<double> alpha) {
        std::vector<Real> g(grid.begin(), grid.end());
        const DistillConfig config = config_of(k, method, nbar, r, alpha);
        FidelityCurve curve;
        {
          py::gil_scoped_release release;
          curve = fidelity_curve(config, g);
        }
        return py::make_tuple(to_numpy(curve.f_plus), to_numpy(curve.f_minus));
      },
      py::arg("k"), py::arg("method"), py::arg("nbar"), py::arg("r"), py::arg("grid"),
      py::arg("alpha") = std::complex<double>{}, "Returns (f_plus, f_minus) over the given t' grid.");

  m.def(
      "curve_csv",
      [](std::size_t k, const std::string& method, const py::object& nbar, const py::object& r,
         const std::vector<double>& grid) {
        std::vector<Real> g(grid.begin(), grid.end());
        std::ostringstream out;
        write_curve_csv(out, fidelity_curve(config_of(k, method, nbar, r, {}), g));
        return out.str();
      },
      py::arg("k"), py::arg("method"), py::arg("nbar"), py::arg("r"), py::arg("grid"),
      "The CSV text the command-line tool writes for this curve.");

  m.def(
      "milestones",
      [](const py::object& nbar, const py::object& r) {
        const Milestones ms = milestones(params_of(nbar, r));
        py::dict d;
        d["f2_max"] = to_double(ms.f2_max);
        d["t_max"] = to_double(ms.t_max);
        d["varsigma"] = to_double(ms.varsigma);
        d["f0_at_pi"] = to_double(ms.f0_at_pi);
        d["boundary_value"] = to_double(ms.boundary_value);
        return d;
      },
      py::arg("nbar") = 0.0, py::arg("r") = py::str("1.00000025"));

  m.def(
      "telecloning_interval",
      [](const py::object& nbar, const py::object& r) -> py::object {
        const auto interval = telecloning_interval(params_of(nbar, r));
        if (!interval) return py::none();
        return py::make_tuple(to_double(interval->lo), to_double(interval->hi));
      },
      py::arg("nbar"), py::arg("r"), "(lo, hi) or None.");

  m.def("mc_presets", &mc_preset_names);

  m.def(
      "mc_verify",
      [](const std::string& preset, std::uint64_t samples, std::uint64_t seed) {
        const McCase mc = mc_preset(preset);
        McConfig cfg;
        cfg.n_samples = samples;
        cfg.seed = seed;
        cfg.input_amplitude = mc.input;
        McEstimate est;
        {
          py::gil_scoped_release release;
          est = run_protocol(mc.channel, mc.sign, mc.delta, cfg);
        }
        const Real analytic = fidelity_general(Matrix2::Identity() / 2, mc.channel, mc.sign, mc.delta).fidelity;
        py::dict d;
        d["analytic"] = to_double(analytic);
        d["estimate"] = to_double(est.fidelity);
        d["std_error"] = to_double(est.fidelity_se);
        d["samples"] = est.n_samples;
        return d;
      },
      py::arg("preset"), py::arg("samples") = 100000, py::arg("seed") = 0);
}
