#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deconv/bandwidth.hpp"
#include "deconv/estimator.hpp"
#include "deconv/lower_bound.hpp"
#include "deconv/models.hpp"
#include "deconv/montecarlo.hpp"
#include "deconv/risk_bounds.hpp"

namespace py = pybind11;
using namespace deconv;

namespace {

NoiseModel noise_from(const std::string& kind,
                      const std::map<std::string, double>& params) {
  return make_noise(kind, params);
}

py::dict bandwidth_dict(const Bandwidth& b) {
  py::dict d;
  d["h"] = b.h;
  d["residual"] = b.residual;
  d["n"] = b.n;
  return d;
}

}  // namespace

PYBIND11_MODULE(_deconv, m) {
  m.doc() = "sharp-minimax density deconvolution core";

  py::class_<SmoothnessClass>(m, "SmoothnessClass")
      .def(py::init([](double alpha, double r, double L) {
             return SmoothnessClass{alpha, r, L};
           }),
           py::arg("alpha"), py::arg("r"), py::arg("L"))
      .def_readonly("alpha", &SmoothnessClass::alpha)
      .def_readonly("r", &SmoothnessClass::r)
      .def_readonly("L", &SmoothnessClass::L);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def_readonly("kind", &NoiseModel::kind)
      .def_readonly("beta", &NoiseModel::beta)
      .def_readonly("s", &NoiseModel::s);

  m.def("make_noise", &noise_from, py::arg("kind"), py::arg("params"));

  m.def(
      "solve_hstar",
      [](const SmoothnessClass& cls, const NoiseModel& noise, std::int64_t n) {
        return bandwidth_dict(solve_hstar(cls, noise, n));
      },
      py::arg("cls"), py::arg("noise"), py::arg("n"));
  m.def(
      "solve_hplus",
      [](const SmoothnessClass& cls, const NoiseModel& noise, std::int64_t n) {
        return bandwidth_dict(solve_hplus(cls, noise, n));
      },
      py::arg("cls"), py::arg("noise"), py::arg("n"));
  m.def(
      "adaptive_bandwidth",
      [](const NoiseModel& noise, std::int64_t n) {
        return bandwidth_dict(adaptive_bandwidth(noise, n));
      },
      py::arg("noise"), py::arg("n"));

  m.def(
      "rates",
      [](const SmoothnessClass& cls, const NoiseModel& noise, std::int64_t n) {
        RateValue rv = rates(cls, noise, n);
        py::dict d;
        d["pointwise"] = rv.pointwise;
        d["l2"] = rv.l2;
        d["h"] = rv.h_used.h;
        return d;
      },
      py::arg("cls"), py::arg("noise"), py::arg("n"));

  m.def("bias_bound_pointwise", &bias_bound_pointwise, py::arg("cls"), py::arg("h"));
  m.def("bias_bound_l2", &bias_bound_l2, py::arg("cls"), py::arg("h"));
  m.def("variance_bound_l2", &variance_bound_l2, py::arg("noise"), py::arg("h"),
        py::arg("n"));
  m.def("sup_density_bound", &sup_density_bound, py::arg("cls"));
  m.def("stable_density", &stable_density, py::arg("r"), py::arg("x"));
  m.def("two_point_risk_bound", &two_point_risk_bound, py::arg("psi"),
        py::arg("gamma0"));

  m.def(
      "class_membership",
      [](const std::string& kind, const std::map<std::string, double>& params,
         const SmoothnessClass& cls) {
        TargetDensity t = make_target(kind, params, cls);
        MembershipReport rep = class_membership(t.cf, cls);
        py::dict d;
        d["integral"] = rep.integral;
        d["bound"] = rep.bound;
        d["pass"] = rep.pass;
        return d;
      },
      py::arg("kind"), py::arg("params"), py::arg("cls"));

  m.def(
      "estimate_density",
      [](const std::vector<double>& samples, const NoiseModel& noise, double h) {
        DensityEstimate est = estimate_density(samples, noise, h, Grid::standard());
        std::vector<double> xs(est.values.grid.n_points), fs(est.values.grid.n_points);
        for (std::size_t j = 0; j < xs.size(); ++j) {
          xs[j] = est.values.grid.x(j);
          fs[j] = est.values.values[j].real();
        }
        return py::make_tuple(xs, fs);
      },
      py::arg("samples"), py::arg("noise"), py::arg("h"));

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<ModelError>(m, "ModelError");
}
