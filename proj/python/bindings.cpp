#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igsub/analytics.hpp"
#include "igsub/error.hpp"
#include "igsub/jumpdist.hpp"
#include "igsub/ruin.hpp"
#include "igsub/samplers.hpp"
#include "igsub/specfun.hpp"
#include "igsub/version.hpp"

namespace py = pybind11;
using namespace igsub;

namespace {

SubordinatorSpec spec_from(const std::string& kind, double alpha,
                           std::optional<double> eps,
                           std::optional<double> theta) {
  if (kind == "ing") return SubordinatorSpec::ing(alpha);
  if (kind == "ing-eps") {
    if (!eps) throw py::value_error("ing-eps needs eps");
    return SubordinatorSpec::ing_eps(alpha, *eps);
  }
  if (kind == "ting") {
    if (!theta) throw py::value_error("ting needs theta");
    return SubordinatorSpec::ting(alpha, *theta);
  }
  throw py::value_error("kind must be 'ing', 'ing-eps' or 'ting'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Incomplete-gamma subordinators and time-changed Poisson processes";
  m.attr("__version__") = kVersion;
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("gamma_fn", &specfun::gamma_fn);
  m.def("lower_incomplete_gamma", &specfun::lower_incomplete_gamma, py::arg("a"),
        py::arg("x"));
  m.def("upper_incomplete_gamma", &specfun::upper_incomplete_gamma, py::arg("a"),
        py::arg("x"));
  m.def("regularized_incomplete_beta", &specfun::regularized_incomplete_beta,
        py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("tempering_fn_derivative", &specfun::tempering_fn_derivative,
        py::arg("alpha"), py::arg("theta"), py::arg("eta"), py::arg("order"));

  py::class_<SubordinatorSpec>(m, "SubordinatorSpec")
      .def(py::init(&spec_from), py::arg("kind"), py::arg("alpha"),
           py::arg("eps") = py::none(), py::arg("theta") = py::none())
      .def_property_readonly("kind", [](const SubordinatorSpec& s) {
        return std::string(kind_name(s.kind()));
      })
      .def_property_readonly("alpha", &SubordinatorSpec::alpha)
      .def_property_readonly("epsilon", &SubordinatorSpec::epsilon)
      .def_property_readonly("theta", &SubordinatorSpec::theta)
      .def_property_readonly("support_start", &SubordinatorSpec::support_start)
      .def_property_readonly("driving_rate", &SubordinatorSpec::driving_rate)
      .def("pdf", [](const SubordinatorSpec& s, double z) { return jump_pdf(s, z); })
      .def("cdf", [](const SubordinatorSpec& s, double x) { return jump_cdf(s, x); })
      .def("inverse_cdf",
           [](const SubordinatorSpec& s, double u) { return jump_inverse_cdf(s, u); })
      .def("laplace_exponent", [](const SubordinatorSpec& s, double eta) {
        return laplace_exponent(s, eta);
      });

  py::class_<ProcessSpec>(m, "ProcessSpec")
      .def(py::init<SubordinatorSpec, double>(), py::arg("subordinator"),
           py::arg("lam"))
      .def_readonly("subordinator", &ProcessSpec::subordinator)
      .def_readonly("lam", &ProcessSpec::lambda);

  m.def("process_pgf", &process_pgf, py::arg("process"), py::arg("u"),
        py::arg("t"));
  m.def("process_laplace_exponent", &process_laplace_exponent,
        py::arg("process"), py::arg("eta"), py::arg("t"));
  m.def("pmf", &pmf, py::arg("process"), py::arg("k"), py::arg("t"));
  m.def("pmf_range", &pmf_range, py::arg("process"), py::arg("k_max"),
        py::arg("t"));
  m.def("closed_form_pmf", &closed_form_pmf, py::arg("process"), py::arg("k"),
        py::arg("t"));

  const auto moments_dict = [](Moments mo) {
    py::dict d;
    d["mean"] = mo.mean;
    d["variance"] = mo.variance;
    return d;
  };
  m.def("moments", [moments_dict](const SubordinatorSpec& s, double t) {
    return moments_dict(moments(s, t));
  }, py::arg("spec"), py::arg("t"));
  m.def("moments", [moments_dict](const ProcessSpec& p, double t) {
    return moments_dict(moments(p, t));
  }, py::arg("process"), py::arg("t"));
  m.def("correlation",
        py::overload_cast<const ProcessSpec&, double, double>(&correlation));
  m.def("correlation",
        py::overload_cast<const SubordinatorSpec&, double, double>(&correlation));

  m.def("fractional_moment", [](const ProcessSpec& p, double t, double q) {
    return fractional_moment(LaplaceTransform::of(p, t), q);
  }, py::arg("process"), py::arg("t"), py::arg("q"));
  m.def("fractional_moment", [](const SubordinatorSpec& s, double t, double q) {
    return fractional_moment(LaplaceTransform::of(s, t), q);
  }, py::arg("spec"), py::arg("t"), py::arg("q"));
  m.def("transition_row", &transition_row, py::arg("process"), py::arg("h"),
        py::arg("max_i"));

  m.def("simulate_path", [](const SubordinatorSpec& s, double horizon,
                            std::uint64_t seed, std::uint64_t stream,
                            const std::string& method) {
    PathMethod pm = PathMethod::Automatic;
    if (method == "inverse") pm = PathMethod::Inverse;
    else if (method == "metropolis") pm = PathMethod::Metropolis;
    else if (method != "auto") throw py::value_error("unknown method");
    RandomSource rng(seed, stream);
    const auto path = subordinator_path(rng, s, horizon, pm);
    return py::make_tuple(path.jump_times, path.cumulative_values);
  }, py::arg("spec"), py::arg("horizon"), py::arg("seed") = 1,
     py::arg("stream") = 0, py::arg("method") = "auto");

  m.def("ruin_zero_capital", [](const ProcessSpec& p, double c, double mu,
                                double y) {
    RiskModelConfig cfg{c, 0.0, ClaimDistribution::exponential(mu), p};
    py::dict d;
    d["psi0"] = analytic_psi0(cfg);
    d["G0"] = analytic_G0(cfg, y);
    return d;
  }, py::arg("process"), py::arg("c"), py::arg("mu"), py::arg("y"));
}
