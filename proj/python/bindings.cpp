#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entropic/acceptance.hpp"
#include "entropic/conjugation.hpp"
#include "entropic/dirichlet.hpp"
#include "entropic/entropic.hpp"
#include "entropic/error.hpp"
#include "entropic/io.hpp"
#include "entropic/laguerre.hpp"
#include "entropic/metrics.hpp"
#include "entropic/transport.hpp"

namespace py = pybind11;
using namespace entropic;

namespace {

struct PyDomain {
  DomainPtr ptr;
};

std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xs) {
  std::vector<Point> out;
  for (const auto& [x, y] : xs) out.push_back({x, y});
  return out;
}

std::vector<std::pair<double, double>> from_points(const std::vector<Point>& ps) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : ps) out.emplace_back(p.x, p.y);
  return out;
}

py::object parse(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json dump(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

Potential grid_potential(const PyDomain& d, int resolution, std::vector<double> values) {
  return Potential::make(build_grid(d.ptr, resolution), std::move(values));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conjugation of measures, Dirichlet-Ferguson and entropic measures";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<PyDomain>(m, "Domain")
      .def_static("interval", [] { return PyDomain{make_domain(Domain::interval())}; })
      .def_static("circle", [] { return PyDomain{make_domain(Domain::circle())}; })
      .def_static("unit_square", [] { return PyDomain{make_domain(Domain::unit_square())}; })
      .def_static("polygon", [](const std::vector<std::pair<double, double>>& v) {
        return PyDomain{make_domain(Domain::polygon(to_points(v)))};
      })
      .def_static("parse", [](const std::string& text) { return PyDomain{parse_domain(text)}; })
      .def("with_density",
           [](const PyDomain& d, std::vector<double> values, int nx, int ny) {
             return PyDomain{make_domain(d.ptr->with_density(std::move(values), nx, ny))};
           },
           py::arg("values"), py::arg("nx"), py::arg("ny") = 1)
      .def_property_readonly("kind", [](const PyDomain& d) { return to_json(*d.ptr)["kind"].get<std::string>(); })
      .def_property_readonly("dimension", [](const PyDomain& d) { return d.ptr->dimension(); })
      .def("to_json", [](const PyDomain& d) { return parse(to_json(*d.ptr)); })
      .def("hash", [](const PyDomain& d) { return domain_hash(*d.ptr); })
      .def("__repr__", [](const PyDomain& d) { return "Domain(" + to_json(*d.ptr).dump() + ")"; });

  py::class_<Measure>(m, "Measure")
      .def_static("discrete",
                  [](const PyDomain& d, const std::vector<std::pair<double, double>>& atoms, std::vector<double> w) {
                    return Measure::discrete(d.ptr, to_points(atoms), std::move(w));
                  })
      .def_static("discrete_1d",
                  [](const PyDomain& d, const std::vector<double>& xs, std::vector<double> w) {
                    std::vector<Point> pts;
                    for (double x : xs) pts.push_back({x, 0.0});
                    return Measure::discrete(d.ptr, std::move(pts), std::move(w));
                  })
      .def_static("reference", [](const PyDomain& d) { return Measure::reference(d.ptr); })
      .def_static("grid_density",
                  [](const PyDomain& d, int resolution, std::vector<double> eta) {
                    return Measure::grid_density(build_grid(d.ptr, resolution), std::move(eta));
                  })
      .def_static("from_json", [](const py::object& o) { return measure_from_json(dump(o)); })
      .def("to_json", [](const Measure& mu) { return parse(to_json(mu)); })
      .def_property_readonly("type", &Measure::type_name)
      .def_property_readonly("domain", [](const Measure& mu) { return PyDomain{mu.domain_ptr()}; })
      .def("__repr__", [](const Measure& mu) { return "Measure(" + mu.type_name() + ")"; });

  m.def("conjugate_1d", &conjugate_measure_1d, "exact conjugate of a 1D measure");
  m.def(
      "conjugate_2d",
      [](const Measure& mu, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return conjugate_measure_2d(mu, n, rng);
      },
      py::arg("mu"), py::arg("n_samples"), py::arg("seed"));
  m.def("wasserstein_1d", &wasserstein_1d);
  m.def("relative_entropy", [](const Measure& mu) {
    const auto e = relative_entropy(mu);
    return e.finite ? e.value : std::numeric_limits<double>::infinity();
  });
  m.def("reverse_entropy", [](const Measure& mu) {
    const auto e = reverse_entropy(mu);
    return e.finite ? e.value : std::numeric_limits<double>::infinity();
  });
  m.def("entropy_duality_gap", &entropy_duality_gap);

  m.def(
      "c_transform",
      [](const PyDomain& d, int resolution, std::vector<double> values) {
        const auto r = c_transform_full(grid_potential(d, resolution, std::move(values)));
        return py::make_tuple(r.value.values, r.argmin);
      },
      "c-transform of grid values; returns (values, argmin)");
  m.def("involution_residual", [](const PyDomain& d, int resolution, std::vector<double> values) {
    return involution_residual(grid_potential(d, resolution, std::move(values)));
  });
  m.def("legendre_fenchel", [](const PyDomain& d, int resolution, std::vector<double> values) {
    const auto r = legendre_fenchel(grid_potential(d, resolution, std::move(values)));
    return py::make_tuple(r.value.values, r.argmax);
  });
  m.def("grid_nodes", [](const PyDomain& d, int resolution) { return from_points(build_grid(d.ptr, resolution)->nodes); });

  m.def(
      "semidiscrete_weights",
      [](const PyDomain& d, const std::vector<std::pair<double, double>>& sites, std::vector<double> masses,
         double tol) {
        SolverOptions o;
        o.tol = tol;
        return parse(to_json(semidiscrete_weights(d.ptr, to_points(sites), std::move(masses), o)));
      },
      py::arg("domain"), py::arg("sites"), py::arg("masses"), py::arg("tol") = 1e-9);

  m.def(
      "sample_stick_breaking",
      [](double beta, std::uint64_t seed, double remainder_below, std::size_t max_terms) {
        Rng rng(seed);
        const auto s = sample_stick_breaking(beta, rng, {remainder_below, max_terms});
        return py::dict(py::arg("t") = s.t, py::arg("weights") = s.lambda, py::arg("remainder") = s.remainder);
      },
      py::arg("beta"), py::arg("seed"), py::arg("remainder_below") = 1e-10,
      py::arg("max_terms") = Truncation::kMaxTerms);
  m.def(
      "sample_dirichlet_ferguson",
      [](double beta, const PyDomain& d, std::uint64_t seed, double remainder_below, std::size_t max_terms) {
        Rng rng(seed);
        return sample_dirichlet_ferguson(beta, d.ptr, rng, {remainder_below, max_terms}).nu;
      },
      py::arg("beta"), py::arg("domain"), py::arg("seed"), py::arg("remainder_below") = 1e-10,
      py::arg("max_terms") = Truncation::kMaxTerms);
  m.def("dirichlet_marginal_logdensity", &dirichlet_marginal_logdensity, py::arg("masses"), py::arg("beta"),
        py::arg("x"));
  m.def(
      "sample_entropic",
      [](double beta, const PyDomain& d, std::uint64_t seed, double remainder_below, std::size_t max_terms,
         std::size_t cloud_points) {
        EntropicOptions o;
        o.cloud_points = cloud_points;
        const auto s = sample_entropic(beta, d.ptr, seed, {remainder_below, max_terms}, o);
        py::dict out = parse(to_json(s));
        out["nu_measure"] = s.nu.nu;
        out["mu"] = s.mu;
        out["hole_probes"] = hole_report(s, 1e-9);
        return out;
      },
      py::arg("beta"), py::arg("domain"), py::arg("seed"), py::arg("remainder_below") = 1e-10,
      py::arg("max_terms") = Truncation::kMaxTerms, py::arg("cloud_points") = 10000);

  m.def(
      "run_criterion",
      [](int id, std::uint64_t seed) {
        AcceptanceOptions o;
        o.seed = seed;
        const auto r = run_criterion(id, o);
        return py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("pass") = r.pass,
                        py::arg("statistic") = r.statistic, py::arg("threshold") = r.threshold,
                        py::arg("seconds") = r.seconds, py::arg("detail") = r.detail);
      },
      py::arg("id"), py::arg("seed") = AcceptanceOptions{}.seed);
}
