// Python bindings: egdg._core

#include "egdg/error.hpp"
#include "egdg/experiments.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace egdg;

namespace {

// Keyword overrides -> RunConfig, with the same key names as the CLI flags.
RunConfig config_from_kwargs(const py::dict& kw)
{
    Config c;
    for (const auto& [k, v] : kw) {
        const std::string key = py::str(k);
        std::string value;
        if (py::isinstance<py::bool_>(v))
            value = v.cast<bool>() ? "true" : "false";
        else if (py::isinstance<py::list>(v) || py::isinstance<py::tuple>(v)) {
            value = "[";
            for (const auto& item : v)
                value += (value.size() > 1 ? "," : "") + std::string(py::str(item));
            value += "]";
        } else
            value = py::str(v);
        c.set(qualified_key(key), value);
    }
    return RunConfig::from_config(c);
}

py::dict record_dict(const ErrorRecord& r)
{
    py::dict d;
    d["N"] = r.N;
    d["h"] = r.h;
    d["q"] = r.q;
    d["s"] = r.s;
    d["flux"] = r.flux;
    d["l2_error_u"] = r.l2_error_u;
    d["rate"] = r.rate ? py::cast(*r.rate) : py::none();
    return d;
}

py::dict energy_dict(const EnergySample& e)
{
    py::dict d;
    d["t"] = e.t;
    d["E"] = e.E;
    d["kinetic"] = e.kinetic;
    d["strain"] = e.strain;
    d["potential"] = e.potential;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Energy-based discontinuous Galerkin solver for semilinear wave equations";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalBreakdown>(m, "NumericalBreakdown", PyExc_ArithmeticError);

    py::class_<State>(m, "State")
        .def_readwrite("u", &State::u)
        .def_readwrite("v", &State::v)
        .def_readwrite("t", &State::t)
        .def("finite", &State::finite);

    py::class_<Discretization>(m, "Discretization")
        .def(py::init([](int N, const py::kwargs& kw) {
                 return make_discretization(config_from_kwargs(kw), N);
             }),
             py::arg("N"), "Build the discretization for mesh size N; keywords as for converge()")
        .def_property_readonly("q", &Discretization::q)
        .def_property_readonly("s", &Discretization::s)
        .def_property_readonly("num_elements", &Discretization::num_elements)
        .def_property_readonly("dim", [](const Discretization& d) { return d.mesh().dim; })
        .def("zero_state", &Discretization::zero_state)
        .def("project_initial", &Discretization::project_initial)
        .def("rhs", &Discretization::compute_rhs, py::arg("state"))
        .def("energy", [](const Discretization& d, const State& y) { return energy_dict(discrete_energy(d, y)); })
        .def("energy_rate", [](const Discretization& d, const State& y) {
            return py::make_tuple(energy_rate_chain(d, y, d.compute_rhs(y)), energy_rate_closed_form(d, y));
        }, "(chain-rule rate, closed-form rate)")
        .def("l2_error", [](const Discretization& d, const State& y) {
            if (!d.problem().exact)
                throw ConfigError("problem has no exact solution");
            return l2_error(d, y, *d.problem().exact, y.t);
        })
        .def("sample", [](const Discretization& d, const State& y, int M) {
            const auto rows = sample_snapshot(d, y, M);
            Eigen::MatrixXd out(rows.size(), 4);
            for (size_t i = 0; i < rows.size(); ++i)
                out.row(i) << rows[i].x, rows[i].y, rows[i].u, rows[i].v;
            return out;
        }, py::arg("state"), py::arg("uniform_samples") = 0, "rows of (x, y, u, v)")
        .def("level_crossing", [](const Discretization& d, const State& y, double level) {
            return level_crossing(d, y, level);
        });

    m.def("problem_names", &problem_names);

    m.def("converge", [](const py::kwargs& kw) {
        const ConvergeOutput out = run_convergence(config_from_kwargs(kw));
        py::dict d;
        py::list recs;
        for (const auto& r : out.records)
            recs.append(record_dict(r));
        d["records"] = recs;
        d["regression_rate"] = out.regression ? py::cast(*out.regression) : py::none();
        d["aborted"] = out.aborted;
        d["error"] = out.error;
        return d;
    }, "Convergence study; keyword arguments are config keys (problem, q, s, N, flux, T, ...)");

    m.def("evolve", [](const py::kwargs& kw) {
        const RunConfig rc = config_from_kwargs(kw);
        EvolveOutput out;
        {
            py::gil_scoped_release release;
            out = run_evolution(rc);
        }
        py::dict d;
        py::list energy;
        for (const auto& e : out.energy)
            energy.append(energy_dict(e));
        d["energy"] = energy;
        d["steps"] = out.integ.steps;
        d["dt"] = out.dt;
        d["final_time"] = out.integ.t;
        d["max_rel_drift"] = out.max_rel_drift;
        d["aborted"] = out.integ.aborted;
        d["error"] = out.integ.error;
        d["final_state"] = out.final_state;
        return d;
    }, "Evolve one mesh and return the energy history and final state");

    m.def("verify", [](unsigned seed, int cases) {
        py::list out;
        for (const auto& s : run_verify_suites(seed, cases)) {
            py::dict d;
            d["name"] = s.name;
            d["passed"] = s.passed;
            d["max_error"] = s.max_error;
            d["tolerance"] = s.tolerance;
            d["detail"] = s.detail;
            out.append(d);
        }
        return out;
    }, py::arg("seed") = 12345u, py::arg("cases") = 100);

    m.def("pairwise_rate", &pairwise_rate, py::arg("e1"), py::arg("e2"), py::arg("N1"), py::arg("N2"));
}
