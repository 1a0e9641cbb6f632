#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rokhlin/cfrac.hpp"
#include "rokhlin/circle_fn.hpp"
#include "rokhlin/cli.hpp"
#include "rokhlin/crossed_fd.hpp"
#include "rokhlin/dimension_drop.hpp"
#include "rokhlin/io.hpp"
#include "rokhlin/matrix_models.hpp"
#include "rokhlin/return_times.hpp"
#include "rokhlin/rotation_towers.hpp"
#include "rokhlin/towers.hpp"

namespace py = pybind11;
using namespace rokhlin;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o)
{
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_rokhlin, m)
{
    m.doc() = "Rokhlin tower constructions and certified verifiers";

    py::class_<PLFunction>(m, "PLFunction")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"), py::arg("values"))
        .def_static("constant", &PLFunction::constant)
        .def_static("tent", &PLFunction::tent, py::arg("start"), py::arg("width"), py::arg("height") = 1.0)
        .def_property_readonly("breakpoints", &PLFunction::breakpoints)
        .def_property_readonly("values", &PLFunction::values)
        .def_property_readonly("lipschitz", &PLFunction::lipschitz)
        .def("__call__", &PLFunction::operator())
        .def("sup_norm", &PLFunction::sup_norm);

    m.def("rotate", &rotate);
    m.def("linear_combine", [](const std::vector<double>& c, const std::vector<PLFunction>& fs) {
        return linear_combine(c, fs);
    });
    m.def("product_sup_norm", &product_sup_norm);
    m.def("sup_distance", &sup_distance);
    m.def("certified_sup_distance", [](const PLFunction& f, const PLFunction& g, double step) {
        const CertifiedBound b = certified_sup_distance(f, g, step);
        return py::dict(py::arg("estimate") = b.estimate, py::arg("slack") = b.slack, py::arg("certified") = b.certified);
    });

    m.def("convergents", [](double t, int count) {
        const ConvergentList list = convergents(t, count);
        std::vector<std::pair<std::int64_t, std::int64_t>> terms;
        for (const auto& c : list.terms) {
            terms.emplace_back(c.m, c.n);
        }
        return py::make_tuple(terms, list.rational_input);
    });
    m.def("find_approximant_avoiding", [](double t, std::int64_t p, std::int64_t n_min) {
        const Convergent c = find_approximant_avoiding(t, p, n_min);
        return std::make_pair(c.m, c.n);
    });

    m.def("decay_factor", &decay_factor, py::arg("p"), py::arg("r"), py::arg("n"));

    m.def("build_rotation_towers", [](double theta, int p, double eps) {
        const RotationTowers rt = build_rotation_towers(theta, p, eps);
        nlohmann::json j = {{"certificate", io::to_json(rt.certificate)}, {"system", io::to_json(rt.system)}};
        return to_py(j);
    });

    m.def("build_splice", [](int k, double delta, int r) { return to_py(io::to_json(build_splice(k, delta, r))); });
    m.def("verify_splice", [](int k, double delta, int r, std::uint64_t seed) {
        const SpliceReport s = verify_splice(build_splice(k, delta, r), delta, seed);
        return py::dict(py::arg("order_zero") = s.order_zero, py::arg("shiftable") = s.shiftable,
                        py::arg("max_shift_error") = s.basis_shift_error, py::arg("wrap_shift_error") = s.wrap_shift_error,
                        py::arg("coverage") = s.coverage, py::arg("coverage_min") = s.coverage_min,
                        py::arg("pass") = s.pass);
    }, py::arg("k"), py::arg("delta"), py::arg("r"), py::arg("seed") = 0);

    m.def("elementary_decompose", [](const std::vector<DiagVector>& qs, const DiagVector& p) {
        return to_py(io::to_json(elementary_decompose(qs, p)));
    });
    m.def("decay_commutator_check", [](int p, int q, const CMatrix& x, int block_size) {
        const DecayCommutatorReport r = decay_commutator_check(p, q, x, block_size);
        return py::dict(py::arg("commutator_norm") = r.commutator_norm, py::arg("x_norm") = r.x_norm,
                        py::arg("bound") = r.bound, py::arg("pass") = r.pass);
    }, py::arg("p"), py::arg("q"), py::arg("x"), py::arg("block_size") = 1);

    m.def("dimension_drop", [](int p, int grid) {
        const DimDropReport r = verify_dimension_drop(build_dimension_drop(p, grid));
        return py::dict(py::arg("f_products") = r.f_products, py::arg("g_products") = r.g_products,
                        py::arg("fg_commutators") = r.fg_commutators, py::arg("sum_deviation") = r.sum_deviation,
                        py::arg("f_conjugation") = r.f_conjugation, py::arg("g_conjugation") = r.g_conjugation,
                        py::arg("unitarity") = r.unitarity, py::arg("boundary") = r.boundary,
                        py::arg("continuity_constant") = r.continuity_constant, py::arg("pass") = r.pass);
    });

    m.def("decompose_returns", [](double theta, double z0, double z1, int max_time) {
        return to_py(io::to_json(decompose_returns(theta, z0, z1, max_time)));
    }, py::arg("theta"), py::arg("z0"), py::arg("z1"), py::arg("max_time") = 0);

    m.def("free_action_towers", [](const py::object& action) {
        const io::ActionSpec spec = io::action_from_json(from_py(action));
        if (!spec.finite) {
            throw py::value_error("need a finite group action");
        }
        return to_py(io::to_json(free_action_towers(*spec.finite)));
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
