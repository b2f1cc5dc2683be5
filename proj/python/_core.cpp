#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amot/io.hpp"

namespace py = pybind11;
using namespace amot;

namespace {

GFPoly prime_of(const Motive<GF>& x, const std::string& p) { return parse_prime(p, *x.base().tower); }

GF periods_proto(int q, const std::vector<int>& field) { return GF(FieldTower::get(q, field)->base()); }

LaurentApprox laurent_of(const std::vector<std::string>& exprs, int q, const std::vector<int>& field, int d) {
    GF proto = periods_proto(q, field);
    std::vector<LaurentExpr> comps;
    for (const auto& s : exprs) comps.push_back(parse_expr(s, UFunc(proto)));
    return to_laurent(comps, d);
}

std::vector<std::string> coefficient_strings(const LaurentApprox& s) {
    std::vector<std::string> out;
    for (int i = s.n0; i < s.window_end(); ++i) out.push_back(tuple_str(s.coeff(i)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "A-motives over finite fields: Tate modules, Frobenius reports and period kernels";

    // translators run in reverse registration order, so the base class goes first
    py::register_exception<Error>(m, "InternalError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapExhausted>(m, "CapExhausted", PyExc_RuntimeError);

    py::class_<Motive<GF>>(m, "Motive")
        .def_static("parse", &parse_motive, py::arg("text"))
        .def("text", &emit_motive)
        .def_property_readonly("rank", &Motive<GF>::rank)
        .def_property_readonly("e", [](const Motive<GF>& x) { return x.m.e; })
        .def_property_readonly("hash", &motive_hash)
        .def("tensor", [](const Motive<GF>& a, const Motive<GF>& b) { return tensor_motive(a, b); })
        .def("direct_sum", [](const Motive<GF>& a, const Motive<GF>& b) { return direct_sum(a, b); })
        .def("dual", [](const Motive<GF>& a) { return dual_motive(a); })
        .def("__eq__", [](const Motive<GF>& a, const Motive<GF>& b) { return a == b; })
        .def("__repr__", [](const Motive<GF>& x) {
            return "<Motive rank " + std::to_string(x.rank()) + " " + motive_hash(x) + ">";
        });

    m.def(
        "tate_module",
        [](const Motive<GF>& x, const std::string& p, int n) {
            TateApproximation t = tate_module(x, prime_of(x, p), n);
            py::dict d;
            d["rank"] = t.rank();
            d["level"] = t.level;
            d["frobenius"] = t.frobenius.str();
            return d;
        },
        py::arg("motive"), py::arg("prime"), py::arg("n"));
    m.def(
        "report", [](const Motive<GF>& x, const std::string& p, int n) { return tate_report(x, prime_of(x, p), n); },
        py::arg("motive"), py::arg("prime"), py::arg("n"));
    m.def(
        "verdict",
        [](const Motive<GF>& x, const std::string& p, int n) {
            return verdict_name(semisimplicity_report(x, prime_of(x, p), n).verdict);
        },
        py::arg("motive"), py::arg("prime"), py::arg("n"));
    m.def(
        "tate_check",
        [](const Motive<GF>& x, const Motive<GF>& y, const std::string& p, int n) {
            TateCheck c = tate_conjecture_check(x, y, prime_of(x, p), n);
            py::dict d;
            d["hom_rank"] = c.hom_rank;
            d["commutant_rank"] = c.commutant_rank;
            d["saturated"] = c.saturated;
            d["agree"] = c.agree;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("prime"), py::arg("n"));
    m.def(
        "routes_agree",
        [](const Motive<GF>& x, const std::string& p, int n) { return compare_routes(x, prime_of(x, p), n).agree; },
        py::arg("motive"), py::arg("prime"), py::arg("n"));

    m.def(
        "vx",
        [](const std::vector<std::string>& exprs, const std::string& place, int q, const std::vector<int>& field,
           int d) -> py::object {
            LaurentApprox f = laurent_of(exprs, q, field, d);
            Valuation v = vx(f, parse_place(place, periods_proto(q, field)));
            if (v.infinite) return py::none();
            return py::int_(v.value);
        },
        py::arg("exprs"), py::arg("place") = "inf", py::arg("q") = 3, py::arg("field") = std::vector<int>{0, 1},
        py::arg("d") = 1, "Valuation at a place; None for zero.");
    m.def(
        "sigma_quotient",
        [](const std::vector<std::string>& exprs, int terms, int q, const std::vector<int>& field, int d) {
            return coefficient_strings(sigma_quotient_solve(laurent_of(exprs, q, field, d), terms));
        },
        py::arg("exprs"), py::arg("terms") = 4, py::arg("q") = 3, py::arg("field") = std::vector<int>{0, 1},
        py::arg("d") = 1, "Coefficients s_0 .. s_N of s with sigma(s) = f s.");
}
