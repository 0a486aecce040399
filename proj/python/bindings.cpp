#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "singerlat/error.hpp"
#include "singerlat/report.hpp"

namespace py = pybind11;
using namespace singerlat;

namespace {

RunConfig make_config(std::uint64_t q, std::uint32_t d, int precision, unsigned radius, unsigned word_bound,
                      std::uint64_t seed) {
    const FieldParams fp = FieldParams::from_q(q, d);
    RunConfig c;
    c.p = fp.p();
    c.a = fp.a();
    c.d = d;
    c.precision = precision;
    c.radius = radius;
    c.word_bound = word_bound;
    c.seed = seed;
    return c;
}

py::tuple rational(const Rational& r) { return py::make_tuple(r.numerator(), r.denominator()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact arithmetic for Singer-cycle lattices";

    py::register_exception<Error>(m, "SingerlatError", PyExc_ValueError);

    py::class_<FieldParams>(m, "FieldParams")
        .def_static("from_q", [](std::uint64_t q, std::uint32_t d) { return FieldParams::from_q(q, d); },
                    py::arg("q"), py::arg("d"))
        .def_property_readonly("p", &FieldParams::p)
        .def_property_readonly("a", &FieldParams::a)
        .def_property_readonly("d", &FieldParams::d)
        .def_property_readonly("q", &FieldParams::q)
        .def_property_readonly("singer_order", &FieldParams::singer_order)
        .def_property_readonly("omega", &FieldParams::omega)
        .def("frobenius", &FieldParams::frobenius, py::arg("x"), py::arg("k") = 1)
        .def("norm", &FieldParams::norm)
        .def("trace", &FieldParams::trace)
        .def("discrete_log", &FieldParams::discrete_log);

    m.def("gaussian_binomial", &gaussian_binomial);
    m.def("h_psl_index", &h_psl_index);
    m.def("n_psl_formula", &n_psl_formula);
    m.def("psl_case", [](const FieldParams& fp) { return std::string(psl_case_name(classify_psl_case(fp))); });
    m.def("covolume", [](const std::vector<std::uint64_t>& orders) { return rational(covolume(orders)); },
          "Covolume as a (numerator, denominator) pair.");
    m.def("neighbor_count", [](std::uint64_t q, std::uint32_t d) {
        const FieldParams fp = FieldParams::from_q(q, d);
        return neighbors(fp.K(), standard_vertex(fp.K(), d, 0)).size();
    });

    m.def(
        "verify_json",
        [](std::uint64_t q, std::uint32_t d, int precision, unsigned radius, unsigned word_bound, std::uint64_t seed) {
            const RunConfig c = make_config(q, d, precision, radius, word_bound, seed);
            Report r;
            {
                py::gil_scoped_release release;
                r = run_verify(c);
            }
            return report_to_json(r).dump();
        },
        py::arg("q"), py::arg("d"), py::arg("precision") = kDefaultPrecision, py::arg("radius") = 2,
        py::arg("word_bound") = kDefaultWordBound, py::arg("seed") = 1);

    m.def(
        "table_json",
        [](const std::string& grid, int precision) {
            std::vector<TableRow> rows;
            RunConfig base;
            base.precision = precision;
            py::gil_scoped_release release;
            for (auto [d, q] : parse_grid(grid)) rows.push_back(table_row(make_config(q, d, precision, 2, kDefaultWordBound, 1)));
            return table_to_json(rows, base).dump();
        },
        py::arg("grid") = "default", py::arg("precision") = kDefaultPrecision);

    m.def(
        "export_ball",
        [](std::uint64_t q, std::uint32_t d, unsigned radius, const std::string& format) {
            const FieldParams fp = FieldParams::from_q(q, d);
            const Ball b = ball(fp.K(), standard_vertex(fp.K(), d, 0), radius);
            if (format == "dot") return ball_to_dot(b);
            if (format == "json") return ball_to_json(b, fp);
            throw Error(ErrorCode::InvalidArgument, "format is json or dot");
        },
        py::arg("q"), py::arg("d"), py::arg("radius"), py::arg("format") = "json");
}
