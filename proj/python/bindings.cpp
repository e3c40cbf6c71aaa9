// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
// Python module. Problems, systems and results cross the boundary as plain
// dicts in the same JSON shapes the command-line tool reads and writes.
#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropsmt/baseline.hpp"
#include "tropsmt/enumerate.hpp"
#include "tropsmt/formula.hpp"
#include "tropsmt/io.hpp"
#include "tropsmt/preprocess.hpp"
#include "tropsmt/tropicalize.hpp"

namespace py = pybind11;
using namespace tropsmt;

namespace {

Json to_json(const py::object &value) {
    const auto text = py::module_::import("json").attr("dumps")(value).cast<std::string>();
    return parse_json(text);
}

py::object to_python(const Json &value) { return py::module_::import("json").attr("loads")(value.dump()); }

Problem problem_arg(const py::object &value) { return problem_from_json(to_json(value)); }

std::vector<Polyhedron> polyhedra_arg(const py::list &items, std::size_t dimension) {
    std::vector<Polyhedron> out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out.push_back(polyhedron_from_json(to_json(items[i]), dimension, "$[" + std::to_string(i) + "]"));
    return out;
}

InclusionFilter filter_arg(const std::string &name) {
    for (auto mode : {InclusionFilter::Off, InclusionFilter::Forward, InclusionFilter::Bidirectional})
        if (name == to_string(mode))
            return mode;
    throw py::value_error("unknown inclusion filter: " + name);
}

py::object tropicalize(const py::object &system, const std::string &epsilon, const std::string &rounding,
                       const std::string &mode) {
    TropicalizationConfig cfg;
    cfg.epsilon = rational_from_json(Json(epsilon), "epsilon");
    if (rounding == "integer")
        cfg.rounding = Rounding::Integer;
    else if (rounding == "rational")
        cfg.rounding = Rounding::Rational;
    else
        throw py::value_error("rounding must be 'integer' or 'rational'");
    if (mode == "equilibrium")
        cfg.mode = TropicalMode::Equilibrium;
    else if (mode == "prevariety")
        cfg.mode = TropicalMode::Prevariety;
    else
        throw py::value_error("mode must be 'equilibrium' or 'prevariety'");
    cfg.validate();
    const auto result = tropicalize_system(system_from_json(to_json(system)), cfg);
    return to_python(problem_to_json(result.problem));
}

py::object solve(const py::object &problem, bool minimize, const std::string &inclusion_filter,
                 std::optional<std::size_t> round_limit, std::optional<double> time_limit, bool run_preprocess) {
    Problem p = problem_arg(problem);
    EnumerationOptions opts;
    opts.minimize_constraints = minimize;
    opts.inclusion_filter = filter_arg(inclusion_filter);
    opts.round_limit = round_limit;
    if (time_limit)
        opts.time_limit = Duration(*time_limit);
    opts.validate();
    std::optional<PreprocessReport> report;
    if (run_preprocess) {
        auto [reduced, r] = preprocess(p);
        p = std::move(reduced);
        report = r;
    }
    EnumerationResult result;
    {
        py::gil_scoped_release release;
        auto session = make_internal_session(p.dimension, p.variable_names);
        result = compute_polyhedron_dnf(p, opts, *session);
    }
    return to_python(result_to_json(p, result, report ? &*report : nullptr));
}

py::object baseline(const py::object &problem, bool prune) {
    const Problem p = problem_arg(problem);
    BaselineResult result;
    {
        py::gil_scoped_release release;
        result = naive_intersection(p, prune);
    }
    return to_python(result_to_json(p, result));
}

bool equal_unions(const py::list &a, const py::list &b, std::size_t dimension) {
    return unions_equal(polyhedra_arg(a, dimension), polyhedra_arg(b, dimension), dimension);
}

std::string export_smt(const py::object &problem) {
    const Problem p = problem_arg(problem);
    const Formula f = encode_problem(p);
    return export_smtlib2(std::span<const Formula>(&f, 1), p.variable_names);
}

} // namespace

PYBIND11_MODULE(_tropsmt, m) {
    m.doc() = "Exact solver for tropical prevarieties";
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

    m.def("tropicalize", &tropicalize, py::arg("system"), py::arg("epsilon") = "1/11",
          py::arg("rounding") = "integer", py::arg("mode") = "equilibrium",
          "Tropicalize a polynomial system dict into a bag problem dict.");
    m.def("solve", &solve, py::arg("problem"), py::arg("minimize") = true,
          py::arg("inclusion_filter") = "bidirectional", py::arg("round_limit") = py::none(),
          py::arg("time_limit") = py::none(), py::arg("preprocess") = false,
          "Enumerate the solution union of a bag problem.");
    m.def("baseline", &baseline, py::arg("problem"), py::arg("prune") = true,
          "Solve by pairwise bag intersection.");
    m.def("unions_equal", &equal_unions, py::arg("a"), py::arg("b"), py::arg("dimension"),
          "Exact equality of two unions of polyhedra.");
    m.def("export_smt", &export_smt, py::arg("problem"), "SMT-LIB2 script asserting the problem.");
    m.def("parse_problem", [](const std::string &text) { return to_python(problem_to_json(parse_problem(text))); },
          py::arg("text"), "Parse and validate bag-problem JSON text.");
}
