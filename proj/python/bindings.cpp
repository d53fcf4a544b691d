#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zsdiam/formulas.hpp"
#include "zsdiam/patterns.hpp"
#include "zsdiam/search.hpp"
#include "zsdiam/solver.hpp"

namespace py = pybind11;
using namespace zsdiam;

namespace {

ProblemSpec make_spec(int s, int r, const std::string& mode) { return ProblemSpec(s, r, Mode::parse(mode)); }

py::dict witness_dict(const Witness& w) {
    py::dict d;
    d["s1"] = w.s1;
    d["s2"] = w.s2;
    d["kind1"] = w.kind1.to_string();
    d["kind2"] = w.kind2.to_string();
    return d;
}

std::vector<int> values_of(const Coloring& c) {
    std::vector<int> out;
    for (Symbol x : c.symbols()) out.push_back(x.is_infinity() ? -1 : x.value());
    return out;
}

}  // namespace

PYBIND11_MODULE(_zsdiam, m) {
    m.doc() = "Extremal solution-free colorings";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def(
        "compute",
        [](int s, int r, const std::string& mode, int max_n, std::uint64_t nodes, int workers) {
            SearchLimits limits;
            limits.max_n = max_n;
            limits.node_budget = nodes;
            limits.workers = workers;
            ExtremalResult res;
            {
                py::gil_scoped_release release;
                res = compute_f(make_spec(s, r, mode), limits);
            }
            py::dict d;
            d["status"] = to_string(res.status);
            d["value"] = res.value();
            d["lower_bound"] = res.lower_bound();
            d["counterexample"] = res.counterexample ? py::cast(values_of(*res.counterexample)) : py::none();
            d["nodes"] = res.nodes;
            return d;
        },
        py::arg("s"), py::arg("r"), py::arg("mode"), py::arg("max_n") = 64, py::arg("nodes") = 4'000'000'000ULL,
        py::arg("workers") = 0, "Exact f(s, r, mode) by exhaustive search.");

    m.def(
        "find_solution",
        [](int s, int r, const std::string& mode, const std::string& coloring) -> py::object {
            const auto spec = make_spec(s, r, mode);
            const auto w = has_solution(spec, parse_coloring(coloring, spec));
            if (!w) return py::none();
            return witness_dict(*w);
        },
        py::arg("s"), py::arg("r"), py::arg("mode"), py::arg("coloring"),
        "A solution in the coloring, or None if it is solution-free.");

    m.def(
        "closed_form",
        [](int s, int r, const std::string& mode) {
            const auto f = closed_form(make_spec(s, r, mode));
            py::dict d;
            d["value"] = f.value;
            d["case"] = f.case_label;
            d["applicable"] = f.applicable;
            d["note"] = f.note;
            return d;
        },
        py::arg("s"), py::arg("r"), py::arg("mode"));

    m.def(
        "expand",
        [](const std::string& pattern, int s, int r) { return values_of(expand(parse_pattern(pattern), Bindings::of(s, r))); },
        py::arg("pattern"), py::arg("s"), py::arg("r"), "Expand a run-length pattern; infinity becomes -1.");

    m.def("builtins", [] {
        std::vector<std::string> names;
        for (const auto& b : builtin_library()) names.push_back(b.name);
        return names;
    });

    m.def(
        "verify_builtin",
        [](const std::string& name, int s, int r) {
            const auto rep = verify_builtin(find_builtin(name), Bindings::of(s, r));
            py::dict d;
            d["status"] = to_string(rep.status);
            d["length"] = rep.length;
            d["expected_length"] = rep.expected_length;
            d["alive"] = rep.alive;
            return d;
        },
        py::arg("name"), py::arg("s"), py::arg("r"));

    m.def(
        "egz_oracle",
        [](int modulus, int length) {
            const auto res = egz_oracle(modulus, length);
            return py::make_tuple(res.holds, res.counterexample);
        },
        py::arg("m"), py::arg("length"), "(holds, counterexample or None)");
}
