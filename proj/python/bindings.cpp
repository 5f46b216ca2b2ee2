// Python bindings: JSON text in, JSON text out, mirroring the CLI documents.

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kha/cli.hpp"
#include "kha/error.hpp"
#include "kha/io.hpp"
#include "kha/shuffle.hpp"
#include "kha/wallcross.hpp"

namespace py = pybind11;
using namespace kha;

namespace {

ShuffleElement element_from_text(const ShuffleAlgebra& a, const std::string& text) {
    return a.element(io::laurent_from_json(io::parse_text(text), "", &a.quiver().vertices()));
}

std::string multiply(const std::string& workspace, const std::string& f, const std::string& g) {
    ShuffleAlgebra a = io::workspace_from_json(io::parse_text(workspace)).algebra();
    return io::dump(io::to_json(a.multiply(element_from_text(a, f), element_from_text(a, g)).payload()));
}

std::string hn_strata_text(const std::string& quiver, const std::string& theta, const std::string& d) {
    Quiver q = io::quiver_from_json(io::parse_text(quiver));
    return io::dump(io::to_json(
        hn_strata(q, io::theta_from_json(io::parse_text(theta)), io::dim_from_json(io::parse_text(d)))));
}

std::string relation_search_text(int r_max, const std::vector<int>& q_powers) {
    VarSpace qs(1, {});
    std::vector<LaurentPoly> candidates;
    for (int k : q_powers) candidates.push_back(LaurentPoly::variable(qs, 0, k));
    return io::dump(io::to_json(relation_search(jordan_algebra(), r_max, candidates)));
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args, const std::string& stdin_text) {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = cli::run(args, in, out, err);
    }
    return {code, out.str(), err.str()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "K-theoretic Hall algebra toolkit";
    static py::exception<Error> kha_error(m, "KhaError");
    py::register_exception<SchemaError>(m, "SchemaError", kha_error.ptr());

    m.def("multiply", &multiply, py::arg("workspace"), py::arg("f"), py::arg("g"),
          "Shuffle product of two element documents over a workspace document.");
    m.def("hn_strata", &hn_strata_text, py::arg("quiver"), py::arg("theta"), py::arg("d"),
          "Harder-Narasimhan strata document.");
    m.def("relation_search", &relation_search_text, py::arg("r_max") = 3,
          py::arg("q_powers") = std::vector<int>{1, -1, 2, -2},
          "Quantum relation search on the Jordan quiver over candidates q^k.");
    m.def("run_cli", &run_cli, py::arg("args"), py::arg("stdin") = std::string(),
          "Runs the kha command line and returns (exit code, stdout, stderr).");
}
