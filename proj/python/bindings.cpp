#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revham/pipeline.hpp"

namespace py = pybind11;
using namespace revham;

namespace {

py::tuple run_command(const std::string& command, const std::string& config_json)
{
    CommandResult r;
    try {
        JobConfig config = config_from_json(Json::parse(config_json));
        if (command == "check") {
            r = run_check(config);
        } else if (command == "normalform") {
            r = run_normalform(config);
        } else if (command == "verify") {
            r = run_verify(config);
        } else if (command == "diagnose") {
            r = run_diagnose(config);
        } else if (command == "plotdata") {
            r = run_plotdata(config);
        } else {
            throw py::value_error("unknown command '" + command + "'");
        }
    } catch (const py::error_already_set&) {
        throw;
    } catch (const py::value_error&) {
        throw;
    } catch (const std::exception& e) {
        r = error_result(command, e);
    }
    return py::make_tuple(render(r.document), static_cast<int>(r.code));
}

std::string roundtrip(const std::string& text, int order, const std::string& first, const std::string& second)
{
    VarNames vars{first, second};
    return unparse(parse(text, vars, order), vars);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Normal forms of reversible planar vector fields";
    m.attr("schema_version") = schema_version;
    m.def("run", &run_command, py::arg("command"), py::arg("config_json"),
          "Runs a command on a JSON job document; returns (json text, exit code).");
    m.def("canonical", &roundtrip, py::arg("text"), py::arg("order"), py::arg("first") = "u",
          py::arg("second") = "v", "Parses an expression and prints it back in canonical form.");

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
}
