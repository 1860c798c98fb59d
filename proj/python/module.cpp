#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "normknot/catalog.hpp"
#include "normknot/json_io.hpp"
#include "normknot/oracle.hpp"
#include "normknot/sha.hpp"

namespace py = pybind11;
using namespace normknot;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const json& v : j) out.append(json_to_py(v));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

CatalogPair pair_from_arg(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) return build_from_label(spec.cast<std::string>());
    // otherwise a group dict {degree, generators, stabilizer_point?}
    json j = json::parse(py::module_::import("json").attr("dumps")(spec).cast<std::string>());
    GroupInput in = group_from_json(j);
    Point pt = in.stabilizer_point.value_or(0);
    GroupTable h = orbit_and_stabilizer(in.group, pt).stabilizer;
    return {std::move(in.group), std::move(h), "inline"};
}

Scenario scenario_from_arg(const py::object& spec, std::size_t degree) {
    if (spec.is_none()) return Scenario::make_generic();
    if (py::isinstance<py::str>(spec) && spec.cast<std::string>() == "generic")
        return Scenario::make_generic();
    json j = json::parse(py::module_::import("json").attr("dumps")(spec).cast<std::string>());
    return scenario_from_json(j, degree);
}

py::dict analyze(const py::object& group, std::uint64_t p, const py::object& scenario) {
    CatalogPair pair = pair_from_arg(group);
    Scenario sc = scenario_from_arg(scenario, pair.group.degree());
    ShaReport rep = full_report(pair.group, pair.stabilizer, p, sc);
    return json_to_py(report_to_json(rep));
}

py::dict build(const std::string& label) {
    CatalogPair pair = build_from_label(label);
    json j;
    j["label"] = pair.label;
    j["degree"] = pair.degree();
    j["G"] = group_to_json(pair.group);
    j["H"] = group_to_json(pair.stabilizer);
    return json_to_py(j);
}

py::dict group_info(const py::object& spec) {
    CatalogPair pair = pair_from_arg(spec);
    json j;
    j["degree"] = pair.degree();
    j["order"] = pair.group.order();
    j["transitive"] = is_transitive(pair.group);
    j["stabilizer_order"] = pair.stabilizer.order();
    j["abelian_invariants"] =
        pair.group.is_abelian() ? json(abelian_invariants(pair.group)) : json(nullptr);
    return json_to_py(j);
}

py::dict sweep_to_py(const SweepResult& res) {
    json j;
    j["cells"] = res.cells;
    j["checks"] = res.checks;
    j["mismatches"] = res.mismatches;
    j["ok"] = res.ok();
    return json_to_py(j);
}

}  // namespace

PYBIND11_MODULE(_normknot, m) {
    m.doc() = "obstruction groups of the Hasse norm principle from Galois data";

    m.def("analyze", &analyze, py::arg("group"), py::arg("p"),
          py::arg("scenario") = py::none(),
          "Full obstruction report for a pair given as a catalog label or a group dict.");
    m.def("build", &build, py::arg("label"), "Materialize a catalog construction.");
    m.def("group_info", &group_info, py::arg("group"));
    m.def(
        "verify_extremal", [](std::int64_t p, std::uint64_t lmax) {
            return sweep_to_py(verify_extremal_classification(p, lmax));
        },
        py::arg("p"), py::arg("l_max") = 13);
    m.def(
        "verify_pairs",
        [](std::int64_t p, std::uint64_t ell) {
            return sweep_to_py(verify_pair_classification(p, ell));
        },
        py::arg("p"), py::arg("l"));
    m.def(
        "verify_isomorphisms",
        [](std::size_t max_order) {
            return sweep_to_py(verify_semidirect_isomorphisms(max_order));
        },
        py::arg("max_order") = 2000);
    m.def("set_group_order_cap", &set_group_order_cap, py::arg("cap"));
    m.attr("__version__") = "0.1.0";
}
