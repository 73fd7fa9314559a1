#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "kpinf/classify.hpp"
#include "kpinf/errors.hpp"
#include "kpinf/expression.hpp"
#include "kpinf/ideals.hpp"
#include "kpinf/paths.hpp"
#include "kpinf/steinberg.hpp"
#include "kpinf/witness.hpp"

namespace py = pybind11;
using namespace kpinf;

namespace {

// Python-side handle; the C++ API shares graphs through shared_ptr<const KGraph>.
struct Graph {
    std::shared_ptr<const KGraph> g;
};

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::string> names(const KGraph& g, const std::vector<Path>& ps) {
    std::vector<std::string> out;
    out.reserve(ps.size());
    for (const Path& p : ps) out.push_back(path_name(g, p));
    return out;
}

std::vector<VertexId> vertex_ids(const KGraph& g, const std::vector<std::string>& vs) {
    std::vector<VertexId> out;
    for (const auto& v : vs) out.push_back(g.vertex_id(v));
    return out;
}

std::vector<std::string> vertex_names(const KGraph& g, const std::vector<VertexId>& vs) {
    std::vector<std::string> out;
    for (VertexId v : vs) out.push_back(g.vertex_name(v));
    return out;
}

Degree degree_of(const Graph& g, const std::vector<int>& n) {
    if (static_cast<int>(n.size()) != g.g->rank())
        throw PreconditionError("degree has " + std::to_string(n.size()) + " coordinates, rank is " +
                                std::to_string(g.g->rank()));
    return Degree(n);
}

}  // namespace

PYBIND11_MODULE(_kpinf, m) {
    m.doc() = "k-graphs, Kumjian-Pask algebras and pure infiniteness";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<VerificationError>(m, "VerificationError", base.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

    py::class_<Graph>(m, "KGraph")
        .def_static("from_text", [](const std::string& s) { return Graph{std::make_shared<const KGraph>(load_kgraph(s))}; })
        .def_static("load", [](const std::string& path) {
            return Graph{std::make_shared<const KGraph>(load_kgraph_file(path))};
        })
        .def_property_readonly("rank", [](const Graph& g) { return g.g->rank(); })
        .def_property_readonly("vertices", [](const Graph& g) {
            std::vector<std::string> out;
            for (VertexId v = 0; v < static_cast<VertexId>(g.g->vertex_count()); ++v) out.push_back(g.g->vertex_name(v));
            return out;
        })
        .def_property_readonly("edges", [](const Graph& g) {
            py::list out;
            for (const Edge& e : g.g->edges())
                out.append(py::make_tuple(e.name, e.color + 1, g.g->vertex_name(e.source), g.g->vertex_name(e.range)));
            return out;
        })
        .def("to_text", [](const Graph& g) { return g.g->to_text(); })
        .def("validate", [](const Graph& g) {
            py::list out;
            for (const Violation& v : validate(*g.g).violations)
                out.append(py::make_tuple(std::string(to_string(v.kind)), v.detail, v.items));
            return out;
        }, "List of (kind, detail, items) violations; empty when the graph is valid.")
        .def("paths", [](const Graph& g, const std::string& v, const std::vector<int>& n, bool boundary) {
            auto set = enumerate_paths(*g.g, g.g->vertex_id(v), degree_of(g, n),
                                       boundary ? PathMode::Boundary : PathMode::Exact);
            return names(*g.g, set.paths);
        }, py::arg("vertex"), py::arg("degree"), py::arg("boundary") = false)
        .def("mce", [](const Graph& g, const std::string& p, const std::string& q) {
            return names(*g.g, mce(*g.g, parse_path(*g.g, p), parse_path(*g.g, q)));
        })
        .def("closure", [](const Graph& g, const std::vector<std::string>& vs) {
            return vertex_names(*g.g, sat_her_closure(*g.g, vertex_ids(*g.g, vs)).vertices);
        })
        .def("ideals", [](const Graph& g) {
            std::vector<std::vector<std::string>> out;
            for (const auto& s : enumerate_sat_her(*g.g).sets) out.push_back(vertex_names(*g.g, s.vertices));
            return out;
        }, "Every saturated hereditary vertex set, smallest first.")
        .def("quotient", [](const Graph& g, const std::vector<std::string>& vs) {
            SatHerSet h{vertex_ids(*g.g, vs)};
            std::sort(h.vertices.begin(), h.vertices.end());
            return Graph{std::make_shared<const KGraph>(quotient(*g.g, h))};
        })
        .def("aperiodicity", [](const Graph& g, int depth) {
            return to_python(to_json(*g.g, aperiodicity_check(*g.g, depth)));
        }, py::arg("depth") = 6)
        .def("contract", [](const Graph& g, const std::string& kappa, int depth) -> py::object {
            auto c = locally_contracting_on(*g.g, parse_path(*g.g, kappa), depth);
            if (!c) return py::none();
            py::dict d;
            d["lambda"] = path_name(*g.g, c->bisection.lambda);
            d["mu"] = path_name(*g.g, c->bisection.mu);
            d["entrance"] = path_name(*g.g, c->entrance);
            return d;
        }, py::arg("path"), py::arg("depth") = 6)
        .def("element", [](const Graph& g, const std::string& text, const std::string& field) {
            return parse_expression(g.g, Field::parse(field), text);
        }, py::arg("text"), py::arg("field") = "Q")
        .def("classify", [](const Graph& g, int depth, const std::string& field, bool assume_aperiodic) {
            ClassifyOptions o;
            o.depth = depth;
            o.field = Field::parse(field);
            o.assume_aperiodic = assume_aperiodic;
            return to_python(to_json(classify_pure_infiniteness(g.g, o)));
        }, py::arg("depth") = 6, py::arg("field") = "Q", py::arg("assume_aperiodic") = false)
        .def("witness", [](const Graph& g, const std::string& v, int depth, const std::string& field,
                           bool assume_aperiodic) {
            ProofOptions o;
            o.depth = depth;
            o.field = Field::parse(field);
            o.assume_aperiodic = assume_aperiodic;
            return to_python(to_json(*g.g, prove_vertex_properly_infinite(g.g, g.g->vertex_id(v), o)));
        }, py::arg("vertex"), py::arg("depth") = 6, py::arg("field") = "Q", py::arg("assume_aperiodic") = false);

    py::class_<KPElement>(m, "Element")
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def("__eq__", [](const KPElement& a, const KPElement& b) { return equals(a, b); })
        .def("__str__", [](const KPElement& a) { return to_expression(a); })
        .def("__repr__", [](const KPElement& a) { return "Element(" + to_expression(a) + ")"; })
        .def("normal_form", [](const KPElement& a) { return normal_form(a); })
        .def("is_zero", &KPElement::is_zero)
        .def("is_idempotent", [](const KPElement& a) { return is_idempotent(a); })
        .def("gradings", [](const KPElement& a) {
            std::vector<std::vector<int>> out;
            for (const Degree& d : gradings(a)) out.push_back(d.coords());
            return out;
        })
        .def("steinberg_terms", [](const KPElement& a) {
            // Indicator coefficients after mapping into the groupoid model.
            py::list out;
            const KGraph& g = a.graph();
            for (const auto& [b, c] : to_steinberg(a).terms())
                out.append(py::make_tuple(path_name(g, b.lambda), path_name(g, b.mu), c.get_str()));
            return out;
        })
        .def("steinberg_round_trip", [](const KPElement& a) { return from_steinberg(to_steinberg(a)); });
}
