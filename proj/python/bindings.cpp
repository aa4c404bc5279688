#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sandpile/applications.hpp"
#include "sandpile/divisor.hpp"
#include "sandpile/error.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/jacobian.hpp"
#include "sandpile/linalg.hpp"
#include "sandpile/trees.hpp"

namespace py = pybind11;
using namespace sandpile;

namespace {

// Python int <-> Integer through decimal text.
Integer to_integer(py::handle h) {
    if (!py::isinstance<py::int_>(h) || py::isinstance<py::bool_>(h)) throw py::type_error("expected an int");
    return Integer(py::str(h).cast<std::string>(), 10);
}

py::int_ from_integer(const Integer& x) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Divisor to_divisor(const py::iterable& values) {
    Divisor d;
    for (py::handle h : values) d.values.push_back(to_integer(h));
    return d;
}

py::list from_vector(const IntegerVector& v) {
    py::list out;
    for (const auto& x : v) out.append(from_integer(x));
    return out;
}

EdgeOrder to_order(const Multigraph& g, const std::optional<std::vector<EdgeId>>& order) {
    return order ? EdgeOrder(g.edge_count(), *order) : EdgeOrder(g.edge_count());
}

py::dict certificate(const DharResult& r) {
    py::dict out;
    out["reduced"] = r.reduced();
    if (const auto* b = std::get_if<BurningOrder>(&r.certificate)) out["burning_order"] = b->order;
    else if (const auto* n = std::get_if<NegativeVertex>(&r.certificate)) out["negative_vertex"] = n->vertex;
    else out["stuck_set"] = std::get<StuckSet>(r.certificate).vertices;
    return out;
}

} // namespace

PYBIND11_MODULE(_sandpile, m) {
    m.doc() = "Chip-firing on finite multigraphs";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object cls = py::module_::import("sandpile._errors").attr("SandpileError");
            py::object exc = cls(std::string(to_string(e.kind())), e.what());
            PyErr_SetObject(cls.ptr(), exc.ptr());
        }
    });

    py::class_<Multigraph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
                 std::vector<Edge> es;
                 for (const auto& [u, v] : edges) es.push_back({u, v});
                 return build_graph(n, es);
             }),
             py::arg("n"), py::arg("edges"))
        .def_static("from_text", [](const std::string& text) {
            std::istringstream in(text);
            return parse_graph(in);
        })
        .def("to_text", &format_graph)
        .def_property_readonly("vertex_count", &Multigraph::vertex_count)
        .def_property_readonly("edge_count", &Multigraph::edge_count)
        .def_property_readonly("edges",
                               [](const Multigraph& g) {
                                   std::vector<std::pair<Vertex, Vertex>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def("degree", &Multigraph::degree)
        .def("laplacian",
             [](const Multigraph& g) {
                 const IntegerMatrix q = laplacian(g);
                 py::list rows;
                 for (std::size_t i = 0; i < q.rows(); ++i) {
                     py::list row;
                     for (std::size_t j = 0; j < q.cols(); ++j) row.append(from_integer(q(i, j)));
                     rows.append(row);
                 }
                 return rows;
             })
        .def("__eq__", [](const Multigraph& a, const Multigraph& b) { return a == b; })
        .def("__repr__", [](const Multigraph& g) {
            return "Graph(n=" + std::to_string(g.vertex_count()) + ", m=" + std::to_string(g.edge_count()) + ")";
        });

    m.def(
        "is_reduced", [](const Multigraph& g, const py::iterable& d, Vertex q) { return certificate(is_reduced(g, to_divisor(d), q)); },
        py::arg("graph"), py::arg("divisor"), py::arg("q") = 0);

    m.def(
        "reduce",
        [](const Multigraph& g, const py::iterable& d, Vertex q, bool descending) {
            const Reducer r(g, q);
            const ReduceResult out = r.reduce(to_divisor(d), descending ? BorrowOrder::Descending : BorrowOrder::Ascending);
            py::dict res;
            res["reduced"] = from_vector(out.reduced.values);
            res["script"] = from_vector(out.script.counts);
            res["step2_moves"] = from_integer(out.stats.step2_moves);
            res["step3_moves"] = from_integer(out.stats.step3_moves);
            res["dhar_restarts"] = out.stats.dhar_restarts;
            res["lambda2"] = r.lambda2();
            return res;
        },
        py::arg("graph"), py::arg("divisor"), py::arg("q") = 0, py::arg("descending") = false);

    m.def(
        "equivalent",
        [](const Multigraph& g, const py::iterable& a, const py::iterable& b) -> py::object {
            const Equivalence e = equivalent(g, to_divisor(a), to_divisor(b));
            if (!e.equivalent) return py::none();
            return from_vector(e.script->counts);
        },
        py::arg("graph"), py::arg("d1"), py::arg("d2"),
        "Firing script x with d1 - Qx = d2, or None when d1 and d2 are not equivalent.");

    m.def(
        "jacobian",
        [](const Multigraph& g, Vertex q) {
            const JacobianPresentation p = jacobian(g, q);
            py::dict out;
            out["order"] = from_integer(p.order);
            out["invariant_factors"] = from_vector(p.invariant_factors);
            py::list gens;
            for (const auto& d : p.generators) gens.append(from_vector(d.values));
            out["generators"] = gens;
            return out;
        },
        py::arg("graph"), py::arg("q") = 0);

    m.def(
        "count_trees", [](const Multigraph& g, Vertex q) { return from_integer(determinant(reduced_laplacian(g, q))); },
        py::arg("graph"), py::arg("q") = 0);

    m.def(
        "spanning_trees",
        [](const Multigraph& g) {
            std::vector<std::vector<EdgeId>> out;
            for (auto& t : enumerate_spanning_trees(g, EnumerationLimit::from_environment())) out.push_back(std::move(t.edges));
            return out;
        },
        py::arg("graph"));

    m.def(
        "tree_from_divisor",
        [](const Multigraph& g, const py::iterable& d, Vertex q, const std::optional<std::vector<EdgeId>>& order) {
            return tree_from_reduced(g, q, to_order(g, order), to_divisor(d)).edges;
        },
        py::arg("graph"), py::arg("divisor"), py::arg("q") = 0, py::arg("order") = py::none());

    m.def(
        "divisor_from_tree",
        [](const Multigraph& g, std::vector<EdgeId> edges, Vertex q, const std::optional<std::vector<EdgeId>>& order) {
            std::sort(edges.begin(), edges.end());
            return from_vector(reduced_from_tree(g, q, to_order(g, order), SpanningTree{edges}).values);
        },
        py::arg("graph"), py::arg("tree"), py::arg("q") = 0, py::arg("order") = py::none());

    m.def(
        "verify_bijection",
        [](const Multigraph& g, Vertex q, const std::optional<std::vector<EdgeId>>& order) {
            const BijectionReport r = verify_bijection(g, q, to_order(g, order), EnumerationLimit::from_environment());
            py::dict out;
            out["passed"] = r.passed();
            out["parking_functions"] = r.parking_functions;
            out["spanning_trees"] = r.spanning_trees;
            out["determinant"] = from_integer(r.determinant);
            return out;
        },
        py::arg("graph"), py::arg("q") = 0, py::arg("order") = py::none());

    m.def(
        "sample_trees",
        [](const Multigraph& g, std::uint64_t seed, std::size_t count, Vertex q, const std::optional<std::vector<EdgeId>>& order,
           unsigned threads) {
            const TreeSampler sampler(g, q, to_order(g, order));
            SampleReport r;
            {
                py::gil_scoped_release release;
                r = sampler.sample_many(seed, count, threads);
            }
            std::vector<std::vector<EdgeId>> out;
            for (auto& t : r.trees) out.push_back(std::move(t.edges));
            return out;
        },
        py::arg("graph"), py::arg("seed") = 0, py::arg("count") = 1, py::arg("q") = 0, py::arg("order") = py::none(),
        py::arg("threads") = 0);

    m.def(
        "winnable", [](const Multigraph& g, const py::iterable& d, Vertex q) { return winnable(g, to_divisor(d), q).winnable; },
        py::arg("graph"), py::arg("divisor"), py::arg("q") = 0);

    m.def(
        "winning_strategy",
        [](const Multigraph& g, const py::iterable& d, Vertex q) { return from_vector(winning_strategy(g, to_divisor(d), q).counts); },
        py::arg("graph"), py::arg("divisor"), py::arg("q") = 0);

    m.def(
        "rank_at_least",
        [](const Multigraph& g, const py::iterable& d, long c, Vertex q) { return rank_at_least(g, to_divisor(d), q, c); },
        py::arg("graph"), py::arg("divisor"), py::arg("c"), py::arg("q") = 0);
}
