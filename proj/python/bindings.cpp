#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gbundle/bundle.hpp"
#include "gbundle/error.hpp"
#include "gbundle/examples.hpp"
#include "gbundle/io.hpp"
#include "gbundle/report.hpp"
#include "gbundle/ricci.hpp"
#include "gbundle/symmetry.hpp"
#include "gbundle/walks.hpp"

namespace py = pybind11;
using namespace gbundle;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph bundle toolkit bindings";

  static PyObject* error =
      py::exception<Error>(m, "GraphBundleError").release().ptr();
  static PyObject* hypothesis =
      py::exception<HypothesisError>(m, "HypothesisError", error).release().ptr();
  static PyObject* resource =
      py::exception<ResourceError>(m, "ResourceError", error).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HypothesisError& e) {
      PyErr_SetString(hypothesis, (e.hypothesis() + ": " + e.what()).c_str());
    } catch (const ResourceError& e) {
      PyErr_SetString(resource, (e.cap() + ": " + e.what()).c_str());
    } catch (const Error& e) {
      PyErr_SetString(error,
                      (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges,
                       std::vector<std::string> labels) {
             return Graph(n, edges, std::move(labels));
           }),
           py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("neighbors", [](const Graph& g, int v) {
        auto nb = g.neighbors(v);
        return std::vector<int>(nb.begin(), nb.end());
      })
      .def("degree", &Graph::degree)
      .def("adjacent", &Graph::adjacent)
      .def("regular_degree", &Graph::regular_degree)
      .def("label", &Graph::label)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("cycle_graph", &cycle_graph);
  m.def("complete_graph", &complete_graph);
  m.def("cartesian_product", &cartesian_product);
  m.def("cayley_graph", &cayley_graph, py::arg("orders"), py::arg("generators"));
  m.def("is_connected", &is_connected);
  m.def("format_graph", &format_graph);
  m.def("parse_graph", [](const std::string& s) { return parse_graph(s); });
  m.def("to_dot", [](const Graph& g) { return to_dot(g); });

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<int>>())
      .def_static("identity", &Permutation::identity)
      .def("image", &Permutation::image)
      .def("inverse", &Permutation::inverse)
      .def("is_identity", &Permutation::is_identity)
      .def("__call__", [](const Permutation& p, int v) { return p(v); })
      .def("__mul__", [](const Permutation& a, const Permutation& b) { return a * b; })
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__repr__", &Permutation::to_cycle_string);

  py::class_<Connection>(m, "Connection")
      .def(py::init([](Graph base, Graph fiber,
                       const std::map<std::pair<int, int>, std::vector<int>>& phi) {
             std::vector<Connection::Assignment> a;
             for (const auto& [edge, image] : phi)
               a.push_back({OrientedEdge{edge.first, edge.second}, Permutation(image)});
             return Connection(std::move(base), std::move(fiber), a);
           }),
           py::arg("base"), py::arg("fiber"),
           py::arg("phi") = std::map<std::pair<int, int>, std::vector<int>>{})
      .def_property_readonly("base", &Connection::base)
      .def_property_readonly("fiber", &Connection::fiber)
      .def("transport", &Connection::transport)
      .def("assignments", [](const Connection& c) {
        std::map<std::pair<int, int>, std::vector<int>> out;
        for (const auto& a : c.assignments())
          out[{a.edge.tail, a.edge.head}] = a.transport.image();
        return out;
      });

  py::class_<Bundle>(m, "Bundle")
      .def(py::init<Connection>())
      .def_property_readonly("connection", &Bundle::connection)
      .def_property_readonly("total", &Bundle::total)
      .def("index", &Bundle::index)
      .def("coordinates", &Bundle::coordinates);

  m.def("identity_connection", &identity_connection);
  m.def("make_dvb1", &make_dvb1);
  m.def("make_eg2", &make_eg2);
  m.def("make_eg3", &make_eg3);
  m.def("make_dvb2_torus", &make_dvb2_torus);

  m.def("holonomy", [](const Connection& c, std::vector<int> loop) {
    return holonomy(c, Path{std::move(loop)});
  });
  m.def("null_elements", &null_elements);
  m.def("closed_walk_count", [](const Graph& g, int v, int length) {
    return to_py(closed_walk_count(g, v, length));
  });
  m.def("project_bundle", [](const Bundle& b, std::vector<int> walk) {
    ProjectionPair p = project_bundle(b, Path{std::move(walk)});
    return std::make_pair(p.base_part.vertices, p.fiber_part.vertices);
  });
  m.def("count_walks_with_projections",
        [](const Bundle& b, int start, std::vector<int> loop, std::vector<int> path) {
          ProjectionCount c = count_walks_with_projections(
              b, start, Path{std::move(loop)}, Path{std::move(path)});
          return std::make_pair(to_py(c.enumerated), to_py(c.closed_form));
        });
  m.def("is_vertex_transitive",
        [](const Graph& g) { return is_vertex_transitive(g); });
  m.def("orbits", [](const Graph& g) {
    return automorphism_group(g).orbits.orbits();
  });
  m.def("automorphism_group_order",
        [](const Graph& g) { return to_py(automorphism_group(g).order()); });
  m.def("are_isomorphic", [](const Graph& a, const Graph& b) {
    IsomorphismResult r = are_isomorphic(a, b);
    return std::make_pair(r.isomorphic, r.witness);
  });
  m.def("canonical_hash", [](const Graph& g) { return canonical_form(g).hash(); });

  m.def("is_trivial_json",
        [](const Connection& c) { return dump(to_json(is_trivial(c))); });
  m.def("separation_report_json",
        [](const Bundle& b) { return dump(to_json(separation_report(b))); });
  m.def("certify_json", [](const Graph& g, bool commuting) {
    return dump(to_json(certify(g, commuting)));
  });
  m.def("check_4loop_balanced_json", [](const Connection& c) {
    return dump(to_json(check_4loop_balanced(c)));
  });
  m.def("locally_abelian_certificate_json", [](const Bundle& b) {
    return dump(to_json(locally_abelian_certificate(b)));
  });
}
