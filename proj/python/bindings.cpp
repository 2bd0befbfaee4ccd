#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "virtgen/cli.hpp"
#include "virtgen/construction.hpp"
#include "virtgen/errors.hpp"
#include "virtgen/graphs.hpp"
#include "virtgen/group_spec.hpp"
#include "virtgen/mingen.hpp"
#include "virtgen/seq_product.hpp"
#include "virtgen/subgroups.hpp"
#include "virtgen/verify.hpp"

namespace py = pybind11;
using namespace virtgen;

// Reports cross the boundary as JSON text; the Python package decodes them.
PYBIND11_MODULE(_virtgen, m) {
  m.doc() = "Generating and independence graphs of finite groups";

  auto error = py::register_exception<Error>(m, "VirtgenError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());

  py::class_<FiniteGroup>(m, "Group")
      .def(py::init([](const std::string& spec) { return build_group(spec); }), py::arg("spec"))
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("label", &FiniteGroup::label)
      .def_property_readonly("generators", &FiniteGroup::generators)
      .def("mul", &FiniteGroup::mul)
      .def("inv", &FiniteGroup::inv)
      .def("element_order", &FiniteGroup::element_order)
      .def("name", &FiniteGroup::name)
      .def("is_abelian", &FiniteGroup::is_abelian)
      .def("closure", [](const FiniteGroup& G, const std::vector<Elem>& s) { return closure(G, s).elements(); })
      .def("frattini", [](const FiniteGroup& G) { return frattini(G).elements(); })
      .def("center", [](const FiniteGroup& G) { return center(G).elements(); })
      .def("is_soluble", [](const FiniteGroup& G) { return is_soluble(G); })
      .def("rank", [](const FiniteGroup& G) { return rank_d(G); })
      .def("minimal_class", [](const FiniteGroup& G) { return to_string(classify_unique_minimal(G).kind); })
      .def("adjacent",
           [](const FiniteGroup& G, Elem x, Elem y, const std::string& kind) {
             switch (parse_graph_kind(kind)) {
               case GraphKind::generating: return adj_generating(G, x, y);
               case GraphKind::independence: return adj_independent(G, x, y);
               case GraphKind::virt_independence: return adj_virt_independent(G, x, y);
             }
             return false;
           },
           py::arg("x"), py::arg("y"), py::arg("kind") = "virt-independence")
      .def("__len__", &FiniteGroup::order)
      .def("__repr__", [](const FiniteGroup& G) { return "<Group " + G.label() + " of order " + std::to_string(G.order()) + ">"; });

  m.def("_summary", [](const std::string& spec) { return group_summary(build_group(spec)).dump(); });
  m.def("_graph", [](const std::string& spec, const std::string& kind) {
    const FiniteGroup G = build_group(spec);
    return to_json(graph_report(G, parse_graph_kind(kind)), &G).dump();
  });
  m.def("_mingen", [](const std::string& spec) { return to_json(tarski_table(build_group(spec))).dump(); });
  m.def("_census", [](unsigned t, std::size_t samples, std::uint64_t seed) {
    return to_json(component_census(t, samples, seed)).dump();
  });
  m.def("_generator_pairs", [](unsigned t, const std::string& variant) {
    return to_json(verify_generator_pairs(t, parse_variant(variant))).dump();
  });
  m.def("_separation", [](const std::vector<double>& taus, std::size_t threshold, std::size_t doubling,
                          const std::string& family) {
    const CoordinateFamily F = family.empty() ? doubling_path_family(doubling) : load_family(family);
    return to_json(separation_demo(F, taus, threshold)).dump();
  });
  m.def("_verify", [](const std::string& suite) { return to_json(run_suite(suite)).dump(); });
}
