// Python bindings for the main operations: generators, validation, subsets,
// polynomial forms, bump functions, cohomology and the comparison pipelines.
// Reports cross the boundary as plain dicts (parsed from the JSON renderers);
// rationals travel as strings.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plderham/io.hpp"
#include "plderham/mv.hpp"

namespace py = pybind11;
using namespace plderham;

namespace {

py::object json_loads(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

SubSet subset_of(const GeneratedSpace& g, const std::string& name) {
  auto it = g.subsets.find(name);
  if (it != g.subsets.end()) return it->second;
  auto ref = g.space->find_label(name);
  if (ref) return generated_subset(g.space, {*ref});
  throw std::invalid_argument("no subset or labeled simplex named " + name);
}

GeneratedSpace load_space_text(const std::string& text) {
  std::istringstream in(text);
  Document doc = read_document(in);
  if (doc.space_order.size() != 1)
    throw std::invalid_argument("expected exactly one space");
  GeneratedSpace g;
  g.description = doc.space_order.front();
  g.space = doc.spaces.at(g.description);
  for (const auto& [name, entry] : doc.subsets)
    if (entry.first == g.description) g.subsets.emplace(name, entry.second);
  return g;
}

std::string space_text(const GeneratedSpace& g) {
  std::ostringstream os;
  write_space(os, g.description, *g.space);
  for (const auto& [name, sub] : g.subsets) write_subset(os, g.description, name, sub);
  return os.str();
}

int default_degree(const GeneratedSpace& g, py::object degree) {
  if (!degree.is_none()) return degree.cast<int>();
  return g.space->max_dim() + 1;
}

Exhaustion exhaustion_of(const GeneratedSpace& g) {
  return g.exhaustion ? *g.exhaustion : constant_exhaustion(g.space);
}

}  // namespace

PYBIND11_MODULE(_plderham, m) {
  m.doc() = "compactly supported PL de Rham machinery";

  py::class_<PolyForm>(m, "PolyForm")
      .def_static(
          "parse",
          [](int p, int q, const std::string& record) {
            return polyform_from_record(p, q, record);
          },
          py::arg("p"), py::arg("q"), py::arg("record"))
      .def_static("constant",
                  [](int p, const std::string& c) {
                    return PolyForm::constant(p, parse_rational(c));
                  })
      .def_static("dt", &PolyForm::dt)
      .def_property_readonly("p", &PolyForm::simplex_dim)
      .def_property_readonly("q", &PolyForm::degree)
      .def("record", [](const PolyForm& w) { return polyform_to_record(w); })
      .def("__str__", &PolyForm::to_string)
      .def("__eq__", [](const PolyForm& a, const PolyForm& b) { return a == b; })
      .def("__add__", [](const PolyForm& a, const PolyForm& b) { return a + b; })
      .def("__neg__", [](const PolyForm& a) { return -a; })
      .def("wedge", &PolyForm::wedge)
      .def("d", &PolyForm::d)
      .def("face", &PolyForm::face)
      .def("degeneracy", &PolyForm::degeneracy)
      .def("total_boundary", &PolyForm::total_boundary)
      .def("integrate",
           [](const PolyForm& w) { return rational_str(w.integrate()); })
      .def("is_zero", &PolyForm::is_zero);

  m.def("extend", &extend, "extension operator on compatible boundary tuples");

  py::class_<GeneratedSpace>(m, "Space")
      .def_property_readonly("description",
                             [](const GeneratedSpace& g) { return g.description; })
      .def_property_readonly("max_dim",
                             [](const GeneratedSpace& g) { return g.space->max_dim(); })
      .def("count", [](const GeneratedSpace& g, int dim) { return g.space->count(dim); })
      .def("validate", [](const GeneratedSpace& g) { return g.space->validate(); })
      .def("subset_names",
           [](const GeneratedSpace& g) {
             std::vector<std::string> names;
             for (const auto& [name, sub] : g.subsets) names.push_back(name);
             return names;
           })
      .def("subset_members",
           [](const GeneratedSpace& g, const std::string& name) {
             std::vector<std::pair<int, int>> out;
             for (SimplexRef s : subset_of(g, name).members())
               out.emplace_back(s.dim, s.index);
             return out;
           })
      .def("minimal_neighborhood",
           [](const GeneratedSpace& g, const std::string& name) {
             std::vector<std::pair<int, int>> out;
             for (SimplexRef s : minimal_neighborhood(subset_of(g, name)).members())
               out.emplace_back(s.dim, s.index);
             return out;
           })
      .def("good_intersection",
           [](const GeneratedSpace& g, const std::string& u, const std::string& v) {
             return good_intersection(subset_of(g, u), subset_of(g, v));
           })
      .def("to_text", &space_text)
      .def("has_exhaustion",
           [](const GeneratedSpace& g) { return g.exhaustion.has_value(); });

  m.def("generate", &make_space, "build a catalogue space, e.g. 'torus' or 'delta:2'");
  m.def("load", &load_space_text, "parse a single space from the text format");
  m.def("generator_names", &generator_names);
  m.def("scenario_names", &scenario_names);

  m.def(
      "betti",
      [](const GeneratedSpace& g, py::object relative) {
        std::optional<SubSet> rel;
        if (!relative.is_none()) rel = subset_of(g, relative.cast<std::string>());
        Cohomology h(normalized_cochains(g.space, rel ? &*rel : nullptr));
        return h.betti_vector();
      },
      py::arg("space"), py::arg("relative") = py::none(),
      "Betti numbers of the normalized cochain complex");

  m.def(
      "betti_full",
      [](const GeneratedSpace& g) {
        Cohomology h(full_cochains(g.space, g.space->max_dim() + 2));
        std::vector<int> out;
        for (int q = 0; q <= g.space->max_dim(); ++q) out.push_back(h.betti(q));
        return out;
      },
      "Betti numbers of the full (unnormalized) cochain complex");

  m.def(
      "betti_forms",
      [](const GeneratedSpace& g, py::object degree, py::object relative) {
        std::optional<SubSet> rel;
        if (!relative.is_none()) rel = subset_of(g, relative.cast<std::string>());
        FormWindow w(g.space, rel ? *rel : SubSet(g.space), default_degree(g, degree));
        return Cohomology(window_complex(w)).betti_vector();
      },
      py::arg("space"), py::arg("degree") = py::none(),
      py::arg("relative") = py::none(),
      "Betti numbers of the polynomial-form window");

  m.def(
      "betti_compact",
      [](const GeneratedSpace& g, int n_max) {
        ColimitResult res = colimit_hc_cochains(exhaustion_of(g), n_max);
        py::dict out;
        out["stabilized"] = res.stabilized;
        out["level"] = res.level;
        out["betti"] = res.betti;
        out["level_betti"] = res.level_betti;
        return out;
      },
      py::arg("space"), py::arg("n_max") = 4,
      "compactly supported Betti numbers via the colimit");

  m.def(
      "derham_check",
      [](const GeneratedSpace& g, py::object degree, py::object relative, bool compact,
         int n_max) {
        DerhamReport rep;
        if (compact) {
          rep = derham_check_compact(exhaustion_of(g), default_degree(g, degree), n_max,
                                     g.description);
        } else if (!relative.is_none()) {
          SubSet rel = subset_of(g, relative.cast<std::string>());
          rep = derham_check(g.space, &rel, default_degree(g, degree), g.description);
        } else {
          rep = derham_check(g.space, nullptr, default_degree(g, degree), g.description);
        }
        return json_loads(rep.to_json());
      },
      py::arg("space"), py::arg("degree") = py::none(),
      py::arg("relative") = py::none(), py::arg("compact") = false,
      py::arg("n_max") = 4, "PL de Rham comparison report");

  m.def(
      "mv_v1",
      [](const GeneratedSpace& g, const std::string& u, const std::string& v,
         py::object degree) {
        MvReport rep = mv_v1(subset_of(g, u), subset_of(g, v), default_degree(g, degree));
        return json_loads(rep.to_json());
      },
      py::arg("space"), py::arg("u") = "U", py::arg("v") = "V",
      py::arg("degree") = py::none(), "Mayer-Vietoris version 1 report");

  m.def(
      "mv_v2",
      [](const std::string& scenario, int degree, int n_max) {
        MvReport rep = mv_v2(make_scenario(scenario), degree, n_max);
        return json_loads(rep.to_json());
      },
      py::arg("scenario"), py::arg("degree") = 2, py::arg("n_max") = 4,
      "Mayer-Vietoris version 2 report");

  m.def(
      "bump",
      [](const GeneratedSpace& g, const std::string& l, py::object k) {
        SubSet ls = subset_of(g, l);
        SubSet ks = k.is_none() ? minimal_neighborhood(ls)
                                : subset_of(g, k.cast<std::string>());
        GlobalForm phi = bump_function({ls, ks});
        py::dict values;
        for (const auto& [s, v] : phi.values())
          values[py::make_tuple(s.dim, s.index)] = polyform_to_record(v);
        return values;
      },
      py::arg("space"), py::arg("l"), py::arg("k") = py::none(),
      "PL bump function as a dict of per-simplex records");
}
