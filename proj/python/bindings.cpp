#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "intrinlip/cones.hpp"
#include "intrinlip/errors.hpp"
#include "intrinlip/group.hpp"
#include "intrinlip/intrinsic_map.hpp"
#include "intrinlip/lipschitz.hpp"
#include "intrinlip/quasi_distance.hpp"
#include "intrinlip/subgroup_graphs.hpp"
#include "intrinlip/suites.hpp"
#include "intrinlip/zoo.hpp"

namespace py = pybind11;
using namespace intrinlip;

namespace {

using Coords = std::vector<double>;
// pybind11 holders must be non-const; the bound methods never mutate.
using SplittingPtr = std::shared_ptr<Splitting>;

// Python sees elements as chart coordinates.
Element in(const Splitting& s, const Coords& chart) {
  if (static_cast<int>(chart.size()) != s.group().dimension()) {
    throw InvalidSpec("expected " + std::to_string(s.group().dimension()) + " chart coordinates");
  }
  return s.group().from_chart(chart);
}
Coords out(const Splitting& s, const Element& g) { return s.group().to_chart(g); }

SampleBox box_for(const Splitting& s, const std::optional<std::string>& box) {
  const int dim = s.group().dimension();
  return box ? SampleBox::parse(*box, dim) : SampleBox::uniform(dim, -1.0, 1.0);
}

std::vector<BasePair> pairs_in(const Splitting& s, const std::vector<std::pair<Coords, Coords>>& pairs) {
  std::vector<BasePair> result;
  for (const auto& [a, b] : pairs) result.emplace_back(in(s, a), in(s, b));
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Intrinsic Lipschitz graph checks on metric groups";

  // Translators run last-registered first, so the derived type goes second.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);

  py::class_<Splitting, SplittingPtr>(m, "Splitting")
      .def_property_readonly("name", &Splitting::name)
      .def_property_readonly("dimension", [](const Splitting& s) { return s.group().dimension(); })
      .def_property_readonly("normal_side", [](const Splitting& s) { return to_string(s.normal_side()); })
      .def_property_readonly("is_finite", [](const Splitting& s) { return s.group().is_finite(); })
      .def_property_readonly("has_axis", &Splitting::has_axis)
      .def("identity", [](const Splitting& s) { return out(s, s.group().identity()); })
      .def("multiply", [](const Splitting& s, const Coords& a, const Coords& b) {
        return out(s, s.group().multiply(in(s, a), in(s, b)));
      })
      .def("inverse", [](const Splitting& s, const Coords& g) { return out(s, s.group().inverse(in(s, g))); })
      .def("norm", [](const Splitting& s, const Coords& g) { return s.group().norm(in(s, g)); })
      .def("distance", [](const Splitting& s, const Coords& a, const Coords& b) {
        return s.group().distance(in(s, a), in(s, b));
      })
      .def("decompose", [](const Splitting& s, const Coords& g) {
        const auto d = decompose(s, in(s, g));
        return py::make_tuple(out(s, d.n), out(s, d.h));
      })
      .def("project_n", [](const Splitting& s, const Coords& g) { return out(s, s.project_n(in(s, g))); })
      .def("project_h", [](const Splitting& s, const Coords& g) { return out(s, s.project_h(in(s, g))); })
      .def("dist_to_subgroup", [](const Splitting& s, const Coords& g) { return dist_to_subgroup(s, in(s, g)); })
      .def("minimal_opening",
           [](const Splitting& s, const std::string& family, const Coords& g) {
             ConeFamily f;
             if (family == "axis") f = ConeFamily::Axis;
             else if (family == "axis_strict") f = ConeFamily::AxisStrict;
             else if (family == "split_left") f = ConeFamily::SplitLeft;
             else if (family == "split_right") f = ConeFamily::SplitRight;
             else throw InvalidSpec("unknown cone family '" + family + "'");
             return minimal_opening(s, f, ConeHalf::Full, {}, in(s, g));
           },
           py::arg("family"), py::arg("g"))
      .def("splitting_constants",
           [](const Splitting& s, std::size_t samples, std::uint64_t seed, std::optional<std::string> box,
              bool exhaustive) {
             const auto c = estimate_splitting_constants(s, box_for(s, box), samples, seed, exhaustive);
             return std::vector<double>(c.c.begin(), c.c.end());
           },
           py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("box") = std::nullopt,
           py::arg("exhaustive") = false);

  m.def("group", [](const std::string& spec) { return std::const_pointer_cast<Splitting>(instantiate_group(spec)); },
        py::arg("spec"));
  m.def("shipped_groups", &shipped_group_specs);
  m.def("shipped_maps", [](const SplittingPtr& s) { return shipped_map_specs(*s); });

  py::class_<IntrinsicMap>(m, "IntrinsicMap")
      .def_property_readonly("descriptor", &IntrinsicMap::descriptor)
      .def("contains", [](const IntrinsicMap& f, const Coords& n) { return f.contains(in(f.splitting(), n)); })
      .def("__call__", [](const IntrinsicMap& f, const Coords& n) {
        return out(f.splitting(), f(in(f.splitting(), n)));
      })
      .def("graph_point", [](const IntrinsicMap& f, const Coords& n) {
        return out(f.splitting(), graphing_map(f, in(f.splitting(), n)).point);
      })
      .def("translate", [](const IntrinsicMap& f, const Coords& q) {
        return translate_map(f, in(f.splitting(), q));
      })
      .def("sample_pairs",
           [](const IntrinsicMap& f, std::size_t count, std::uint64_t seed, std::optional<std::string> box) {
             const auto& s = f.splitting();
             std::vector<std::pair<Coords, Coords>> result;
             for (const auto& [a, b] : sample_domain_pairs(f, box_for(s, box), count, seed)) {
               result.emplace_back(out(s, a), out(s, b));
             }
             return result;
           },
           py::arg("count"), py::arg("seed") = 1, py::arg("box") = std::nullopt)
      .def("fssc", [](const IntrinsicMap& f, const std::vector<std::pair<Coords, Coords>>& pairs) {
        return fssc_constant(f, pairs_in(f.splitting(), pairs)).value;
      })
      .def("quasi_distance", [](const IntrinsicMap& f, const Coords& a, const Coords& b) {
        return quasi_distance(f, in(f.splitting(), a), in(f.splitting(), b));
      })
      .def("is_subgroup", [](const IntrinsicMap& f, const std::vector<std::pair<Coords, Coords>>& pairs) {
        return subgroup_closure_check(f, pairs_in(f.splitting(), pairs)).closed;
      });

  m.def("map", [](const SplittingPtr& s, const std::string& spec) { return parse_map_spec(s, spec); },
        py::arg("splitting"), py::arg("spec"));

  m.def("verify_json",
        [](const std::string& group, const std::string& suite, std::size_t samples, std::uint64_t seed,
           std::optional<std::string> map, bool exhaustive, std::optional<std::string> box) {
          SuiteOptions o;
          o.group = group;
          o.suite = suite;
          o.samples = samples;
          o.seed = seed;
          o.map = std::move(map);
          o.exhaustive = exhaustive;
          o.box = std::move(box);
          SuiteReport r;
          {
            py::gil_scoped_release release;
            r = run_suite(o);
          }
          return report_json(r, -1);
        },
        py::arg("group"), py::arg("suite") = "all", py::arg("samples") = 10000, py::arg("seed") = 1,
        py::arg("map") = std::nullopt, py::arg("exhaustive") = false, py::arg("box") = std::nullopt);

  m.def("estimate_json",
        [](const std::string& group, const std::string& map, std::size_t samples, std::uint64_t seed,
           bool exhaustive, std::optional<std::string> box) {
          EstimateOptions o;
          o.group = group;
          o.map = map;
          o.samples = samples;
          o.seed = seed;
          o.exhaustive = exhaustive;
          o.box = std::move(box);
          return estimate_json(o, estimate_constants(o), 0.0, -1);
        },
        py::arg("group"), py::arg("map") = "const:0", py::arg("samples") = 10000, py::arg("seed") = 1,
        py::arg("exhaustive") = false, py::arg("box") = std::nullopt);
}
