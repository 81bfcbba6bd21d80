#include "entropylab/covers.hpp"
#include "entropylab/gwcert.hpp"
#include "entropylab/hyperspace.hpp"
#include "entropylab/independence.hpp"
#include "entropylab/measures.hpp"
#include "entropylab/scenario.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace entropylab;

namespace {

py::object to_fraction(const Rat& r) {
    static py::object ctor = py::module_::import("fractions").attr("Fraction");
    return ctor(rat_to_string(r));
}

Rat from_py(const py::object& v) {
    if (py::isinstance<py::int_>(v)) return Rat(v.cast<long long>());
    return rat_from_string(py::str(v).cast<std::string>());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "subshift entropy, independence and measure-space laboratory";

    py::class_<Subshift>(m, "Subshift")
        .def(py::init<int, std::vector<std::string>>(), py::arg("alphabet_size"),
             py::arg("forbidden"))
        .def_property_readonly("alphabet_size", &Subshift::alphabet_size)
        .def_property_readonly("memory", &Subshift::memory)
        .def_property_readonly("forbidden", &Subshift::forbidden)
        .def("word_admissible", [](const Subshift& s, const std::string& w) {
            return s.word_admissible(w);
        })
        .def("words", &Subshift::words, py::arg("n"),
             py::arg("guard") = std::size_t(1) << 20)
        .def("word_count",
             [](const Subshift& s, int n) {
                 return py::int_(py::str(s.word_count(n).str()));
             })
        .def("__eq__", [](const Subshift& a, const Subshift& b) { return a == b; });

    py::class_<Point>(m, "Point")
        .def(py::init<Subshift, std::string, std::string>(), py::arg("space"),
             py::arg("preperiod"), py::arg("period"))
        .def_property_readonly("preperiod", &Point::preperiod)
        .def_property_readonly("period", &Point::period)
        .def("prefix", &Point::prefix)
        .def("shifted", py::overload_cast<>(&Point::shifted, py::const_))
        .def("shifted", py::overload_cast<std::size_t>(&Point::shifted, py::const_))
        .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
        .def("__lt__", [](const Point& a, const Point& b) { return a < b; })
        .def("__repr__", &Point::to_string);

    m.def("metric", [](const Point& a, const Point& b) { return to_fraction(metric(a, b)); });

    py::class_<ClopenSet>(m, "ClopenSet")
        .def_static("empty", &ClopenSet::empty)
        .def_static("full", &ClopenSet::full)
        .def_static("cylinder", &ClopenSet::cylinder)
        .def_static("from_words", &ClopenSet::from_words)
        .def_property_readonly("window", &ClopenSet::window)
        .def_property_readonly("words", &ClopenSet::words)
        .def("is_empty", &ClopenSet::is_empty)
        .def("is_full", &ClopenSet::is_full)
        .def("contains", &ClopenSet::contains)
        .def("preimage", &ClopenSet::preimage)
        .def("intersect", &ClopenSet::intersect)
        .def("unite", &ClopenSet::unite)
        .def("difference", &ClopenSet::difference)
        .def("complement", &ClopenSet::complement)
        .def("subset_of", &ClopenSet::subset_of)
        .def("disjoint_with", &ClopenSet::disjoint_with)
        .def("__eq__", [](const ClopenSet& a, const ClopenSet& b) { return a == b; });

    py::class_<FiniteClosedSet>(m, "FiniteClosedSet")
        .def(py::init<std::vector<Point>>())
        .def_property_readonly("points", &FiniteClosedSet::points)
        .def("__len__", &FiniteClosedSet::size)
        .def("__eq__",
             [](const FiniteClosedSet& a, const FiniteClosedSet& b) { return a == b; });

    m.def("hausdorff_distance", [](const FiniteClosedSet& a, const FiniteClosedSet& b) {
        return to_fraction(hausdorff_distance(a, b));
    });
    m.def("induce_hyper", &induce_hyper);

    py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
        .def(py::init([](const std::vector<std::pair<Point, py::object>>& atoms) {
            std::vector<std::pair<Point, Rat>> out;
            for (const auto& [x, mass] : atoms) out.emplace_back(x, from_py(mass));
            return DiscreteMeasure(std::move(out));
        }))
        .def_static("dirac", &DiscreteMeasure::dirac)
        .def_property_readonly("atoms",
                               [](const DiscreteMeasure& mu) {
                                   py::list out;
                                   for (const auto& [x, mass] : mu.atoms())
                                       out.append(py::make_tuple(x, to_fraction(mass)));
                                   return out;
                               })
        .def("__eq__",
             [](const DiscreteMeasure& a, const DiscreteMeasure& b) { return a == b; });

    m.def("measure_of", [](const DiscreteMeasure& mu, const ClopenSet& a) {
        return to_fraction(measure_of(mu, a));
    });
    m.def("pushforward",
          [](const DiscreteMeasure& mu, std::size_t j) { return pushforward(mu, j); },
          py::arg("mu"), py::arg("j") = 1);
    m.def("prohorov_subset",
          [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, bool symmetric) {
              return to_fraction(prohorov_subset(mu, nu, symmetric));
          },
          py::arg("mu"), py::arg("nu"), py::arg("symmetric") = true);
    m.def("prohorov_flow", [](const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
        return to_fraction(prohorov_flow(mu, nu));
    });
    m.def("r_m", &r_m);
    m.def("in_m_n", &in_m_n);

    m.def("is_standard_cover", &is_standard_cover);
    m.def("cover_entropy_profile",
          [](const ClopenSet& u0, const ClopenSet& u1, int n_max, bool exact) {
              auto prof = cover_entropy_profile(u0, u1, n_max, exact);
              py::list rows;
              for (const auto& row : prof.rows)
                  rows.append(py::make_tuple(row.n, py::int_(py::str(row.subcover_size.str())),
                                             row.log2_over_n));
              return py::make_tuple(rows, prof.fekete_estimate, prof.last_value);
          },
          py::arg("u0"), py::arg("u1"), py::arg("n_max"), py::arg("exact") = true);

    m.def("verify_independence",
          [](const std::vector<ClopenSet>& sets, const std::vector<int>& indices) {
              auto res = verify_independence(sets, indices);
              return py::make_tuple(res.ok, res.counterexample);
          });
    m.def("max_independence_density",
          [](const std::vector<ClopenSet>& sets, int horizon) {
              auto res = max_independence_density(sets, horizon);
              return py::make_tuple(res.indices, to_fraction(res.density));
          });

    m.def("entropy_witness_pipeline",
          [](const ClopenSet& u0, const ClopenSet& u1, const ClopenSet& v0,
             const ClopenSet& v1, const std::vector<int>& j_indices, int m_depth) {
              auto rep = entropy_witness_pipeline(u0, u1, v0, v1, j_indices, m_depth);
              py::dict out;
              out["m"] = rep.m;
              out["j_size"] = rep.j_size;
              out["k_m"] = rep.k_m;
              out["separated_count"] = rep.separated_count;
              out["witness_exponent"] = rep.witness_exponent;
              out["log2_km_over_m"] = rep.log2_km_over_m;
              out["all_images_separated"] = rep.all_images_separated;
              out["bound_consistency"] = rep.bound_consistency;
              return out;
          });

    m.def("run_scenario_file",
          [](const std::string& path, const std::string& out_dir) {
              return run_scenario_file(path, out_dir);
          },
          py::arg("path"), py::arg("out_dir"));
}
