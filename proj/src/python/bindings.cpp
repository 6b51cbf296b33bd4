#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "parapri/circumscription.hpp"
#include "parapri/cli.hpp"
#include "parapri/error.hpp"
#include "parapri/lp_encoder.hpp"
#include "parapri/specificity.hpp"
#include "parapri/transform.hpp"

namespace py = pybind11;
using namespace parapri;

namespace {

std::vector<std::vector<std::string>> true_atoms(const PreferredModelSet& set) {
  std::vector<std::vector<std::string>> out;
  for (const auto& m : set.models) {
    std::vector<std::string> atoms;
    for (std::size_t k = 0; k < set.universe.size(); ++k)
      if (m.value(k)) atoms.push_back(set.universe.atoms()[k]);
    out.push_back(std::move(atoms));
  }
  return out;
}

Theory parallel_of(const Theory& t) {
  return transform_canonical(t.default_formulas(), t.priority(), Limits::from_env()).to_theory(t);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prioritized default circumscription: transform to parallel defaults, brute-force semantics";

  auto base_error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());
  py::register_exception<CycleError>(m, "CycleError", validation.ptr());
  py::register_exception<NotStratifiedError>(m, "NotStratifiedError", validation.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base_error.ptr());

  py::class_<Theory>(m, "Theory")
      .def_static("parse", [](const std::string& text) { return load_theory(text); }, py::arg("text"))
      .def_property_readonly("atoms", [](const Theory& t) { return t.universe().atoms(); })
      .def_property_readonly("labels", [](const Theory& t) { return t.priority().labels(); })
      .def_property_readonly("defaults",
                             [](const Theory& t) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& d : t.defaults()) out.emplace_back(d.label, d.formula.str());
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const Theory& t) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (auto [hi, lo] : t.priority().edges())
                                 out.emplace_back(t.priority().labels()[hi], t.priority().labels()[lo]);
                               return out;
                             })
      .def("to_text", &print_theory)
      .def("to_json", [](const Theory& t) { return theory_to_json(t).dump(); })
      .def("__repr__", [](const Theory& t) {
        return "<Theory " + std::to_string(t.defaults().size()) + " defaults over " +
               std::to_string(t.universe().size()) + " atoms>";
      });

  m.def("transform", &parallel_of, py::arg("theory"), "Canonical parallel theory produced by the transform.");
  m.def(
      "transform_all",
      [](const Theory& t, std::size_t limit) {
        std::vector<Theory> out;
        for (const auto& w : transform_all(t.default_formulas(), t.priority(), limit, Limits::from_env()))
          out.push_back(w.to_theory(t));
        return out;
      },
      py::arg("theory"), py::arg("limit") = 64);
  m.def(
      "output_size", [](const Theory& t) { return output_size(t.priority()).total; }, py::arg("theory"));
  m.def(
      "preferred_models", [](const Theory& t) { return true_atoms(preferred_models(t, Limits::from_env())); },
      py::arg("theory"), "Preferred models as lists of true atoms.");
  m.def(
      "query",
      [](const Theory& t, const std::string& q) { return skeptical_entails(t, parse_formula(q), Limits::from_env()); },
      py::arg("theory"), py::arg("formula"));
  m.def(
      "circ_equivalent",
      [](const Theory& a, const Theory& b, std::optional<std::vector<std::string>> project) {
        return circ_equivalent(a, b, project, Limits::from_env());
      },
      py::arg("a"), py::arg("b"), py::arg("project") = py::none());
  m.def(
      "preorder_equivalent_to_transform",
      [](const Theory& t) {
        const auto w = transform_canonical(t.default_formulas(), t.priority(), Limits::from_env());
        const PreorderSpec prioritized{t.defaults(), t.priority(), {}};
        return preorder_equivalent(prioritized, PreorderSpec::parallel(w.formulas), t.universe(), Limits::from_env());
      },
      py::arg("theory"));
  m.def("fixtures_to_defaults", &fixtures_to_defaults, py::arg("theory"));
  m.def(
      "verify_special_case", [](int number) { return verify_special_case(number, Limits::from_env()); },
      py::arg("example"));
  m.def(
      "encode_abnormality",
      [](const Theory& t, const std::string& variant) { return encode_abnormality(t, parse_variant(variant)); },
      py::arg("theory"), py::arg("variant") = "violation");
  m.def(
      "encode_program", [](const std::string& text) { return encode_stratified(parse_program(text)); },
      py::arg("text"));
  m.def(
      "perfect_model",
      [](const std::string& text) {
        const auto z = perfect_model(parse_program(text));
        std::vector<std::string> out;
        for (std::size_t k = 0; k < z.universe().size(); ++k)
          if (z.value(k)) out.push_back(z.universe().atoms()[k]);
        return out;
      },
      py::arg("text"));
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "parapri");
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command line; returns (exit code, stdout, stderr).");
}
