#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stabsym/error.hpp"
#include "stabsym/io.hpp"

namespace py = pybind11;
using namespace stabsym;

namespace {

SearchOptions search(std::uint64_t budget, std::uint64_t seed, double tol) { return {budget, seed, tol}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stability of group symmetrizers on multiaffine polynomials";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  // Groups and polynomials travel as their file formats; reports as JSON text.
  m.def("canonical_group", [](const std::string& text) { return format_group(parse_group(text)); });
  m.def("analyze_group", [](const std::string& text) { return to_json(analyze_group(parse_group(text))); });
  m.def("preserves_stability", [](const std::string& text) { return preserves_stability(parse_group(text)); });
  m.def("has_coincidence_property",
        [](const std::string& text) { return has_coincidence_property(parse_group(text)); });
  m.def("symmetrize", [](const std::string& group, const std::string& poly) {
    return format_poly(symmetrize(parse_group(group), parse_poly(poly)));
  });
  m.def("evaluate", [](const std::string& poly, const std::vector<std::complex<double>>& point) {
    const auto f = parse_poly(poly);
    if (static_cast<int>(point.size()) != f.nvars()) throw PreconditionError("evaluate: point has wrong length");
    return f.evaluate(point);
  });

  m.def(
      "stability_check",
      [](const std::string& poly, std::uint64_t budget, std::uint64_t seed, double tol) {
        return to_json(check_stability(parse_poly(poly), search(budget, seed, tol)));
      },
      py::arg("poly"), py::arg("budget") = kDefaultBudget, py::arg("seed") = 0, py::arg("tol") = kDefaultTol);
  m.def(
      "grace_check",
      [](const std::string& element, std::uint64_t budget, std::uint64_t seed, double tol) {
        return to_json(is_grace_like(parse_element(element), search(budget, seed, tol)));
      },
      py::arg("element"), py::arg("budget") = kDefaultBudget, py::arg("seed") = 0, py::arg("tol") = kDefaultTol);
  m.def(
      "counterexample",
      [](const std::string& group, std::uint64_t budget, std::uint64_t seed, double tol) {
        return to_json(counterexample(parse_group(group), search(budget, seed, tol)));
      },
      py::arg("group"), py::arg("budget") = kDefaultBudget, py::arg("seed") = 0, py::arg("tol") = kDefaultTol);
  m.def(
      "coincidence_counterexample",
      [](const std::string& group, std::uint64_t budget, std::uint64_t seed, double tol) {
        return to_json(coincidence_counterexample(parse_group(group), search(budget, seed, tol)));
      },
      py::arg("group"), py::arg("budget") = kDefaultBudget, py::arg("seed") = 0, py::arg("tol") = kDefaultTol);
  m.def(
      "gws_check",
      [](const std::string& poly, const std::vector<std::complex<double>>& point, double tol) {
        return to_json(gws_witness(parse_poly(poly), point, tol));
      },
      py::arg("poly"), py::arg("point"), py::arg("tol") = kDefaultTol);
  m.def(
      "survey",
      [](int n, std::uint64_t symbol_budget, std::uint64_t budget, int products, std::uint64_t seed, double tol) {
        SurveyOptions opts;
        opts.symbol_budget = symbol_budget;
        opts.product_budget = budget;
        opts.product_count = products;
        opts.seed = seed;
        opts.tol = tol;
        py::gil_scoped_release release;
        return to_json(verify_equivalence(n, opts));
      },
      py::arg("n"), py::arg("symbol_budget") = 100000, py::arg("budget") = kDefaultBudget, py::arg("products") = 200,
      py::arg("seed") = 0, py::arg("tol") = kDefaultTol);
}
