#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "contnum/acceptance.hpp"
#include "contnum/engine.hpp"
#include "contnum/error.hpp"
#include "contnum/formula.hpp"
#include "contnum/numerals.hpp"
#include "contnum/structures.hpp"

namespace py = pybind11;
using namespace contnum;

namespace {

py::dict enclosure_dict(const Enclosure& e) {
  py::dict d;
  d["lo"] = e.lo().str();
  d["hi"] = e.hi().str();
  return d;
}

std::vector<FiniteMetricSpace> spaces(const std::vector<std::string>& files, std::uint64_t seed) {
  if (files.empty()) return builtin_suite(seed);
  std::vector<FiniteMetricSpace> out;
  for (const auto& f : files) out.push_back(load_space_file(f));
  return out;
}

}  // namespace

PYBIND11_MODULE(_contnum, m) {
  m.doc() = "Numerals for reals in continuous logic";

  // Kept for the life of the interpreter; instances carry the error code.
  static PyObject* error_type = py::exception<Error>(m, "ContnumError").inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "dyadic_numeral",
      [](const std::string& value, const std::string& flavor) {
        return serialize(dyadic_numeral(Dyadic::parse(value), parse_flavor(flavor)));
      },
      py::arg("value"), py::arg("flavor") = "exists", "Formula code of the numeral of a dyadic in [0, 1].");

  m.def(
      "build", [](const std::string& recipe) { return serialize(build_numeral(NumeralRecipe::parse(recipe))); },
      py::arg("recipe"), "Formula code of the numeral built from a recipe.");

  m.def(
      "classify", [](const std::string& code) { return classify(parse_formula(code)).str(); }, py::arg("code"));

  m.def(
      "free_vars", [](const std::string& code) { return free_vars(parse_formula(code)); }, py::arg("code"));

  m.def("suite_names", [](std::uint64_t seed) {
    std::vector<std::string> out;
    for (const auto& s : builtin_suite(seed)) out.push_back(s.name);
    return out;
  }, py::arg("seed") = 1);

  m.def(
      "evaluate",
      [](const std::string& code, const std::vector<std::string>& structures, std::size_t depth, std::uint64_t seed) {
        const Formula f = parse_formula(code);
        py::list rows;
        for (const auto& s : spaces(structures, seed)) {
          Evaluator ev(s, TruncationSchedule::nested(depth));
          py::dict row = enclosure_dict(ev.enclosure(f));
          row["space"] = s.name;
          rows.append(row);
        }
        return rows;
      },
      py::arg("code"), py::arg("structures") = std::vector<std::string>{}, py::arg("depth") = 256,
      py::arg("seed") = 1,
      "Enclosure of a sentence on each structure (default: the builtin suite) as "
      "dicts with 'space', 'lo' and 'hi'.");

  m.def(
      "verify",
      [](const std::string& recipe, std::size_t depth, unsigned tol, std::uint64_t seed) {
        VerifyOptions o;
        o.depth = depth;
        o.tolerance_bits = tol;
        o.seed = seed;
        const VerifyResult r = verify_recipe(NumeralRecipe::parse(recipe), o);
        py::dict d;
        d["recipe"] = r.recipe;
        d["code"] = r.code;
        d["passed"] = r.passed;
        d["independent"] = r.independence.all_agree;
        d["classification"] = r.classification.actual ? r.classification.actual->str() : "";
        d["classification_ok"] = r.classification.pass;
        d["monotone"] = r.convergence.monotone;
        d["sound"] = r.convergence.sound;
        d["within_tolerance"] = r.within_tolerance ? py::object(py::bool_(*r.within_tolerance)) : py::none();
        py::list rows;
        for (const auto& row : r.convergence.rows) {
          py::dict e = enclosure_dict(row.enclosure);
          e["depth"] = row.depth;
          rows.append(e);
        }
        d["convergence"] = rows;
        d["notes"] = r.notes;
        return d;
      },
      py::arg("recipe"), py::arg("depth") = 256, py::arg("tol") = 6, py::arg("seed") = 1);

  m.def(
      "run_acceptance",
      [](const std::vector<int>& only, std::uint64_t seed) {
        AcceptanceOptions o;
        o.seed = seed;
        o.only.insert(only.begin(), only.end());
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = contnum::run_acceptance(o);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = std::vector<int>{}, py::arg("seed") = 1);
}
