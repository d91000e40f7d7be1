#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "l2alex/cli.hpp"
#include "l2alex/degree.hpp"
#include "l2alex/error.hpp"
#include "l2alex/io.hpp"
#include "l2alex/mahler.hpp"
#include "l2alex/torsion.hpp"

namespace py = pybind11;
using namespace l2alex;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& e : j) out.append(to_python(e));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_python(it.value());
      return out;
    }
    default:
      throw InputError("unsupported JSON value");
  }
}

LaurentMatrix matrix_from(const std::vector<std::vector<LaurentPoly>>& rows) {
  return LaurentMatrix::from_rows(rows);
}

QuadratureOptions options(double tol) {
  QuadratureOptions o;
  o.tol = tol;
  return o;
}

std::string poly_repr(const LaurentPoly& p) {
  std::ostringstream s;
  s << "LaurentPoly(" << to_json(p).dump() << ")";
  return s.str();
}

}  // namespace

PYBIND11_MODULE(_l2alex, m) {
  m.doc() = "Mahler measures, L2-Alexander determinant functions and torsion closed forms";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<BudgetError> budget_error(m, "BudgetError", error.ptr());
  static py::exception<DegeneracyError> degeneracy_error(m, "DegeneracyError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const BudgetError& e) {
      py::set_error(budget_error, e.what());
    } catch (const DegeneracyError& e) {
      py::set_error(degeneracy_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<LaurentPoly>(m, "LaurentPoly")
      .def(py::init([](std::size_t num_vars,
                       const std::vector<std::pair<ExponentVector, Complex>>& terms) {
             return LaurentPoly::from_terms(num_vars, terms);
           }),
           py::arg("num_vars"), py::arg("terms"),
           "Polynomial from (exponent, coefficient) pairs; repeated exponents add up.")
      .def_static("constant", &LaurentPoly::constant, py::arg("num_vars"), py::arg("c"))
      .def_static("monomial", &LaurentPoly::monomial, py::arg("exponent"), py::arg("c") = Complex(1.0))
      .def_static("variable", &LaurentPoly::variable, py::arg("num_vars"), py::arg("index"))
      .def_property_readonly("num_vars", &LaurentPoly::num_vars)
      .def_property_readonly("is_zero", &LaurentPoly::is_zero)
      .def("terms",
           [](const LaurentPoly& p) {
             std::vector<std::pair<ExponentVector, Complex>> out(p.terms().begin(), p.terms().end());
             return out;
           })
      .def("coeff", &LaurentPoly::coeff, py::arg("exponent"))
      .def("__call__",
           [](const LaurentPoly& p, const std::vector<Complex>& z) {
             return p.evaluate(std::span<const Complex>(z.data(), z.size()));
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__repr__", &poly_repr);

  py::class_<CohomClass>(m, "CohomClass")
      .def_static("from_sigma", &CohomClass::from_sigma, py::arg("sigma"))
      .def_static(
          "from_decomposition",
          [](std::vector<double> r, std::vector<std::vector<long long>> phi) {
            return CohomClass::from_decomposition(Decomposition{std::move(r), std::move(phi)});
          },
          py::arg("r"), py::arg("phi"))
      .def_property_readonly("sigma", &CohomClass::sigma)
      .def_property_readonly("has_decomposition", &CohomClass::has_decomposition)
      .def("scaled", &CohomClass::scaled, py::arg("c"))
      .def("__repr__", [](const CohomClass& c) { return "CohomClass(" + to_json(c).dump() + ")"; });

  py::class_<DetFunction>(m, "DetFunction")
      .def_property_readonly("det_poly", &DetFunction::det_poly)
      .def_property_readonly("index_divisor", &DetFunction::index_divisor)
      .def_property_readonly("exponent_bound", &DetFunction::exponent_bound)
      .def_property_readonly("is_zero", &DetFunction::is_zero)
      .def(
          "log_eval", [](const DetFunction& v, double t, double tol) { return v.log_eval(t, options(tol)); },
          py::arg("t"), py::arg("tol") = 1e-8)
      .def(
          "__call__", [](const DetFunction& v, double t, double tol) { return eval(v, t, tol); },
          py::arg("t"), py::arg("tol") = 1e-8);

  py::class_<TorsionFunction>(m, "TorsionFunction")
      .def_property_readonly("is_zero", &TorsionFunction::is_zero)
      .def("__call__", &TorsionFunction::eval, py::arg("t"), py::arg("tol") = 1e-8,
           "tau(t), or None where the function is unspecified.")
      .def("log_eval", &TorsionFunction::log_eval, py::arg("t"), py::arg("tol") = 1e-8);

  // Mahler measures.
  m.def("mahler_1v", &mahler_1v, py::arg("p"), "Jensen's formula for one variable.");
  m.def(
      "mahler_mv",
      [](const LaurentPoly& p, double tol) { return to_python(to_json(mahler_mv(p, options(tol)))); },
      py::arg("p"), py::arg("tol") = 1e-8,
      "Dict with measure, log_measure and achieved_tol.");
  m.def(
      "roots", [](const LaurentPoly& p) { return roots(p).roots; }, py::arg("p"));
  m.def("scaled_mahler_1v", &scaled_mahler_1v, py::arg("p"), py::arg("c"));

  // Determinant functions.
  m.def("determinant", [](const std::vector<std::vector<LaurentPoly>>& a) {
    return matrix_determinant(matrix_from(a));
  });
  m.def(
      "exponent_bound",
      [](const std::vector<std::vector<LaurentPoly>>& a, const CohomClass& c) {
        return exponent_bound(matrix_from(a), c);
      },
      py::arg("matrix"), py::arg("cls"));
  m.def(
      "det_function",
      [](const std::vector<std::vector<LaurentPoly>>& a, const CohomClass& c, int index_divisor) {
        return index_rescale(det_function(matrix_from(a), c), index_divisor);
      },
      py::arg("matrix"), py::arg("cls"), py::arg("index_divisor") = 1);
  m.def("geometric_grid", &geometric_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));
  m.def(
      "convexity_check",
      [](const DetFunction& v, const std::vector<double>& grid, double tol, double quad_tol) {
        return to_python(to_json(convexity_check(v, grid, tol, quad_tol)));
      },
      py::arg("v"), py::arg("grid"), py::arg("tol") = 1e-6, py::arg("quad_tol") = 1e-8);
  m.def(
      "asymptote",
      [](const DetFunction& v, double tol) { return to_python(to_json(asymptote(v, tol))); },
      py::arg("v"), py::arg("tol") = 1e-8);

  // Torsion.
  m.def(
      "torsion",
      [](const std::vector<std::vector<LaurentPoly>>& a, const CohomClass& c,
         const std::vector<MaxPair>& pairs, int index_divisor) {
        return torsion_from_presentation({matrix_from(a), c, pairs, index_divisor, ""});
      },
      py::arg("matrix"), py::arg("cls"), py::arg("pairs") = std::vector<MaxPair>{},
      py::arg("index_divisor") = 1);
  m.def(
      "torsion_degree",
      [](const TorsionFunction& f, double tol) { return to_python(to_json(torsion_degree(f, tol))); },
      py::arg("tau"), py::arg("tol") = 1e-8);
  m.def("fibered_torsion", &fibered_torsion, py::arg("h"), py::arg("x"), py::arg("t"));
  m.def("graph_torsion", &graph_torsion, py::arg("x"), py::arg("t"));
  m.def(
      "section9", [](const std::array<double, 3>& phi) { return to_python(to_json(section9(phi))); },
      py::arg("phi"));
  m.attr("V3") = kV3;

  // Documents and the command line.
  m.def(
      "parse_input",
      [](const std::string& text) {
        const InputDocument doc = parse_input(text);
        return py::make_tuple(index_rescale(det_function(doc.matrix, doc.cls), doc.index_divisor),
                              to_python(to_json(doc)));
      },
      py::arg("text"), "Returns (DetFunction, normalized document dict).");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr).");
}
