#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qes/cli.hpp"
#include "qes/errors.hpp"
#include "qes/expr.hpp"
#include "qes/families.hpp"
#include "qes/sl2.hpp"
#include "qes/spectral.hpp"
#include "qes/susy.hpp"
#include "qes/wavefun.hpp"

namespace py = pybind11;
using namespace qes;

namespace {

using CArray = py::array_t<cplx>;

CArray sample(const ComplexFn& f, const py::array_t<double, py::array::c_style | py::array::forcecast>& xs) {
  CArray out(xs.size());
  auto o = out.mutable_unchecked<1>();
  const double* p = xs.data();
  for (py::ssize_t i = 0; i < xs.size(); ++i) o(i) = f(p[i]);
  return out;
}

py::tuple grid_values(const WavefunctionGrid& w) {
  py::array_t<double> x(static_cast<py::ssize_t>(w.grid.size()));
  CArray v(static_cast<py::ssize_t>(w.values.size()));
  auto xm = x.mutable_unchecked<1>();
  auto vm = v.mutable_unchecked<1>();
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    xm(static_cast<py::ssize_t>(i)) = w.grid.x(i);
    vm(static_cast<py::ssize_t>(i)) = w.values[i];
  }
  return py::make_tuple(x, v);
}

py::dict energy_report(const EnergyReport& rep) {
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict d;
    d["target"] = c.target;
    d["lambda"] = c.result.lambda;
    d["error"] = c.error;
    d["imag_error"] = c.imag_error;
    d["residual"] = c.result.residual;
    d["converged"] = c.result.converged;
    d["ok"] = c.ok;
    checks.append(d);
  }
  py::dict out;
  out["ok"] = rep.ok;
  out["checks"] = checks;
  return out;
}

Grid symmetric_grid(const SuperpotentialPair& p, std::optional<double> half_width, std::size_t n) {
  const double L = half_width ? *half_width : decaying_half_width(p, 8.0, 1.0);
  return Grid::symmetric(p.x0(), L, n);
}

}  // namespace

PYBIND11_MODULE(qes, m) {
  m.doc() = "SUSY partner potentials, QES eigenstates and their numerical checks";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<Expr>(m, "Expr")
      .def_static("parse", &Expr::parse, py::arg("source"))
      .def("eval", [](const Expr& e, double x) {
        const Jet2 j = e.eval_jet(x);
        return py::make_tuple(j.v(), j.d1(), j.d2());
      })
      .def("sexpr", &Expr::to_sexpr)
      .def("__str__", &Expr::to_string)
      .def("__repr__", [](const Expr& e) { return "Expr(" + e.to_string() + ")"; });
  m.def("parse", &Expr::parse, py::arg("source"));

  py::class_<SuperpotentialPair>(m, "Pair")
      .def_property_readonly("eps", &SuperpotentialPair::eps)
      .def_property_readonly("x0", &SuperpotentialPair::x0)
      .def_property_readonly("zero_class", [](const SuperpotentialPair& p) { return zero_class_name(p.zero_class()); })
      .def("W", [](const SuperpotentialPair& p, double x) { return p.W(x).v(); })
      .def("W1", [](const SuperpotentialPair& p, double x) { return p.W1(x).v(); })
      .def("Wplus", [](const SuperpotentialPair& p, double x) { return p.Wplus(x).v(); })
      .def("constraint_residual", &constraint_residual)
      .def("V_plus", [](const SuperpotentialPair& p, const py::array_t<double, py::array::c_style | py::array::forcecast>& xs) {
        return sample(PartnerPotentials(p).plus_fn(), xs);
      })
      .def("V_minus", [](const SuperpotentialPair& p, const py::array_t<double, py::array::c_style | py::array::forcecast>& xs) {
        return sample(PartnerPotentials(p).minus_fn(), xs);
      })
      .def("decaying_half_width", [](const SuperpotentialPair& p, double start, double step) {
        return decaying_half_width(p, start, step);
      }, py::arg("start") = 8.0, py::arg("step") = 1.0)
      .def("psi0", [](const SuperpotentialPair& p, std::optional<double> L, std::size_t n) {
        return grid_values(psi0(p, symmetric_grid(p, L, n)));
      }, py::arg("half_width") = py::none(), py::arg("n") = 4001)
      .def("psi1", [](const SuperpotentialPair& p, std::optional<double> L, std::size_t n) {
        return grid_values(psi1(p, symmetric_grid(p, L, n)));
      }, py::arg("half_width") = py::none(), py::arg("n") = 4001)
      .def("residuals", [](const SuperpotentialPair& p, std::optional<double> L, std::size_t n) {
        const Grid g = symmetric_grid(p, L, n);
        const auto V = PartnerPotentials(p).plus_fn();
        return py::make_tuple(schrodinger_residual(V, psi0(p, g)), schrodinger_residual(V, psi1(p, g)));
      }, py::arg("half_width") = py::none(), py::arg("n") = 4001)
      .def("verify_energies", [](const SuperpotentialPair& p, std::optional<double> L, std::size_t n) {
        const std::vector<double> targets{0.0, p.eps()};
        return energy_report(verify_energies(PartnerPotentials(p).plus_fn(), targets, symmetric_grid(p, L, n)));
      }, py::arg("half_width") = py::none(), py::arg("n") = 4801);

  m.def("pair_from_expression", [](const std::string& src, double x0, std::optional<double> eps) {
    return build_pair(GeneratingFunction::from_expression(Expr::parse(src), x0), eps);
  }, py::arg("wplus"), py::arg("x0") = 0.0, py::arg("eps") = py::none());
  m.def("oscillator", [](int mm, double a, double b, std::optional<double> eps) {
    const auto f = OscillatorFamily::make(mm, a, b, eps);
    return build_pair(f.generating_function(), f.eps());
  }, py::arg("m"), py::arg("a"), py::arg("b"), py::arg("eps") = py::none());
  m.def("pt_oscillator", [](double alpha, double c) {
    const auto f = OscillatorFamily::pt_oscillator(alpha, c);
    return build_pair(f.generating_function(), f.eps());
  }, py::arg("alpha"), py::arg("c"));
  m.def("hyperbolic", [](double A, double alpha, double B, std::optional<double> eps) {
    const auto f = HyperbolicFamily::make(A, alpha, B, eps);
    return build_pair(f.generating_function(), f.eps());
  }, py::arg("A"), py::arg("alpha"), py::arg("B"), py::arg("eps") = py::none());

  m.def("check_commutators", [](double N) {
    const auto c = check_commutators(N);
    py::dict d;
    d["j0_plus"] = c.j0_plus;
    d["j0_minus"] = c.j0_minus;
    d["plus_minus"] = c.plus_minus;
    d["plus_minus_flip"] = c.plus_minus_flip;
    return d;
  }, py::arg("N"));
  m.def("quadratic_identity", [](double a, double b) {
    return operator_equal(t_operator_matrix(a, b), quadratic_combination_matrix(a, b), 6, 0.0).max_discrepancy;
  }, py::arg("a"), py::arg("b"));
  m.def("block_spectrum", [](double a, double b) {
    const auto s = two_dim_block_spectrum(t_operator_matrix(a, b));
    return py::make_tuple(s.eigenvalues[0], s.eigenvalues[1], s.leakage);
  }, py::arg("a"), py::arg("b"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"qes"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
