#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qes/expr.hpp"

namespace qes::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

inline cplx fd1(const std::function<cplx(double)>& f, double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }
inline cplx fd2(const std::function<cplx(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Random expression trees built directly through the Expr builders.
inline Expr random_expr(Rng& rng, int depth) {
  if (depth <= 0 || uniform_int(rng, 0, 9) < 2) {
    switch (uniform_int(rng, 0, 3)) {
      case 0:
      case 1: return Expr::variable();
      case 2: return Expr::literal(std::round(uniform(rng, -3.0, 3.0) * 4.0) / 4.0);
      default: return Expr::imag_unit();
    }
  }
  switch (uniform_int(rng, 0, 8)) {
    case 0: return Expr::neg(random_expr(rng, depth - 1));
    case 1: {
      static constexpr Func fs[] = {Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh, Func::Tanh, Func::Sqrt};
      return Expr::call(fs[uniform_int(rng, 0, 6)], random_expr(rng, depth - 1));
    }
    case 2: {
      static constexpr double exps[] = {2.0, 3.0, -1.0, 0.5, 1.5, -2.0};
      return Expr::power(random_expr(rng, depth - 1), exps[uniform_int(rng, 0, 5)]);
    }
    case 3: return Expr::binary(NodeKind::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::binary(NodeKind::Div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5:
    case 6: return Expr::binary(NodeKind::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return Expr::binary(NodeKind::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

// Type-1 generating functions as source text: Re part odd and increasing about
// x0, Im part nonzero at x0.
inline std::string random_type1_source(Rng& rng, double& x0) {
  x0 = std::round(uniform(rng, -1.0, 1.0) * 8.0) / 8.0;
  const std::string u = "(x - (" + std::to_string(x0) + "))";
  const double a = uniform(rng, 0.5, 3.0), b = uniform(rng, 0.0, 0.5), c = uniform(rng, 0.3, 2.0);
  const double d = uniform(rng, 0.0, 0.25) * c, s = uniform_int(rng, 0, 1) ? 1.0 : -1.0;
  const auto n = [](double v) { return "(" + std::to_string(v) + ")"; };
  switch (uniform_int(rng, 0, 3)) {
    case 0: return n(a) + "*" + u + " + " + n(b) + "*" + u + "^3 + i*" + n(s * c);
    case 1: return n(a) + "*sinh(" + n(0.5 + b) + "*" + u + ") + i*(" + n(s * c) + " + " + n(d) + "*" + u + "^2)";
    case 2: return n(a) + "*" + u + " + i*(" + n(s * c) + " + " + n(s * d) + "*cos(" + u + "))";
    default: return n(a) + "*" + u + " + " + n(b) + "*tanh(" + u + ") + i*" + n(s * c) + "*cosh(" + n(0.3 * b) + "*" + u + ")";
  }
}

}  // namespace qes::testing
