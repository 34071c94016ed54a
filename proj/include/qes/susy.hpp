#pragma once

// Superpotential construction for two-level quasi-exactly solvable models.
//
// Given a generating function W+ whose real part has a single simple zero at
// x0, the pair
//
//   W  = (W+ - Q) / 2,   W1 = (W+ + Q) / 2,   Q = (W+' - eps) / W+
//
// satisfies W^2 + W' = W1^2 - W1' + eps, so H+ = -d^2/dx^2 + W^2 - W' has the
// eigenvalues 0 and eps. When Im W+(x0) != 0 (Type1) eps is free; when
// W+(x0) = 0 (Type2) eps is forced to W+'(x0) and Q has a removable
// singularity at x0 that is evaluated from a Taylor expansion.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "qes/expr.hpp"
#include "qes/jet.hpp"

namespace qes {

using WPlusFn = std::function<Jet4(double)>;
using JetFn = std::function<Jet2(double)>;
using ComplexFn = std::function<cplx(double)>;
using RealFn = std::function<double(double)>;

/// Relative tolerance for "is zero" decisions at x0, scaled by `scale()`.
inline constexpr double kZeroTol = 1e-10;
/// Guard window for the Type2 removable singularity: |W+(x)| < kGuard * scale.
inline constexpr double kGuard = 1e-6;

class GeneratingFunction {
 public:
  /// Checks Re W+(x0) = 0, Re W+'(x0) > 0 (simple, increasing zero).
  GeneratingFunction(WPlusFn wplus, double x0);

  static GeneratingFunction from_expression(const Expr& e, double x0);

  Jet4 operator()(double x) const { return wplus_(x); }
  Jet2 jet(double x) const { return wplus_(x).truncate<2>(); }
  double x0() const { return x0_; }
  /// max(1, |W+'(x0)|); all relative tolerances at x0 reference it.
  double scale() const { return scale_; }
  const WPlusFn& function() const { return wplus_; }

 private:
  WPlusFn wplus_;
  double x0_;
  double scale_;
};

struct Type1 {
  double g_at_x0;  // Im W+(x0), nonzero
};
struct Type2 {
  double eps_forced;  // Re W+'(x0)
};
using ZeroClass = std::variant<Type1, Type2>;

inline bool is_type2(const ZeroClass& z) { return std::holds_alternative<Type2>(z); }
std::string zero_class_name(const ZeroClass& z);

ZeroClass classify_zero(const GeneratingFunction& gen);

/// Immutable (W, W1, eps) bundle; cheap to copy.
class SuperpotentialPair {
 public:
  Jet2 W(double x) const;
  Jet2 W1(double x) const;
  /// W- = W1 - W = (W+' - eps) / W+.
  Jet2 Wminus(double x) const;
  Jet2 Wplus(double x) const { return gen_.jet(x); }

  double eps() const { return eps_; }
  double x0() const { return gen_.x0(); }
  const ZeroClass& zero_class() const { return class_; }
  const GeneratingFunction& generator() const { return gen_; }

  JetFn w_fn() const;
  JetFn w1_fn() const;

 private:
  friend SuperpotentialPair build_pair(GeneratingFunction, std::optional<double>);
  SuperpotentialPair(GeneratingFunction gen, double eps, ZeroClass cls);

  GeneratingFunction gen_;
  double eps_;
  ZeroClass class_;
  Jet4 at_x0_;
};

/// Type1 requires an explicit eps > 0; Type2 accepts no eps or the forced one.
SuperpotentialPair build_pair(GeneratingFunction gen, std::optional<double> eps_choice);

struct RealImagSplit {
  double x0;
  RealFn f, g, f1, g1;
  RealFn f_plus, g_plus, f_minus, g_minus;
};

RealImagSplit split_real_imag(const SuperpotentialPair& pair);

/// W^2 + W' - (W1^2 - W1' + eps).
cplx constraint_residual(const SuperpotentialPair& pair, double x);

class PartnerPotentials {
 public:
  explicit PartnerPotentials(SuperpotentialPair pair) : pair_(std::move(pair)) {}

  cplx plus(double x) const;   // W^2 - W'
  cplx minus(double x) const;  // W^2 + W'
  /// W1^2 - W1'; equals minus(x) - eps.
  cplx partner1_plus(double x) const;

  // Real/imaginary parts assembled from f, g: f^2 - g^2 -/+ f', 2fg -/+ g'.
  double plus_re(double x) const;
  double plus_im(double x) const;
  double minus_re(double x) const;
  double minus_im(double x) const;

  ComplexFn plus_fn() const;
  ComplexFn minus_fn() const;
  const SuperpotentialPair& pair() const { return pair_; }

 private:
  SuperpotentialPair pair_;
};

PartnerPotentials partner_potentials(const SuperpotentialPair& pair);

/// A psi = psi' + W psi.
cplx apply_A(const JetFn& W, double x, cplx psi, cplx dpsi);
/// Abar psi = -psi' + W psi.
cplx apply_Abar(const JetFn& W, double x, cplx psi, cplx dpsi);

/// sup over xs of |conj(V(2 x0 - x)) - V(x)|.
double pt_defect(const ComplexFn& V, double x0, std::span<const double> xs);

struct SignReport {
  bool f_ok = false;
  bool f1_ok = false;
};

/// sgn f(x0 +- x_max) = +-1 and likewise for f1. Finite-x heuristic only.
SignReport asymptotic_sign_check(const RealImagSplit& split, double x_max);

}  // namespace qes
