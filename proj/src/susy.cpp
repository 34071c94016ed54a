#include "qes/susy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qes {

GeneratingFunction::GeneratingFunction(WPlusFn wplus, double x0) : wplus_(std::move(wplus)), x0_(x0) {
  if (!wplus_) throw ConstructionError("generating function is empty");
  if (!std::isfinite(x0)) throw ConstructionError("x0 must be finite");
  const Jet4 j = wplus_(x0);
  scale_ = std::max(1.0, std::abs(j[1]));
  const double f = j[0].real();
  const double fp = j[1].real();
  if (std::abs(f) > kZeroTol * scale_) {
    std::ostringstream os;
    os << "Re W+(x0) = " << f << " is not zero at x0 = " << x0;
    throw ConstructionError(os.str());
  }
  if (std::abs(fp) < kZeroTol * scale_) throw ConstructionError("zero of Re W+ at x0 is not simple");
  if (fp < 0.0)
    throw ConstructionError("Re W+ must increase through x0 so that sgn Re W+(+-inf) = +-1");
}

GeneratingFunction GeneratingFunction::from_expression(const Expr& e, double x0) {
  return GeneratingFunction([e](double x) { return e.eval<4>(x); }, x0);
}

std::string zero_class_name(const ZeroClass& z) { return is_type2(z) ? "Type2" : "Type1"; }

ZeroClass classify_zero(const GeneratingFunction& gen) {
  const Jet4 j = gen(gen.x0());
  const double scale = gen.scale();
  if (std::abs(j[1].real()) < kZeroTol * scale) throw ConstructionError("zero of Re W+ at x0 is not simple");
  const double g = j[0].imag();
  if (std::abs(g) > kZeroTol * scale) return Type1{g};
  // W+(x0) = 0: Q = (W+' - eps)/W+ stays finite only if W+'(x0) = eps exactly,
  // which needs a real derivative there.
  if (std::abs(j[1].imag()) > kZeroTol * scale)
    throw ConstructionError("W+(x0) = 0 but Im W+'(x0) != 0; the pole at x0 cannot be removed");
  const double eps = j[1].real();
  if (eps <= 0.0) throw ConstructionError("Type2 requires eps = W+'(x0) > 0");
  return Type2{eps};
}

SuperpotentialPair build_pair(GeneratingFunction gen, std::optional<double> eps_choice) {
  const ZeroClass cls = classify_zero(gen);
  double eps = 0.0;
  if (const auto* t2 = std::get_if<Type2>(&cls)) {
    if (eps_choice && std::abs(*eps_choice - t2->eps_forced) > 1e-12 * gen.scale()) {
      std::ostringstream os;
      os.precision(17);
      os << "W+(x0) = 0 forces eps = W+'(x0) = " << t2->eps_forced << ", got " << *eps_choice;
      throw ConstructionError(os.str());
    }
    eps = t2->eps_forced;
  } else {
    if (!eps_choice) throw ConstructionError("Im W+(x0) != 0: eps is free and must be supplied");
    if (!std::isfinite(*eps_choice) || *eps_choice <= 0.0) throw ConstructionError("eps must be > 0");
    eps = *eps_choice;
  }
  return SuperpotentialPair(std::move(gen), eps, cls);
}

SuperpotentialPair::SuperpotentialPair(GeneratingFunction gen, double eps, ZeroClass cls)
    : gen_(std::move(gen)), eps_(eps), class_(cls), at_x0_(gen_(gen_.x0())) {}

Jet2 SuperpotentialPair::Wminus(double x) const {
  const Jet4 p = gen_(x);
  const double scale = gen_.scale();
  const double mod = std::abs(p[0]);
  if (is_type2(class_) && mod < kGuard * scale) {
    const double t = x - gen_.x0();
    if (std::abs(t) * std::abs(at_x0_[1]) > 2.0 * kGuard * scale)
      throw EvalError("W+ vanishes away from x0 at x = " + std::to_string(x));
    // (W+' - eps)/W+ with both numerator and denominator divided by t.
    const Jet4& w = at_x0_;
    const Jet2 num = Jet2::from_derivatives(
        {w[2] + w[3] * t / 2.0 + w[4] * t * t / 6.0, w[3] / 2.0 + w[4] * t / 3.0, w[4] / 3.0});
    const Jet2 den = Jet2::from_derivatives({w[1] + w[2] * t / 2.0 + w[3] * t * t / 6.0 + w[4] * t * t * t / 24.0,
                                             w[2] / 2.0 + w[3] * t / 3.0 + w[4] * t * t / 8.0,
                                             w[3] / 3.0 + w[4] * t / 4.0});
    return num / den;
  }
  if (mod <= kZeroTol * scale) throw EvalError("W+ vanishes at x = " + std::to_string(x));
  const Jet2 num = Jet2::from_derivatives({p[1] - eps_, p[2], p[3]});
  const Jet2 den = Jet2::from_derivatives({p[0], p[1], p[2]});
  return num / den;
}

Jet2 SuperpotentialPair::W(double x) const {
  Jet2 r = gen_.jet(x) - Wminus(x);
  return r *= 0.5;
}

Jet2 SuperpotentialPair::W1(double x) const {
  Jet2 r = gen_.jet(x) + Wminus(x);
  return r *= 0.5;
}

JetFn SuperpotentialPair::w_fn() const {
  return [self = *this](double x) { return self.W(x); };
}

JetFn SuperpotentialPair::w1_fn() const {
  return [self = *this](double x) { return self.W1(x); };
}

RealImagSplit split_real_imag(const SuperpotentialPair& pair) {
  RealImagSplit s;
  s.x0 = pair.x0();
  s.f = [pair](double x) { return pair.W(x).v().real(); };
  s.g = [pair](double x) { return pair.W(x).v().imag(); };
  s.f1 = [pair](double x) { return pair.W1(x).v().real(); };
  s.g1 = [pair](double x) { return pair.W1(x).v().imag(); };
  s.f_plus = [pair](double x) { return pair.Wplus(x).v().real(); };
  s.g_plus = [pair](double x) { return pair.Wplus(x).v().imag(); };
  s.f_minus = [pair](double x) { return pair.Wminus(x).v().real(); };
  s.g_minus = [pair](double x) { return pair.Wminus(x).v().imag(); };
  return s;
}

cplx constraint_residual(const SuperpotentialPair& pair, double x) {
  const Jet2 w = pair.W(x);
  const Jet2 w1 = pair.W1(x);
  return w.v() * w.v() + w.d1() - (w1.v() * w1.v() - w1.d1() + pair.eps());
}

cplx PartnerPotentials::plus(double x) const {
  const Jet2 w = pair_.W(x);
  return w.v() * w.v() - w.d1();
}

cplx PartnerPotentials::minus(double x) const {
  const Jet2 w = pair_.W(x);
  return w.v() * w.v() + w.d1();
}

cplx PartnerPotentials::partner1_plus(double x) const {
  const Jet2 w1 = pair_.W1(x);
  return w1.v() * w1.v() - w1.d1();
}

double PartnerPotentials::plus_re(double x) const {
  const Jet2 w = pair_.W(x);
  const double f = w.v().real(), g = w.v().imag();
  return f * f - g * g - w.d1().real();
}

double PartnerPotentials::plus_im(double x) const {
  const Jet2 w = pair_.W(x);
  return 2.0 * w.v().real() * w.v().imag() - w.d1().imag();
}

double PartnerPotentials::minus_re(double x) const {
  const Jet2 w = pair_.W(x);
  const double f = w.v().real(), g = w.v().imag();
  return f * f - g * g + w.d1().real();
}

double PartnerPotentials::minus_im(double x) const {
  const Jet2 w = pair_.W(x);
  return 2.0 * w.v().real() * w.v().imag() + w.d1().imag();
}

ComplexFn PartnerPotentials::plus_fn() const {
  return [self = *this](double x) { return self.plus(x); };
}

ComplexFn PartnerPotentials::minus_fn() const {
  return [self = *this](double x) { return self.minus(x); };
}

PartnerPotentials partner_potentials(const SuperpotentialPair& pair) { return PartnerPotentials(pair); }

cplx apply_A(const JetFn& W, double x, cplx psi, cplx dpsi) { return dpsi + W(x).v() * psi; }

cplx apply_Abar(const JetFn& W, double x, cplx psi, cplx dpsi) { return -dpsi + W(x).v() * psi; }

double pt_defect(const ComplexFn& V, double x0, std::span<const double> xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(std::conj(V(2.0 * x0 - x)) - V(x)));
  return worst;
}

SignReport asymptotic_sign_check(const RealImagSplit& split, double x_max) {
  const double right = split.x0 + x_max;
  const double left = split.x0 - x_max;
  SignReport r;
  r.f_ok = split.f(right) > 0.0 && split.f(left) < 0.0;
  r.f1_ok = split.f1(right) > 0.0 && split.f1(left) < 0.0;
  return r;
}

}  // namespace qes
