#include "qes/families.hpp"

#include <cmath>
#include <sstream>

namespace qes {

namespace {

constexpr cplx I(0.0, 1.0);

// k-th derivative of x^p at x.
cplx monomial_derivative(int p, int k, double x) {
  if (k > p) return 0.0;
  double coef = 1.0;
  for (int j = 0; j < k; ++j) coef *= static_cast<double>(p - j);
  return coef * ipow(cplx(x), p - k);
}

}  // namespace

// ---------------------------------------------------------------- oscillator

OscillatorFamily OscillatorFamily::make(int m, double a, double b, std::optional<double> eps) {
  if (m < 0) throw ConstructionError("oscillator family requires m >= 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw ConstructionError("oscillator family requires a > 0");
  if (!std::isfinite(b)) throw ConstructionError("oscillator family requires finite b");
  if (m == 0) {
    if (std::abs(a - 2.0) > 1e-12)
      throw ConstructionError("m = 0 is supported in the PT-oscillator presentation only (a = 2)");
    if (!eps) throw ConstructionError("m = 0 requires eps (= 4 alpha)");
    if (!(*eps > 0.0)) throw ConstructionError("m = 0 requires eps = 4 alpha > 0");
    if (b == 0.0 && std::abs(*eps - a) > 1e-12)
      throw ConstructionError("c = 0 forces alpha = 1/2 (eps = 2); otherwise the core sits on the real line");
    return OscillatorFamily(0, a, b, *eps);
  }
  if (eps && std::abs(*eps - a) > 1e-12 * std::max(1.0, a))
    throw ConstructionError("m >= 1 forces eps = W+'(0) = a");
  return OscillatorFamily(m, a, b, a);
}

OscillatorFamily OscillatorFamily::pt_oscillator(double alpha, double c) {
  if (!(alpha > 0.0)) throw ConstructionError("PT oscillator requires alpha > 0");
  return make(0, 2.0, -2.0 * c, 4.0 * alpha);
}

cplx OscillatorFamily::base(double x) const { return a_ + I * b_ * ipow(cplx(x), 2 * m_ - 1); }

cplx OscillatorFamily::potential(double x) const {
  if (m_ == 0) {
    const cplx u = x - I * c();
    const double al = alpha();
    const double numer = al * al - 0.25;
    return u * u + 2.0 * (al - 1.0) + (numer == 0.0 ? cplx(0.0) : numer / (u * u));
  }
  const double m = m_;
  const cplx X(x);
  cplx v = -b_ * b_ * ipow(X, 4 * m_) + 2.0 * I * a_ * b_ * ipow(X, 2 * m_ + 1) -
           8.0 * m * I * b_ * ipow(X, 2 * m_ - 1) + a_ * a_ * x * x - 2.0 * a_;
  if (m_ >= 2) {
    const cplx d = base(x);
    const cplx tail = 4.0 * m * (m - 1.0) * I * b_ * ipow(X, 2 * m_ - 3);
    v += tail / d + tail * a_ / (d * d);
  }
  return 0.25 * v;
}

cplx OscillatorFamily::psi(double x, int level) const {
  if (m_ < 1) throw ConstructionError("closed-form eigenstates are provided for m >= 1");
  if (level != 0 && level != 1) throw ConstructionError("level must be 0 or 1");
  const double q = 2.0 * m_ - 1.0;
  const cplx envelope =
      std::exp(-0.25 * a_ * x * x - I * b_ / (2.0 * (2.0 * m_ + 1.0)) * ipow(cplx(x), 2 * m_ + 1));
  if (level == 0) return std::pow(base(x), m_ / q) * envelope;
  return x * std::pow(base(x), (m_ - 1.0) / q) * envelope;
}

cplx OscillatorFamily::z(double x) const {
  if (m_ < 1) throw ConstructionError("z(x) is defined for m >= 1");
  return x * std::pow(base(x), -1.0 / (2.0 * m_ - 1.0));
}

GeneratingFunction OscillatorFamily::generating_function() const {
  const int p = 2 * m_;
  const double a = a_, b = b_;
  return GeneratingFunction(
      [p, a, b](double x) {
        Jet4 j;
        for (int k = 0; k <= 4; ++k) j[k] = I * b * monomial_derivative(p, k, x);
        j[0] += a * x;
        j[1] += a;
        return j;
      },
      0.0);
}

std::string OscillatorFamily::describe() const {
  std::ostringstream os;
  os << "oscillator m=" << m_ << " a=" << a_ << " b=" << b_ << " eps=" << eps_;
  return os.str();
}

// ---------------------------------------------------------------- hyperbolic

const char* regime_name(HyperbolicRegime r) {
  switch (r) {
    case HyperbolicRegime::Zero: return "B=0";
    case HyperbolicRegime::Below: return "0<B^2<A^2";
    case HyperbolicRegime::Equal: return "B^2=A^2";
    case HyperbolicRegime::Above: return "B^2>A^2";
  }
  return "?";
}

HyperbolicFamily HyperbolicFamily::make(double A, double alpha, double B, std::optional<double> eps) {
  if (!(A > 0.0) || !(alpha > 0.0)) throw ConstructionError("hyperbolic family requires A > 0 and alpha > 0");
  if (!std::isfinite(A) || !std::isfinite(alpha) || !std::isfinite(B))
    throw ConstructionError("hyperbolic family requires finite parameters");
  if (B == 0.0) {
    const double forced = A * alpha;
    if (eps && std::abs(*eps - forced) > 1e-12 * std::max(1.0, forced))
      throw ConstructionError("B = 0 forces eps = A alpha");
    return HyperbolicFamily(A, alpha, B, forced, HyperbolicRegime::Zero);
  }
  if (!eps || !(*eps > 0.0)) throw ConstructionError("B != 0 requires eps > 0");
  HyperbolicRegime r;
  if (std::abs(B * B - A * A) < 1e-12 * A * A)
    r = HyperbolicRegime::Equal;
  else if (B * B < A * A)
    r = HyperbolicRegime::Below;
  else
    r = HyperbolicRegime::Above;
  return HyperbolicFamily(A, alpha, B, *eps, r);
}

double HyperbolicFamily::nu() const {
  if (regime_ != HyperbolicRegime::Below && regime_ != HyperbolicRegime::Zero)
    throw ConstructionError("nu is defined for B^2 < A^2");
  return std::sqrt(A_ * A_ - B_ * B_);
}

double HyperbolicFamily::mu() const {
  if (regime_ != HyperbolicRegime::Above) throw ConstructionError("mu is defined for B^2 > A^2");
  return std::sqrt(B_ * B_ - A_ * A_);
}

double HyperbolicFamily::delta() const { return B_ > 0.0 ? 1.0 : (B_ < 0.0 ? -1.0 : 0.0); }

cplx HyperbolicFamily::potential(double x) const {
  const double s = std::sinh(alpha_ * x), c = std::cosh(alpha_ * x);
  cplx v = A_ * A_ * s * s - 4.0 * A_ * alpha_ * c + 2.0 * eps_ + alpha_ * alpha_ - B_ * B_ + 2.0 * I * A_ * B_ * s;
  // With B = 0 the numerator is exactly zero (eps = A alpha); skip the 0/0 at x = 0.
  if (regime_ != HyperbolicRegime::Zero) {
    const double numer = eps_ * eps_ - alpha_ * alpha_ * (A_ * A_ - B_ * B_);
    const cplx w = A_ * s + I * B_;
    v += numer / (w * w);
  }
  return 0.25 * v;
}

cplx HyperbolicFamily::psi(double x, int level) const {
  if (level != 0 && level != 1) throw ConstructionError("level must be 0 or 1");
  const double ax = alpha_ * x;
  const double s = std::sinh(ax), c = std::cosh(ax), t = std::tanh(ax);
  const double gauss = -A_ / (2.0 * alpha_) * c;
  const double sign = level == 0 ? 1.0 : -1.0;
  switch (regime_) {
    case HyperbolicRegime::Zero:
      return (level == 0 ? std::cosh(ax / 2.0) : std::sinh(ax / 2.0)) * std::exp(gauss);
    case HyperbolicRegime::Below: {
      const double n = nu();
      const double k = eps_ / (alpha_ * n);
      const double pre = std::pow(A_ * c - n, sign * 0.25 * (1.0 - k)) * std::pow(A_ * c + n, sign * 0.25 * (1.0 + k));
      // The eps-dependent phase flips sign between the two levels, like the
      // eps-dependent modulus factor.
      const cplx phase = I * (-0.5 * B_ * x - sign * 0.5 * std::atan(A_ / B_ * s) +
                              sign * eps_ / (2.0 * alpha_ * n) * std::atan(n / B_ * t));
      const cplx out = pre * std::exp(gauss + phase);
      return level == 0 ? out : (A_ * s + I * B_) * out;
    }
    case HyperbolicRegime::Equal: {
      const double d = delta();
      const double sech = 1.0 / c;
      // -i/2 arg-type term: the B^2 < A^2 factor arctan((A/B) sinh) at A/B = delta.
      const cplx expo = gauss - 0.5 * I * d * A_ * x + sign * eps_ / (2.0 * A_ * alpha_) * (sech + I * d * t) -
                        sign * 0.5 * I * d * std::atan(s);
      if (level == 0) return std::sqrt(c) * std::exp(expo);
      return (s + I * d) * std::sqrt(sech) * std::exp(expo);
    }
    case HyperbolicRegime::Above: {
      const double u = mu();
      const double k = eps_ / (2.0 * alpha_ * u);
      const double mod = B_ * B_ + A_ * A_ * s * s;
      const cplx expo = gauss - sign * k * std::atan(A_ * c / u) - 0.5 * I * B_ * x -
                        sign * 0.5 * I * std::atan(A_ / B_ * s) + sign * I * k * std::atanh(u / B_ * t);
      if (level == 0) return std::pow(mod, 0.25) * std::exp(expo);
      return (A_ * s + I * B_) * std::pow(mod, -0.25) * std::exp(expo);
    }
  }
  return 0.0;
}

GeneratingFunction HyperbolicFamily::generating_function() const {
  const double A = A_, al = alpha_, B = B_;
  return GeneratingFunction(
      [A, al, B](double x) {
        const double s = std::sinh(al * x), c = std::cosh(al * x);
        Jet4 j;
        double scale = A;
        for (int k = 0; k <= 4; ++k) {
          j[k] = scale * (k % 2 == 0 ? s : c);
          scale *= al;
        }
        j[0] += I * B;
        return j;
      },
      0.0);
}

double HyperbolicFamily::default_half_width() const {
  const double arg = 80.0 * alpha_ / A_;
  const double reach = arg > 1.0 ? std::acosh(arg) / alpha_ : 0.0;
  return std::max(6.0 / alpha_, reach);
}

std::string HyperbolicFamily::describe() const {
  std::ostringstream os;
  os << "hyperbolic A=" << A_ << " alpha=" << alpha_ << " B=" << B_ << " eps=" << eps_ << " regime "
     << regime_name(regime_);
  return os.str();
}

}  // namespace qes
