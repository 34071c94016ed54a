#pragma once

// Closed-form reference models used to cross-check the generic pipeline.
//
//   oscillator:  W+ = a x + i b x^(2m)      (x0 = 0)
//   hyperbolic:  W+ = A sinh(alpha x) + i B (x0 = 0)

#include <optional>
#include <string>

#include "qes/susy.hpp"

namespace qes {

class OscillatorFamily {
 public:
  /// m >= 1: eps is forced to a (pass nothing or a). m = 0: only a = 2 is
  /// supported (the PT oscillator presentation) and eps must be given.
  static OscillatorFamily make(int m, double a, double b, std::optional<double> eps = std::nullopt);
  /// m = 0 presentation: a = 2, b = -2c, eps = 4 alpha.
  static OscillatorFamily pt_oscillator(double alpha, double c);

  int m() const { return m_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double eps() const { return eps_; }
  double alpha() const { return eps_ / 4.0; }  // m = 0 only
  double c() const { return -b_ / 2.0; }       // m = 0 only

  cplx potential(double x) const;
  /// Closed-form eigenstate, level 0 or 1. Requires m >= 1.
  cplx psi(double x, int level) const;
  /// z = x (a + i b x^(2m-1))^(-1/(2m-1)). Requires m >= 1.
  cplx z(double x) const;

  GeneratingFunction generating_function() const;
  double default_half_width() const { return 8.0; }
  std::string describe() const;

 private:
  OscillatorFamily(int m, double a, double b, double eps) : m_(m), a_(a), b_(b), eps_(eps) {}
  cplx base(double x) const;  // a + i b x^(2m-1)

  int m_;
  double a_;
  double b_;
  double eps_;
};

enum class HyperbolicRegime { Zero, Below, Equal, Above };  // B = 0, B^2 < A^2, B^2 = A^2, B^2 > A^2

const char* regime_name(HyperbolicRegime r);

class HyperbolicFamily {
 public:
  /// B = 0 forces eps = A alpha (pass nothing or that value); otherwise eps > 0
  /// must be given.
  static HyperbolicFamily make(double A, double alpha, double B, std::optional<double> eps = std::nullopt);

  double A() const { return A_; }
  double alpha() const { return alpha_; }
  double B() const { return B_; }
  double eps() const { return eps_; }
  HyperbolicRegime regime() const { return regime_; }
  double nu() const;     // sqrt(A^2 - B^2), regime Below/Zero
  double mu() const;     // sqrt(B^2 - A^2), regime Above
  double delta() const;  // sgn B

  cplx potential(double x) const;
  cplx psi(double x, int level) const;

  GeneratingFunction generating_function() const;
  /// Half-width where (A / 2 alpha) cosh(alpha L) reaches 40, at least 6 / alpha.
  double default_half_width() const;
  std::string describe() const;

 private:
  HyperbolicFamily(double A, double alpha, double B, double eps, HyperbolicRegime r)
      : A_(A), alpha_(alpha), B_(B), eps_(eps), regime_(r) {}

  double A_;
  double alpha_;
  double B_;
  double eps_;
  HyperbolicRegime regime_;
};

inline GeneratingFunction as_generating_function(const OscillatorFamily& f) { return f.generating_function(); }
inline GeneratingFunction as_generating_function(const HyperbolicFamily& f) { return f.generating_function(); }

}  // namespace qes
