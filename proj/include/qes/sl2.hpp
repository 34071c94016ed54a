#pragma once

// Polynomial-space operators for the hidden sl(2) structure of the m = 1
// quartic case. Operators are (D+1)x(D+1) matrices on monomials {1, z, ..., z^D}
// with M(i, j) = coefficient of z^i in Op(z^j); anything pushed above z^D is
// dropped, so a matrix is exact only for inputs up to `faithful_degree()`.

#include <algorithm>
#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "qes/errors.hpp"

namespace qes {

using cplx = std::complex<double>;

class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}
  static CPoly monomial(int degree, cplx coef = 1.0);

  /// Highest index with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : 0.0; }
  /// Value, first and second derivative at z (Horner).
  std::array<cplx, 3> eval(cplx z) const;

 private:
  std::vector<cplx> c_;
};

class PolyOperator {
 public:
  /// Zero operator on degrees 0..D; `raise` is the largest degree increase.
  PolyOperator(int D, int raise = 0, double N = 0.0);

  int max_degree() const { return D_; }
  int raise() const { return raise_; }
  int faithful_degree() const { return D_ - raise_; }
  double label() const { return N_; }

  cplx& at(int i, int j) { return m_[idx(i, j)]; }
  cplx at(int i, int j) const { return m_[idx(i, j)]; }

  /// Throws ConstructionError if p's degree exceeds faithful_degree().
  CPoly apply(const CPoly& p) const;

  PolyOperator operator*(const PolyOperator& o) const;
  PolyOperator operator+(const PolyOperator& o) const;
  PolyOperator operator-(const PolyOperator& o) const;
  PolyOperator operator*(cplx s) const;
  friend PolyOperator operator*(cplx s, const PolyOperator& p) { return p * s; }

  static PolyOperator identity(int D);

 private:
  std::size_t idx(int i, int j) const;

  int D_;
  int raise_;
  double N_;
  std::vector<cplx> m_;
};

PolyOperator commutator(const PolyOperator& p, const PolyOperator& q);

struct Sl2Generators {
  PolyOperator plus;   // z^2 d/dz - N z
  PolyOperator zero;   // z d/dz - N/2
  PolyOperator minus;  // d/dz
};

Sl2Generators sl2_generators(double N, int D);

/// T = -a^(-2) (1 - i b z)^4 d^2/dz^2 + a z d/dz on monomials up to z^D (D >= 6).
PolyOperator t_operator_matrix(double a, double b, int D = 8);

/// a^(-2) (-b^4 J+^2 - 4 i b^3 J+ J0 + 6 b^2 J+ J- + 4 i b J0 J- - J-^2
///         - 2 i b^3 J+ + 6 b^2 J0 + 2 i b J- + 3 b^2) + a J0 + a/2, with N = 1.
/// The bracket alone reproduces only the second-order part of T; the first-order
/// part a z d/dz equals a J0 + a/2 on the N = 1 module.
PolyOperator quadratic_combination_matrix(double a, double b, int D = 8);
/// The bracketed a^(-2)(...) part only.
PolyOperator quadratic_bracket_matrix(double a, double b, int D = 8);

struct OperatorComparison {
  bool equal = false;
  double max_discrepancy = 0.0;
};

/// Compares columns 0..input_degree (all rows).
OperatorComparison operator_equal(const PolyOperator& p, const PolyOperator& q, int input_degree, double tol);

struct CommutatorCheck {
  double j0_plus = 0.0;          // max |[J0, J+] - J+|
  double j0_minus = 0.0;         // max |[J0, J-] + J-|
  double plus_minus = 0.0;       // max |[J+, J-] + 2 J0|, the relation these generators satisfy
  double plus_minus_flip = 0.0;  // max |[J+, J-] - 2 J0|, the opposite sign convention
  double max() const { return std::max({j0_plus, j0_minus, plus_minus}); }
};

/// Entrywise deviations over inputs of degree <= D - 2.
CommutatorCheck check_commutators(double N, int D = 8);

struct BlockSpectrum {
  std::array<cplx, 2> eigenvalues;  // ascending by real part
  double leakage = 0.0;             // max modulus of entries mapping span{1, z} outside itself
};

/// Eigenvalues of the operator restricted to span{1, z}.
BlockSpectrum two_dim_block_spectrum(const PolyOperator& op);

/// Value, first and second derivative of phi at a complex point.
using ComplexJetFn = std::function<std::array<cplx, 3>(cplx)>;

/// T phi(z) = -a^(-2/(2m-1)) (1 - i b z^(2m-1))^(4m/(2m-1)) phi'' + a z phi', principal branch.
/// Throws EvalError when 1 - i b z^(2m-1) is on or within 1e-12 of the branch cut.
cplx t_apply_pointwise(int m, double a, double b, const ComplexJetFn& phi, cplx z);

}  // namespace qes
