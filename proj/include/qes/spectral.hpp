#pragma once

// Finite-difference check that given energies belong to the spectrum of
// H = -d^2/dx^2 + V(x) for complex V: three-point Laplacian with Dirichlet
// truncation, shifted inverse iteration on the resulting complex-symmetric
// tridiagonal matrix.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qes/wavefun.hpp"

namespace qes {

struct TridiagonalOperator {
  std::vector<cplx> diag;  // 2/h^2 + V(x_i) at interior points
  double offdiag = 0.0;    // -1/h^2, shared by sub- and super-diagonal
  Grid grid;

  std::size_t dim() const { return diag.size(); }
  std::vector<cplx> apply(std::span<const cplx> v) const;
  /// Row-sum (infinity) norm.
  double norm_inf() const;
};

TridiagonalOperator discretize(const ComplexFn& V, const Grid& grid);

/// LU factorization of (op - shift I) with partial pivoting (row interchanges
/// give U a second superdiagonal).
class ShiftedLU {
 public:
  ShiftedLU(const TridiagonalOperator& op, cplx shift);

  /// True when a zero pivot forced the shift to be offset by 1e-8 i.
  bool retried() const { return retried_; }
  cplx shift() const { return shift_; }
  std::vector<cplx> solve(std::span<const cplx> rhs) const;

 private:
  bool factor(const TridiagonalOperator& op, cplx shift);

  cplx shift_;
  bool retried_ = false;
  std::vector<cplx> dl_, d_, du_, du2_;
  std::vector<unsigned char> swapped_;
};

/// Solves (op - shift I) u = rhs. Throws NumericalError if the factorization
/// is singular even after the imaginary offset retry.
std::vector<cplx> solve_shifted(const TridiagonalOperator& op, cplx shift, std::span<const cplx> rhs);

struct EigenResult {
  cplx lambda;
  std::vector<cplx> vector;  // max-modulus-one
  double residual = 0.0;     // ||H v - lambda v||_inf / ||v||_inf
  double backward_error = 0.0;  // residual / || |H| |v| ||_inf
  std::size_t iterations = 0;
  bool converged = false;
  bool retried = false;
};

/// Inverse iteration at a fixed shift with a non-conjugated Rayleigh quotient
/// v^T H v / v^T v. Converged when backward_error <= tol.
EigenResult inverse_iteration(const TridiagonalOperator& op, cplx shift, double tol = 1e-11,
                              std::size_t max_iter = 300);

struct EnergyCheck {
  double target = 0.0;
  cplx shift;
  EigenResult result;
  double error = 0.0;       // |lambda - target|
  double imag_error = 0.0;  // |Im lambda|
  bool ok = false;
};

struct EnergyReport {
  std::vector<EnergyCheck> checks;
  bool ok = false;
};

/// For each target t runs inverse iteration at t + 0.1 * (smallest gap between
/// targets, or 1 for a single target).
EnergyReport verify_energies(const ComplexFn& V, std::span<const double> targets, const Grid& grid,
                             double tol_eig = 5e-4, double tol_res = 1e-11);

struct OrderEstimate {
  std::optional<double> order;  // empty when the differences are below 1e-13
  double lambda[3]{};
};

/// Observed order log2(|l_h - l_h/2| / |l_h/2 - l_h/4|) on grids with n,
/// 2n - 1 and 4n - 3 points over the same interval.
OrderEstimate richardson_order(const ComplexFn& V, double target, const Grid& coarse);

/// Grid size with h * sqrt(|V|) <= kappa wherever any of the probe
/// wavefunctions exceeds `amplitude` of its maximum; never below `minimum`.
std::size_t resolved_grid_size(const ComplexFn& V, std::span<const WavefunctionGrid> probes, double xmin,
                               double xmax, std::size_t minimum = 4801, double kappa = 1.0,
                               double amplitude = 1e-6);

}  // namespace qes
