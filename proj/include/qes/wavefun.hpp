#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qes/susy.hpp"

namespace qes {

/// Uniform grid with an odd number of points, so a grid symmetric about x0
/// contains x0 itself.
class Grid {
 public:
  Grid(double xmin, double xmax, std::size_t n);

  static Grid symmetric(double center, double half_width, std::size_t n) {
    return Grid(center - half_width, center + half_width, n);
  }

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  std::size_t size() const { return n_; }
  double h() const { return (xmax_ - xmin_) / static_cast<double>(n_ - 1); }
  double x(std::size_t i) const;
  std::vector<double> points() const;
  /// Index of the grid point nearest to `x` (clamped to the grid).
  std::size_t nearest(double x) const;

 private:
  double xmin_;
  double xmax_;
  std::size_t n_;
};

enum class Normalization { MaxModulusOne, Raw };

const char* normalization_name(Normalization n);

struct WavefunctionGrid {
  Grid grid;
  std::vector<cplx> values;
  double energy = 0.0;
  Normalization normalization = Normalization::MaxModulusOne;

  double max_modulus() const;
  /// max(|psi(xmin)|, |psi(xmax)|) / max |psi|.
  double boundary_ratio() const;
  bool decays(double rel_tol = 1e-12) const { return boundary_ratio() < rel_tol; }
};

/// Antiderivative of fn on the grid, anchored (value 0) at the grid point
/// nearest x0. Each cell [x_i, x_{i+1}] uses Simpson's rule with its midpoint,
/// accumulated outward from the anchor in a fixed order.
std::vector<cplx> cumulative_integral(const ComplexFn& fn, double x0, const Grid& grid);

/// exp(-int W), energy 0.
WavefunctionGrid psi0(const SuperpotentialPair& pair, const Grid& grid);
/// W+ exp(-int W1), energy eps.
WavefunctionGrid psi1(const SuperpotentialPair& pair, const Grid& grid);
/// Ground state of the partner Hamiltonian H-: exp(-int W1), energy eps.
WavefunctionGrid psi0_partner(const SuperpotentialPair& pair, const Grid& grid);

/// Smallest half-width start + k * step (k = 0, 1, ..., max_steps) for which
/// psi0 and psi1 both decay on a symmetric probe grid about x0. Throws
/// NumericalError if none does.
double decaying_half_width(const SuperpotentialPair& pair, double start, double step, std::size_t probe_n = 2001,
                           int max_steps = 64);

/// Samples a closed-form wavefunction and normalizes it like psi0/psi1.
WavefunctionGrid sample_wavefunction(const ComplexFn& psi, const Grid& grid, double energy);

/// sup over interior points of |-D2 psi + (V - E) psi| / max|psi|, with D2 the
/// five-point fourth-order central difference.
double schrodinger_residual(const ComplexFn& V, const WavefunctionGrid& psi);

/// Relative sup deviation of (psi1/psi0)/z from its median, over points where
/// |psi0| > 1e-8 max and z is not ~0.
double ratio_check(const WavefunctionGrid& psi1, const WavefunctionGrid& psi0, const ComplexFn& z);

}  // namespace qes
