#include "qes/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qes {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Scales v so its largest-modulus entry becomes exactly 1.
void normalize_max(std::vector<cplx>& v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  const cplx pivot = v[k];
  if (pivot == cplx(0.0)) throw NumericalError("inverse iteration produced a zero vector");
  for (auto& x : v) x /= pivot;
  v[k] = 1.0;
}

}  // namespace

std::vector<cplx> TridiagonalOperator::apply(std::span<const cplx> v) const {
  const std::size_t n = dim();
  if (v.size() != n) throw std::invalid_argument("TridiagonalOperator::apply: size mismatch");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = diag[i] * v[i];
    if (i > 0) s += offdiag * v[i - 1];
    if (i + 1 < n) s += offdiag * v[i + 1];
    out[i] = s;
  }
  return out;
}

double TridiagonalOperator::norm_inf() const {
  double m = 0.0;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag);
    if (i + 1 < n) row += std::abs(offdiag);
    m = std::max(m, row);
  }
  return m;
}

TridiagonalOperator discretize(const ComplexFn& V, const Grid& grid) {
  if (grid.size() < 5) throw ConstructionError("discretize needs n >= 5");
  const double h = grid.h();
  const double inv_h2 = 1.0 / (h * h);
  TridiagonalOperator op{std::vector<cplx>(grid.size() - 2), -inv_h2, grid};
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const cplx v = V(grid.x(i));
    if (!finite(v)) throw EvalError("potential is not finite at x = " + std::to_string(grid.x(i)));
    op.diag[i - 1] = 2.0 * inv_h2 + v;
  }
  return op;
}

ShiftedLU::ShiftedLU(const TridiagonalOperator& op, cplx shift) : shift_(shift) {
  if (factor(op, shift)) return;
  retried_ = true;
  shift_ = shift + cplx(0.0, 1e-8);
  if (!factor(op, shift_)) throw NumericalError("singular pivot in shifted LU (after imaginary offset retry)");
}

// Gaussian elimination with row interchanges on a tridiagonal matrix; fill-in
// lands in du2_.
bool ShiftedLU::factor(const TridiagonalOperator& op, cplx shift) {
  const std::size_t n = op.dim();
  if (n == 0) throw ConstructionError("empty operator");
  d_.resize(n);
  dl_.assign(n > 1 ? n - 1 : 0, op.offdiag);
  du_.assign(n > 1 ? n - 1 : 0, op.offdiag);
  du2_.assign(n > 2 ? n - 2 : 0, 0.0);
  swapped_.assign(n > 1 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) d_[i] = op.diag[i] - shift;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      if (d_[i] == cplx(0.0)) return false;
      const cplx fact = dl_[i] / d_[i];
      dl_[i] = fact;
      d_[i + 1] -= fact * du_[i];
    } else {
      const cplx fact = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = fact;
      const cplx temp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = temp - fact * d_[i + 1];
      if (i + 2 < n) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -fact * du_[i + 1];
      }
      swapped_[i] = 1;
    }
  }
  for (const auto& p : d_)
    if (p == cplx(0.0) || !finite(p)) return false;
  return true;
}

std::vector<cplx> ShiftedLU::solve(std::span<const cplx> rhs) const {
  const std::size_t n = d_.size();
  if (rhs.size() != n) throw std::invalid_argument("ShiftedLU::solve: size mismatch");
  std::vector<cplx> b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped_[i]) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      const cplx temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - dl_[i] * b[i];
    }
  }
  b[n - 1] /= d_[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
  for (std::size_t k = n; k-- > 2;) {
    const std::size_t i = k - 2;
    b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  }
  return b;
}

std::vector<cplx> solve_shifted(const TridiagonalOperator& op, cplx shift, std::span<const cplx> rhs) {
  return ShiftedLU(op, shift).solve(rhs);
}

EigenResult inverse_iteration(const TridiagonalOperator& op, cplx shift, double tol, std::size_t max_iter) {
  if (!(tol >= 1e-12)) throw ConstructionError("inverse_iteration requires tol >= 1e-12");
  if (max_iter < 1) throw ConstructionError("inverse_iteration requires max_iter >= 1");
  const std::size_t n = op.dim();
  const ShiftedLU lu(op, shift);

  EigenResult res;
  res.retried = lu.retried();
  // A constant start vector is orthogonal (in the bilinear sense) to every odd
  // state of a parity-symmetric operator.
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);

  for (std::size_t it = 1; it <= max_iter; ++it) {
    v = lu.solve(v);
    normalize_max(v);
    const auto hv = op.apply(v);
    cplx num = 0.0, den = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * hv[i];
      den += v[i] * v[i];
      norm2 += std::norm(v[i]);
    }
    if (std::abs(den) < 1e-8 * norm2) {
      num = den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        num += std::conj(v[i]) * hv[i];
        den += std::norm(v[i]);
      }
    }
    const cplx lambda = num / den;
    double r = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r = std::max(r, std::abs(hv[i] - lambda * v[i]));
      double s = std::abs(op.diag[i]) * std::abs(v[i]);
      if (i > 0) s += std::abs(op.offdiag) * std::abs(v[i - 1]);
      if (i + 1 < n) s += std::abs(op.offdiag) * std::abs(v[i + 1]);
      scale = std::max(scale, s);
    }
    res.lambda = lambda;
    res.residual = r;  // ||v||_inf = 1
    res.backward_error = scale > 0.0 ? r / scale : r;
    res.iterations = it;
    if (!finite(lambda)) throw NumericalError("inverse iteration diverged");
    if (res.backward_error <= tol) {
      res.converged = true;
      break;
    }
  }
  res.vector = std::move(v);
  return res;
}

EnergyReport verify_energies(const ComplexFn& V, std::span<const double> targets, const Grid& grid, double tol_eig,
                             double tol_res) {
  if (targets.empty()) throw ConstructionError("verify_energies needs at least one target");
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j) gap = std::min(gap, std::abs(targets[i] - targets[j]));
  if (targets.size() == 1) gap = 1.0;
  if (gap < 4.0 * tol_eig) throw ConstructionError("targets must be separated by at least 4 tol_eig");

  const auto op = discretize(V, grid);
  EnergyReport report;
  report.ok = true;
  for (double t : targets) {
    EnergyCheck c;
    c.target = t;
    c.shift = t + 0.1 * gap;
    c.result = inverse_iteration(op, c.shift, tol_res);
    c.error = std::abs(c.result.lambda - t);
    c.imag_error = std::abs(c.result.lambda.imag());
    c.ok = c.result.converged && c.error <= tol_eig && c.imag_error <= tol_eig;
    report.ok = report.ok && c.ok;
    report.checks.push_back(std::move(c));
  }
  return report;
}

OrderEstimate richardson_order(const ComplexFn& V, double target, const Grid& coarse) {
  OrderEstimate est;
  const std::size_t n = coarse.size();
  const std::size_t sizes[3] = {n, 2 * n - 1, 4 * n - 3};
  cplx lam[3];
  for (int k = 0; k < 3; ++k) {
    const Grid g(coarse.xmin(), coarse.xmax(), sizes[k]);
    const auto r = inverse_iteration(discretize(V, g), target + 0.1, 1e-12);
    if (!r.converged) throw NumericalError("richardson_order: inverse iteration did not converge");
    lam[k] = r.lambda;
    est.lambda[k] = r.lambda.real();
  }
  const double d1 = std::abs(lam[0] - lam[1]), d2 = std::abs(lam[1] - lam[2]);
  if (d1 < 1e-13 || d2 < 1e-13) return est;
  est.order = std::log2(d1 / d2);
  return est;
}

std::size_t resolved_grid_size(const ComplexFn& V, std::span<const WavefunctionGrid> probes, double xmin,
                               double xmax, std::size_t minimum, double kappa, double amplitude) {
  double kmax = 0.0;
  for (const auto& p : probes) {
    const double cut = amplitude * p.max_modulus();
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (std::abs(p.values[i]) < cut) continue;
      kmax = std::max(kmax, std::sqrt(std::abs(V(p.grid.x(i)))));
    }
  }
  const double want = std::ceil((xmax - xmin) * kmax / kappa) + 1.0;
  std::size_t n = want > static_cast<double>(minimum) ? static_cast<std::size_t>(want) : minimum;
  if (n % 2 == 0) ++n;
  return n;
}

}  // namespace qes
