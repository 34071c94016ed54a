#include "qes/wavefun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qes {

Grid::Grid(double xmin, double xmax, std::size_t n) : xmin_(xmin), xmax_(xmax), n_(n) {
  if (!(std::isfinite(xmin) && std::isfinite(xmax)) || !(xmin < xmax))
    throw ConstructionError("grid requires finite xmin < xmax");
  if (n < 3 || n % 2 == 0) throw ConstructionError("grid point count must be odd and >= 3");
}

double Grid::x(std::size_t i) const {
  // Offsets from the midpoint are exact integers times h, so points mirrored
  // about the center are exact mirrors.
  const double center = 0.5 * (xmin_ + xmax_);
  const double k = static_cast<double>(i) - static_cast<double>((n_ - 1) / 2);
  return center + k * h();
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

std::size_t Grid::nearest(double x) const {
  const double k = std::round((x - xmin_) / h());
  if (k <= 0.0) return 0;
  if (k >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(k);
}

const char* normalization_name(Normalization n) {
  return n == Normalization::MaxModulusOne ? "max-modulus-one" : "raw";
}

double WavefunctionGrid::max_modulus() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double WavefunctionGrid::boundary_ratio() const {
  const double m = max_modulus();
  if (m == 0.0) return 1.0;
  return std::max(std::abs(values.front()), std::abs(values.back())) / m;
}

std::vector<cplx> cumulative_integral(const ComplexFn& fn, double x0, const Grid& grid) {
  const std::size_t n = grid.size();
  const std::size_t anchor = grid.nearest(x0);
  std::vector<cplx> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = fn(grid.x(i));
  auto cell = [&](std::size_t i) {  // integral over [x_i, x_{i+1}]
    const double a = grid.x(i), b = grid.x(i + 1);
    const cplx mid = fn(0.5 * (a + b));
    return (b - a) / 6.0 * (nodes[i] + 4.0 * mid + nodes[i + 1]);
  };
  std::vector<cplx> out(n);
  out[anchor] = 0.0;
  for (std::size_t i = anchor; i + 1 < n; ++i) out[i + 1] = out[i] + cell(i);
  for (std::size_t i = anchor; i > 0; --i) out[i - 1] = out[i] - cell(i - 1);
  return out;
}

namespace {

// prefactor(x) * exp(exponent), rescaled so the largest real exponent is 0,
// then normalized to unit max modulus.
WavefunctionGrid assemble(const Grid& grid, const std::vector<cplx>& exponent, const ComplexFn& prefactor,
                          double energy) {
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& e : exponent) shift = std::max(shift, e.real());
  WavefunctionGrid wf{grid, std::vector<cplx>(grid.size()), energy, Normalization::MaxModulusOne};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx pre = prefactor ? prefactor(grid.x(i)) : cplx(1.0);
    wf.values[i] = pre * std::exp(exponent[i] - shift);
  }
  const double m = wf.max_modulus();
  if (!(m > 0.0) || !std::isfinite(m)) throw EvalError("wavefunction is zero or non-finite on the grid");
  for (auto& v : wf.values) {
    v /= m;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw EvalError("wavefunction overflow");
  }
  return wf;
}

std::vector<cplx> negated_integral(const JetFn& w, double x0, const Grid& grid) {
  auto values = cumulative_integral([&w](double x) { return w(x).v(); }, x0, grid);
  for (auto& v : values) v = -v;
  return values;
}

}  // namespace

WavefunctionGrid psi0(const SuperpotentialPair& pair, const Grid& grid) {
  return assemble(grid, negated_integral(pair.w_fn(), pair.x0(), grid), nullptr, 0.0);
}

WavefunctionGrid psi1(const SuperpotentialPair& pair, const Grid& grid) {
  return assemble(grid, negated_integral(pair.w1_fn(), pair.x0(), grid),
                  [&pair](double x) { return pair.Wplus(x).v(); }, pair.eps());
}

WavefunctionGrid psi0_partner(const SuperpotentialPair& pair, const Grid& grid) {
  return assemble(grid, negated_integral(pair.w1_fn(), pair.x0(), grid), nullptr, pair.eps());
}

double decaying_half_width(const SuperpotentialPair& pair, double start, double step, std::size_t probe_n,
                           int max_steps) {
  if (!(start > 0.0) || !(step > 0.0)) throw ConstructionError("decaying_half_width needs positive start and step");
  double L = start;
  for (int k = 0; k <= max_steps; ++k, L += step) {
    const Grid g = Grid::symmetric(pair.x0(), L, probe_n);
    if (psi0(pair, g).decays() && psi1(pair, g).decays()) return L;
  }
  throw NumericalError("domain too small: no decaying domain up to half-width " + std::to_string(L - step));
}

WavefunctionGrid sample_wavefunction(const ComplexFn& psi, const Grid& grid, double energy) {
  return assemble(grid, std::vector<cplx>(grid.size(), cplx(0.0)), psi, energy);
}

double schrodinger_residual(const ComplexFn& V, const WavefunctionGrid& psi) {
  const std::size_t n = psi.values.size();
  if (n < 5) throw std::invalid_argument("schrodinger_residual needs at least 5 points");
  const double h = psi.grid.h();
  const double inv12h2 = 1.0 / (12.0 * h * h);
  const auto& p = psi.values;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const cplx d2 = (-p[i - 2] + 16.0 * p[i - 1] - 30.0 * p[i] + 16.0 * p[i + 1] - p[i + 2]) * inv12h2;
    const cplx r = -d2 + (V(psi.grid.x(i)) - psi.energy) * p[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst / psi.max_modulus();
}

double ratio_check(const WavefunctionGrid& psi1, const WavefunctionGrid& psi0, const ComplexFn& z) {
  if (psi1.values.size() != psi0.values.size()) throw std::invalid_argument("ratio_check: grid mismatch");
  const double cutoff = 1e-8 * psi0.max_modulus();
  std::vector<cplx> ratios;
  for (std::size_t i = 0; i < psi0.values.size(); ++i) {
    if (std::abs(psi0.values[i]) <= cutoff) continue;
    const cplx zi = z(psi0.grid.x(i));
    if (std::abs(zi) < 1e-6) continue;
    ratios.push_back(psi1.values[i] / psi0.values[i] / zi);
  }
  if (ratios.empty()) throw std::invalid_argument("ratio_check: no usable points");
  auto median_of = [](std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
  };
  std::vector<double> re, im;
  for (const auto& r : ratios) {
    re.push_back(r.real());
    im.push_back(r.imag());
  }
  const cplx med(median_of(re), median_of(im));
  double worst = 0.0;
  for (const auto& r : ratios) worst = std::max(worst, std::abs(r - med));
  return worst / std::abs(med);
}

}  // namespace qes
