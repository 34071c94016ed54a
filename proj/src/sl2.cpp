#include "qes/sl2.hpp"

#include <algorithm>
#include <cmath>

namespace qes {

CPoly CPoly::monomial(int degree, cplx coef) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coef;
  return CPoly(std::move(c));
}

int CPoly::degree() const {
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
    if (c_[static_cast<std::size_t>(k)] != cplx(0.0)) return k;
  return -1;
}

std::array<cplx, 3> CPoly::eval(cplx z) const {
  cplx p = 0.0, dp = 0.0, d2p = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    d2p = d2p * z + 2.0 * dp;
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp, d2p};
}

PolyOperator::PolyOperator(int D, int raise, double N) : D_(D), raise_(raise), N_(N) {
  if (D < 0) throw ConstructionError("polynomial degree bound must be non-negative");
  m_.assign(static_cast<std::size_t>(D + 1) * static_cast<std::size_t>(D + 1), 0.0);
}

std::size_t PolyOperator::idx(int i, int j) const {
  if (i < 0 || j < 0 || i > D_ || j > D_) throw ConstructionError("PolyOperator index out of range");
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(D_ + 1) + static_cast<std::size_t>(j);
}

CPoly PolyOperator::apply(const CPoly& p) const {
  const int deg = p.degree();
  if (deg > faithful_degree())
    throw ConstructionError("input degree " + std::to_string(deg) + " exceeds the faithful degree " +
                            std::to_string(faithful_degree()));
  std::vector<cplx> out(static_cast<std::size_t>(D_ + 1), 0.0);
  for (int j = 0; j <= deg; ++j)
    for (int i = 0; i <= D_; ++i) out[static_cast<std::size_t>(i)] += at(i, j) * p.coeff(j);
  return CPoly(std::move(out));
}

PolyOperator PolyOperator::operator*(const PolyOperator& o) const {
  if (D_ != o.D_) throw ConstructionError("PolyOperator dimension mismatch");
  PolyOperator r(D_, raise_ + o.raise_, N_);
  for (int i = 0; i <= D_; ++i)
    for (int k = 0; k <= D_; ++k) {
      const cplx a = at(i, k);
      if (a == cplx(0.0)) continue;
      for (int j = 0; j <= D_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

PolyOperator PolyOperator::operator+(const PolyOperator& o) const {
  if (D_ != o.D_) throw ConstructionError("PolyOperator dimension mismatch");
  PolyOperator r(D_, std::max(raise_, o.raise_), N_);
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = m_[k] + o.m_[k];
  return r;
}

PolyOperator PolyOperator::operator-(const PolyOperator& o) const { return *this + o * cplx(-1.0); }

PolyOperator PolyOperator::operator*(cplx s) const {
  PolyOperator r = *this;
  for (auto& v : r.m_) v *= s;
  return r;
}

PolyOperator PolyOperator::identity(int D) {
  PolyOperator r(D);
  for (int i = 0; i <= D; ++i) r.at(i, i) = 1.0;
  return r;
}

PolyOperator commutator(const PolyOperator& p, const PolyOperator& q) { return p * q - q * p; }

Sl2Generators sl2_generators(double N, int D) {
  if (D < 2) throw ConstructionError("sl2_generators requires D >= 2");
  PolyOperator plus(D, 1, N), zero(D, 0, N), minus(D, 0, N);
  for (int j = 0; j <= D; ++j) {
    if (j + 1 <= D) plus.at(j + 1, j) = static_cast<double>(j) - N;
    zero.at(j, j) = static_cast<double>(j) - N / 2.0;
    if (j >= 1) minus.at(j - 1, j) = static_cast<double>(j);
  }
  return {plus, zero, minus};
}

PolyOperator t_operator_matrix(double a, double b, int D) {
  if (D < 6) throw ConstructionError("t_operator_matrix requires D >= 6");
  if (!(a > 0.0)) throw ConstructionError("t_operator_matrix requires a > 0");
  // (1 - i b z)^4 = sum_k C(4,k) (-i b)^k z^k
  static constexpr double binom[5] = {1, 4, 6, 4, 1};
  std::array<cplx, 5> q{};
  cplx p = 1.0;
  for (int k = 0; k <= 4; ++k) {
    q[static_cast<std::size_t>(k)] = binom[k] * p;
    p *= cplx(0.0, -b);
  }
  PolyOperator t(D, 2, 1.0);
  for (int j = 0; j <= D; ++j) {
    t.at(j, j) += a * static_cast<double>(j);
    if (j < 2) continue;
    const double jj = static_cast<double>(j) * static_cast<double>(j - 1);
    for (int k = 0; k <= 4; ++k) {
      const int row = j - 2 + k;
      if (row > D) break;
      t.at(row, j) += -jj / (a * a) * q[static_cast<std::size_t>(k)];
    }
  }
  return t;
}

PolyOperator quadratic_bracket_matrix(double a, double b, int D) {
  if (D < 6) throw ConstructionError("quadratic_combination_matrix requires D >= 6");
  if (!(a > 0.0)) throw ConstructionError("quadratic_combination_matrix requires a > 0");
  const auto [jp, j0, jm] = sl2_generators(1.0, D);
  const cplx I(0.0, 1.0);
  const double b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
  PolyOperator r = cplx(-b4) * (jp * jp) + (-4.0 * I * b3) * (jp * j0) + cplx(6.0 * b2) * (jp * jm) +
                   (4.0 * I * b) * (j0 * jm) - jm * jm + (-2.0 * I * b3) * jp + cplx(6.0 * b2) * j0 +
                   (2.0 * I * b) * jm + cplx(3.0 * b2) * PolyOperator::identity(D);
  return r * cplx(1.0 / (a * a));
}

PolyOperator quadratic_combination_matrix(double a, double b, int D) {
  const auto gens = sl2_generators(1.0, D);
  return quadratic_bracket_matrix(a, b, D) + cplx(a) * gens.zero + cplx(a / 2.0) * PolyOperator::identity(D);
}

OperatorComparison operator_equal(const PolyOperator& p, const PolyOperator& q, int input_degree, double tol) {
  if (p.max_degree() != q.max_degree()) throw ConstructionError("operator_equal: dimension mismatch");
  const int last = std::min(input_degree, p.max_degree());
  OperatorComparison c;
  for (int j = 0; j <= last; ++j)
    for (int i = 0; i <= p.max_degree(); ++i) c.max_discrepancy = std::max(c.max_discrepancy, std::abs(p.at(i, j) - q.at(i, j)));
  c.equal = c.max_discrepancy <= tol;
  return c;
}

CommutatorCheck check_commutators(double N, int D) {
  const auto [jp, j0, jm] = sl2_generators(N, D);
  const int deg = D - 2;
  CommutatorCheck c;
  c.j0_plus = operator_equal(commutator(j0, jp), jp, deg, 0.0).max_discrepancy;
  c.j0_minus = operator_equal(commutator(j0, jm), jm * cplx(-1.0), deg, 0.0).max_discrepancy;
  c.plus_minus = operator_equal(commutator(jp, jm), j0 * cplx(-2.0), deg, 0.0).max_discrepancy;
  c.plus_minus_flip = operator_equal(commutator(jp, jm), j0 * cplx(2.0), deg, 0.0).max_discrepancy;
  return c;
}

BlockSpectrum two_dim_block_spectrum(const PolyOperator& op) {
  if (op.max_degree() < 1) throw ConstructionError("two_dim_block_spectrum needs D >= 1");
  BlockSpectrum s;
  for (int j = 0; j <= 1; ++j)
    for (int i = 2; i <= op.max_degree(); ++i) s.leakage = std::max(s.leakage, std::abs(op.at(i, j)));
  const cplx t00 = op.at(0, 0), t01 = op.at(0, 1), t10 = op.at(1, 0), t11 = op.at(1, 1);
  const cplx tr = t00 + t11, det = t00 * t11 - t01 * t10;
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  cplx l1 = 0.5 * (tr - disc), l2 = 0.5 * (tr + disc);
  if (l2.real() < l1.real()) std::swap(l1, l2);
  s.eigenvalues = {l1, l2};
  return s;
}

cplx t_apply_pointwise(int m, double a, double b, const ComplexJetFn& phi, cplx z) {
  if (m < 1) throw ConstructionError("t_apply_pointwise requires m >= 1");
  if (!(a > 0.0)) throw ConstructionError("t_apply_pointwise requires a > 0");
  const double q = 2.0 * m - 1.0;
  const cplx w = 1.0 - cplx(0.0, b) * std::pow(z, 2 * m - 1);
  if (w.real() <= 0.0 && std::abs(w.imag()) < 1e-12)
    throw EvalError("1 - i b z^(2m-1) lies on the principal branch cut");
  const auto [f, df, d2f] = phi(z);
  (void)f;
  const cplx coef = -std::pow(a, -2.0 / q) * std::pow(w, 4.0 * m / q);
  return coef * d2f + a * z * df;
}

}  // namespace qes
