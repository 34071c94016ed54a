#pragma once

// Truncated Taylor jets of a complex-valued function of one real variable.
//
// A Jet<N> carries f, f', ..., f^(N) at a single evaluation point. Arithmetic
// propagates the derivatives exactly (Leibniz rule for products, Faa di Bruno
// for composition), so a jet evaluated through an expression gives the exact
// derivatives of that expression up to rounding.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "qes/errors.hpp"

namespace qes {

using cplx = std::complex<double>;

template <int N>
class Jet {
  static_assert(N >= 0 && N <= 4, "jets are implemented up to order 4");

 public:
  static constexpr int order = N;

  constexpr Jet() = default;
  constexpr Jet(cplx value) { d_[0] = value; }  // NOLINT: constants convert
  constexpr Jet(double value) { d_[0] = value; }  // NOLINT

  static Jet constant(cplx c) { return Jet(c); }

  /// Independent variable seeded at x: (x, 1, 0, ...).
  static Jet variable(double x) {
    Jet j(x);
    if constexpr (N >= 1) j.d_[1] = 1.0;
    return j;
  }

  static Jet from_derivatives(const std::array<cplx, N + 1>& d) {
    Jet j;
    j.d_ = d;
    return j;
  }

  cplx operator[](std::size_t k) const { return d_[k]; }
  cplx& operator[](std::size_t k) { return d_[k]; }

  cplx v() const { return d_[0]; }
  cplx d1() const requires(N >= 1) { return d_[1]; }
  cplx d2() const requires(N >= 2) { return d_[2]; }

  const std::array<cplx, N + 1>& derivatives() const { return d_; }

  template <int M>
  Jet<M> truncate() const requires(M <= N) {
    Jet<M> out;
    for (int k = 0; k <= M; ++k) out[k] = d_[k];
    return out;
  }

  bool finite() const {
    for (const auto& c : d_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= N; ++k) r.d_[k] = -d_[k];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) d_[k] += o.d_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) d_[k] -= o.d_[k];
    return *this;
  }
  Jet& operator*=(cplx s) {
    for (auto& c : d_) c *= s;
    return *this;
  }

 private:
  std::array<cplx, N + 1> d_{};
};

using Jet2 = Jet<2>;
using Jet4 = Jet<4>;

namespace detail {

constexpr double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N>
Jet<N> operator+(Jet<N> a, cplx s) { a[0] += s; return a; }
template <int N>
Jet<N> operator+(cplx s, Jet<N> a) { a[0] += s; return a; }
template <int N>
Jet<N> operator-(Jet<N> a, cplx s) { a[0] -= s; return a; }
template <int N>
Jet<N> operator-(cplx s, const Jet<N>& a) { return -a + s; }
template <int N>
Jet<N> operator*(Jet<N> a, cplx s) { return a *= s; }
template <int N>
Jet<N> operator*(cplx s, Jet<N> a) { return a *= s; }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += detail::binomial(k, j) * a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

/// Compose an outer function with an inner jet. `f[k]` holds the k-th
/// derivative of the outer function evaluated at u.v().
template <int N>
Jet<N> compose(const std::array<cplx, N + 1>& f, const Jet<N>& u) {
  Jet<N> r(f[0]);
  if constexpr (N >= 1) r[1] = f[1] * u[1];
  if constexpr (N >= 2) r[2] = f[2] * u[1] * u[1] + f[1] * u[2];
  if constexpr (N >= 3)
    r[3] = f[3] * u[1] * u[1] * u[1] + 3.0 * f[2] * u[1] * u[2] + f[1] * u[3];
  if constexpr (N >= 4)
    r[4] = f[4] * u[1] * u[1] * u[1] * u[1] + 6.0 * f[3] * u[1] * u[1] * u[2] +
           f[2] * (3.0 * u[2] * u[2] + 4.0 * u[1] * u[3]) + f[1] * u[4];
  return r;
}

/// Smallest modulus accepted as a divisor.
inline constexpr double kMinDivisor = 1e-300;

template <int N>
Jet<N> reciprocal(const Jet<N>& u) {
  const cplx u0 = u.v();
  if (std::abs(u0) < kMinDivisor) throw EvalError("division by zero in jet arithmetic");
  std::array<cplx, N + 1> f;
  cplx inv = 1.0 / u0;
  cplx p = inv;
  double sign_fact = 1.0;
  for (int k = 0; k <= N; ++k) {
    f[k] = sign_fact * p;
    p *= inv;
    sign_fact *= -(k + 1.0);
  }
  return compose(f, u);
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) { return a * reciprocal(b); }
template <int N>
Jet<N> operator/(const Jet<N>& a, cplx s) {
  if (std::abs(s) < kMinDivisor) throw EvalError("division by zero in jet arithmetic");
  return a * (1.0 / s);
}
template <int N>
Jet<N> operator/(cplx s, const Jet<N>& b) { return s * reciprocal(b); }

template <int N>
Jet<N> exp(const Jet<N>& u) {
  std::array<cplx, N + 1> f;
  f.fill(std::exp(u.v()));
  return compose(f, u);
}

template <int N>
Jet<N> log(const Jet<N>& u) {
  const cplx u0(u.v().real(), u.v().imag() + 0.0);
  if (std::abs(u0) < kMinDivisor) throw EvalError("log of zero");
  std::array<cplx, N + 1> f;
  f[0] = std::log(u0);
  cplx inv = 1.0 / u0;
  cplx p = inv;
  double c = 1.0;
  for (int k = 1; k <= N; ++k) {
    f[k] = c * p;
    p *= inv;
    c *= -static_cast<double>(k);
  }
  return compose(f, u);
}

template <int N>
Jet<N> sin(const Jet<N>& u) {
  const cplx s = std::sin(u.v()), c = std::cos(u.v());
  const std::array<cplx, 4> cycle{s, c, -s, -c};
  std::array<cplx, N + 1> f;
  for (int k = 0; k <= N; ++k) f[k] = cycle[k % 4];
  return compose(f, u);
}

template <int N>
Jet<N> cos(const Jet<N>& u) {
  const cplx s = std::sin(u.v()), c = std::cos(u.v());
  const std::array<cplx, 4> cycle{c, -s, -c, s};
  std::array<cplx, N + 1> f;
  for (int k = 0; k <= N; ++k) f[k] = cycle[k % 4];
  return compose(f, u);
}

template <int N>
Jet<N> sinh(const Jet<N>& u) {
  const cplx s = std::sinh(u.v()), c = std::cosh(u.v());
  std::array<cplx, N + 1> f;
  for (int k = 0; k <= N; ++k) f[k] = (k % 2 == 0) ? s : c;
  return compose(f, u);
}

template <int N>
Jet<N> cosh(const Jet<N>& u) {
  const cplx s = std::sinh(u.v()), c = std::cosh(u.v());
  std::array<cplx, N + 1> f;
  for (int k = 0; k <= N; ++k) f[k] = (k % 2 == 0) ? c : s;
  return compose(f, u);
}

template <int N>
Jet<N> tanh(const Jet<N>& u) { return sinh(u) / cosh(u); }

/// Integer power by repeated squaring; exact sign handling on the real axis.
inline cplx ipow(cplx base, long n) {
  if (n < 0) {
    if (std::abs(base) < kMinDivisor) throw EvalError("negative power of zero");
    return 1.0 / ipow(base, -n);
  }
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

template <int N>
Jet<N> pow(const Jet<N>& u, long n) {
  std::array<cplx, N + 1> f;
  double coef = 1.0;
  for (int k = 0; k <= N; ++k) {
    f[k] = (coef == 0.0) ? cplx(0.0) : coef * ipow(u.v(), n - k);
    coef *= static_cast<double>(n - k);
  }
  return compose(f, u);
}

/// Complex power on the principal branch, exp(c log u). Integer-valued real
/// exponents are routed through `ipow` so negative bases stay on the real axis.
template <int N>
Jet<N> pow(const Jet<N>& u, cplx c) {
  if (c.imag() == 0.0 && std::nearbyint(c.real()) == c.real() && std::abs(c.real()) < 1e9)
    return pow(u, static_cast<long>(c.real()));
  // A negative zero imaginary part would select the far side of the cut.
  const cplx u0(u.v().real(), u.v().imag() + 0.0);
  if (std::abs(u0) < kMinDivisor) throw EvalError("non-integer power of zero");
  const cplx head = std::pow(u0, c);
  std::array<cplx, N + 1> f;
  cplx coef = 1.0;
  cplx inv_pow = 1.0;
  for (int k = 0; k <= N; ++k) {
    f[k] = coef * head * inv_pow;
    coef *= (c - static_cast<double>(k));
    inv_pow /= u0;
  }
  return compose(f, u);
}

template <int N>
Jet<N> sqrt(const Jet<N>& u) { return pow(u, cplx(0.5)); }

}  // namespace qes
