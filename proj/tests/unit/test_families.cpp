#include <doctest.h>

#include <cmath>

#include "qes/families.hpp"
#include "qes/wavefun.hpp"
#include "support.hpp"

using namespace qes;
using qes::testing::linspace;

namespace {
constexpr cplx I(0.0, 1.0);

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

double oracle_gap(const ComplexFn& oracle, const PartnerPotentials& gen, double L) {
  double worst = 0.0;
  for (double x : linspace(-L, L, 201)) {
    const cplx v = gen.plus(x);
    worst = std::max(worst, std::abs(oracle(x) - v) / (1.0 + std::abs(v)));
  }
  return worst;
}

// Relative deviation of oracle / pipeline from a constant over points where the
// pipeline state is not negligible.
double equivalence(const WavefunctionGrid& pipe, const ComplexFn& oracle) {
  const double cut = 1e-6 * pipe.max_modulus();
  std::size_t k = 0;
  for (std::size_t i = 1; i < pipe.values.size(); ++i)
    if (std::abs(pipe.values[i]) > std::abs(pipe.values[k])) k = i;
  const cplx ref = oracle(pipe.grid.x(k)) / pipe.values[k];
  double worst = 0.0;
  for (std::size_t i = 0; i < pipe.values.size(); ++i) {
    if (std::abs(pipe.values[i]) < cut) continue;
    const cplx q = oracle(pipe.grid.x(i)) / pipe.values[i];
    worst = std::max(worst, std::abs(q - ref) / std::abs(ref));
  }
  return worst;
}

std::vector<HyperbolicFamily> reference_hyperbolic() {
  std::vector<HyperbolicFamily> v;
  for (double B : {0.0, 0.5, 1.0, 2.0}) v.push_back(HyperbolicFamily::make(1.0, 1.0, B, 1.0));
  return v;
}
}  // namespace

TEST_CASE("oscillator construction rules") {
  CHECK(OscillatorFamily::make(1, 2.0, 1.0).eps() == 2.0);
  CHECK(OscillatorFamily::make(3, 1.5, -0.2).eps() == 1.5);
  CHECK_THROWS_AS(OscillatorFamily::make(1, 2.0, 1.0, 3.0), ConstructionError);
  CHECK_THROWS_AS(OscillatorFamily::make(1, -2.0, 1.0), ConstructionError);
  CHECK_THROWS_AS(OscillatorFamily::make(0, 2.0, 1.0), ConstructionError);
  CHECK_THROWS_AS(OscillatorFamily::pt_oscillator(0.0, 1.0), ConstructionError);
  const auto pt = OscillatorFamily::pt_oscillator(0.75, 0.5);
  CHECK(pt.eps() == 3.0);
  CHECK(pt.a() == 2.0);
  CHECK(pt.b() == -1.0);
  CHECK(pt.alpha() == 0.75);
  CHECK(pt.c() == 0.5);
}

TEST_CASE("oscillator potential examples") {
  CHECK(close(OscillatorFamily::make(1, 2.0, 1.0).potential(0.0), -1.0, 1e-15));
  CHECK(close(OscillatorFamily::make(2, 2.0, 1.0).potential(0.0), -1.0, 1e-15));
  const auto pt = OscillatorFamily::pt_oscillator(0.5, 0.0);
  for (double x : {-3.0, -0.5, 0.7, 2.0}) CHECK(close(pt.potential(x), x * x - 1.0, 1e-14));
}

TEST_CASE("oscillator eigenstates and z") {
  const auto f1 = OscillatorFamily::make(1, 2.0, 1.0);
  CHECK(close(f1.psi(0.0, 0), 2.0, 1e-15));
  CHECK(f1.psi(0.0, 1) == cplx(0.0));
  CHECK(f1.z(0.0) == cplx(0.0));
  CHECK(close(f1.z(1.0), 1.0 / (2.0 + I), 1e-15));
  const auto f2 = OscillatorFamily::make(2, 2.0, 1.0);
  CHECK(close(f2.psi(1.0, 1) / f2.psi(1.0, 0), std::pow(2.0 + I, -1.0 / 3.0), 1e-14));
  CHECK(close(f2.z(1.0), std::pow(2.0 + I, -1.0 / 3.0), 1e-15));
  const auto id = OscillatorFamily::make(1, 1.0, 0.0);
  for (double x : {-2.0, 0.3, 5.0}) CHECK(close(id.z(x), x, 1e-15));
  CHECK_THROWS_AS(OscillatorFamily::pt_oscillator(0.5, 0.0).psi(0.0, 0), ConstructionError);
}

TEST_CASE("generating functions of the families") {
  const auto j = OscillatorFamily::make(1, 2.0, 1.0).generating_function().jet(1.0);
  CHECK(close(j.v(), 2.0 + I, 1e-15));
  CHECK(close(j.d1(), 2.0 + 2.0 * I, 1e-15));
  CHECK(close(j.d2(), 2.0 * I, 1e-15));
  const auto h = HyperbolicFamily::make(1.3, 0.7, 0.4, 1.0).generating_function().jet(0.0);
  CHECK(close(h.v(), 0.4 * I, 1e-15));
  CHECK(close(h.d1(), 1.3 * 0.7, 1e-15));
  const auto z = OscillatorFamily::pt_oscillator(0.75, 0.5).generating_function().jet(0.8);
  CHECK(close(z.v(), 1.6 - I, 1e-15));
  CHECK(close(z.d2(), 0.0, 1e-15));
}

TEST_CASE("hyperbolic construction and regimes") {
  CHECK(HyperbolicFamily::make(1.0, 1.0, 0.0).regime() == HyperbolicRegime::Zero);
  CHECK(HyperbolicFamily::make(1.0, 1.0, 0.0).eps() == 1.0);
  CHECK_THROWS_AS(HyperbolicFamily::make(1.0, 1.0, 0.0, 2.0), ConstructionError);
  CHECK_THROWS_AS(HyperbolicFamily::make(1.0, 1.0, 0.5), ConstructionError);
  CHECK(HyperbolicFamily::make(1.0, 1.0, 0.5, 1.0).regime() == HyperbolicRegime::Below);
  CHECK(HyperbolicFamily::make(1.0, 1.0, -1.0, 1.0).regime() == HyperbolicRegime::Equal);
  CHECK(HyperbolicFamily::make(1.0, 1.0, 2.0, 1.0).regime() == HyperbolicRegime::Above);
  CHECK(HyperbolicFamily::make(1.0, 1.0, 0.6, 1.0).nu() == doctest::Approx(0.8));
  CHECK(HyperbolicFamily::make(1.0, 1.0, -2.0, 1.0).delta() == -1.0);
  CHECK_THROWS_AS(HyperbolicFamily::make(1.0, 1.0, 0.6, 1.0).mu(), ConstructionError);
}

TEST_CASE("hyperbolic potential and state examples") {
  CHECK(close(HyperbolicFamily::make(1.0, 1.0, 0.0).potential(0.0), -0.25, 1e-15));
  CHECK(close(HyperbolicFamily::make(1.0, 1.0, 2.0, 1.0).potential(0.0), -1.5, 1e-15));
  const double alpha = 0.8;
  const auto z = HyperbolicFamily::make(1.0, alpha, 0.0);
  CHECK(close(z.psi(0.0, 0), std::exp(-1.0 / (2.0 * alpha)), 1e-15));
  CHECK(z.psi(0.0, 1) == cplx(0.0));
  const auto e = HyperbolicFamily::make(1.0, alpha, 1.0, 1.3);
  CHECK(close(e.psi(0.0, 0), std::exp(-1.0 / (2.0 * alpha) + 1.3 / (2.0 * alpha)), 1e-14));
  for (const auto& f : reference_hyperbolic()) {
    double defect = 0.0;
    for (double x : linspace(-5.0, 5.0, 101)) defect = std::max(defect, std::abs(std::conj(f.potential(-x)) - f.potential(x)));
    CHECK(defect <= 1e-12);
  }
}

TEST_CASE("oracle potentials agree with the generic construction") {
  for (int m = 1; m <= 3; ++m) {
    const auto f = OscillatorFamily::make(m, 2.0, 1.0);
    const PartnerPotentials gen(build_pair(f.generating_function(), f.eps()));
    CHECK(oracle_gap([&f](double x) { return f.potential(x); }, gen, 6.0) <= 1e-10);
  }
  for (double b : {-0.7, 0.3}) {
    const auto f = OscillatorFamily::make(2, 1.3, b);
    const PartnerPotentials gen(build_pair(f.generating_function(), f.eps()));
    CHECK(oracle_gap([&f](double x) { return f.potential(x); }, gen, 6.0) <= 1e-10);
  }
  for (const auto& pt : {OscillatorFamily::pt_oscillator(0.5, 0.0), OscillatorFamily::pt_oscillator(0.75, 0.5)}) {
    const PartnerPotentials gen(build_pair(pt.generating_function(), pt.eps()));
    CHECK(oracle_gap([&pt](double x) { return pt.potential(x); }, gen, 6.0) <= 1e-10);
  }
  for (const auto& h : reference_hyperbolic()) {
    const PartnerPotentials gen(build_pair(h.generating_function(), h.eps()));
    CHECK(oracle_gap([&h](double x) { return h.potential(x); }, gen, 8.0) <= 1e-10);
  }
}

TEST_CASE("closed-form eigenstates agree with the pipeline up to a constant") {
  for (int m = 1; m <= 3; ++m) {
    const auto f = OscillatorFamily::make(m, 2.0, 1.0);
    const auto p = build_pair(f.generating_function(), f.eps());
    const auto g = Grid::symmetric(0.0, 6.0, 4001);
    CHECK(equivalence(psi0(p, g), [&f](double x) { return f.psi(x, 0); }) <= 1e-8);
    CHECK(equivalence(psi1(p, g), [&f](double x) { return f.psi(x, 1); }) <= 1e-8);
  }
  for (const auto& h : reference_hyperbolic()) {
    CAPTURE(regime_name(h.regime()));
    const auto p = build_pair(h.generating_function(), h.eps());
    const auto g = Grid::symmetric(0.0, h.default_half_width(), 4001);
    CHECK(equivalence(psi0(p, g), [&h](double x) { return h.psi(x, 0); }) <= 1e-8);
    CHECK(equivalence(psi1(p, g), [&h](double x) { return h.psi(x, 1); }) <= 1e-8);
  }
  // Negative B and a non-unit alpha exercise the sign conventions.
  for (double B : {-0.5, -1.0, -2.0, 0.3, 1.7}) {
    const auto h = HyperbolicFamily::make(1.4, 0.8, B, 0.9);
    CAPTURE(B);
    const auto p = build_pair(h.generating_function(), h.eps());
    const auto g = Grid::symmetric(0.0, h.default_half_width(), 4001);
    CHECK(equivalence(psi0(p, g), [&h](double x) { return h.psi(x, 0); }) <= 1e-8);
    CHECK(equivalence(psi1(p, g), [&h](double x) { return h.psi(x, 1); }) <= 1e-8);
  }
}

TEST_CASE("closed-form residuals") {
  const auto f = OscillatorFamily::make(1, 2.0, 1.0);
  const auto g = Grid::symmetric(0.0, 8.0, 4001);
  const ComplexFn V = [&f](double x) { return f.potential(x); };
  CHECK(schrodinger_residual(V, sample_wavefunction([&f](double x) { return f.psi(x, 0); }, g, 0.0)) <= 1e-6);
  CHECK(schrodinger_residual(V, sample_wavefunction([&f](double x) { return f.psi(x, 1); }, g, 2.0)) <= 1e-6);
  for (const auto& h : reference_hyperbolic()) {
    CAPTURE(regime_name(h.regime()));
    const auto hg = Grid::symmetric(0.0, h.default_half_width(), 4001);
    const ComplexFn HV = [&h](double x) { return h.potential(x); };
    CHECK(schrodinger_residual(HV, sample_wavefunction([&h](double x) { return h.psi(x, 0); }, hg, 0.0)) <= 1e-6);
    CHECK(schrodinger_residual(HV, sample_wavefunction([&h](double x) { return h.psi(x, 1); }, hg, h.eps())) <= 1e-6);
  }
}

TEST_CASE("small B approaches the B = 0 formulas") {
  const auto zero = HyperbolicFamily::make(1.0, 1.0, 0.0);
  const auto small = HyperbolicFamily::make(1.0, 1.0, 1e-4, 1.0);
  const auto g = Grid::symmetric(0.0, 6.0, 1201);
  for (int level : {0, 1}) {
    const auto a = sample_wavefunction([&](double x) { return zero.psi(x, level); }, g, 0.0);
    const auto b = sample_wavefunction([&](double x) { return small.psi(x, level); }, g, 0.0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
      if (std::abs(a.values[i]) > std::abs(a.values[k])) k = i;
    const cplx align = a.values[k] / b.values[k];
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - align * b.values[i]));
    CAPTURE(level);
    CHECK(worst <= 1e-3);
  }
  // The rational term is a spike of width ~B at the origin, so the potential converges only away from it.
  for (double x : linspace(-4.0, 4.0, 41)) {
    if (std::abs(x) < 0.1) continue;
    CHECK(close(small.potential(x), zero.potential(x), 1e-3));
  }
}
