#include <doctest.h>

#include <cmath>

#include "qes/families.hpp"
#include "qes/wavefun.hpp"
#include "support.hpp"

using namespace qes;

namespace {
constexpr cplx I(0.0, 1.0);

SuperpotentialPair pair_of(const char* src, std::optional<double> eps = std::nullopt) {
  return build_pair(GeneratingFunction::from_expression(Expr::parse(src), 0.0), eps);
}

// Largest deviation of values / reference from a constant, relative.
double ratio_spread(const WavefunctionGrid& wf, const std::function<cplx(double)>& ref, double floor = 1e-8) {
  cplx anchor = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < wf.values.size(); ++i) {
    const cplx r = ref(wf.grid.x(i));
    if (std::abs(wf.values[i]) < floor || std::abs(r) < 1e-300) continue;
    const cplx q = wf.values[i] / r;
    if (anchor == cplx(0.0)) anchor = q;
    worst = std::max(worst, std::abs(q - anchor) / std::abs(anchor));
  }
  return worst;
}
}  // namespace

TEST_CASE("grid basics") {
  const Grid g(-1.0, 1.0, 5);
  CHECK(g.h() == 0.5);
  CHECK(g.x(2) == 0.0);
  CHECK(g.x(0) == -1.0);
  CHECK(g.nearest(0.3) == 3);
  CHECK(g.nearest(-7.0) == 0);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 4), ConstructionError);
  CHECK_THROWS_AS(Grid(1.0, 1.0, 5), ConstructionError);
  const auto s = Grid::symmetric(0.3, 2.0, 401);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.x(i) - 0.3 == doctest::Approx(0.3 - s.x(s.size() - 1 - i)).epsilon(1e-15));
}

TEST_CASE("cumulative integral examples") {
  const Grid g(-1.0, 1.0, 201);
  const auto p = cumulative_integral([](double x) { return cplx(x); }, 0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(p[i] - 0.5 * g.x(i) * g.x(i)) <= 1e-12);
  const auto c = cumulative_integral([](double) { return I; }, 0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(c[i] - I * g.x(i)) <= 1e-12);

  // W of the m=1 oscillator integrates to a x^2/4 + i b x^3/6 - log(a + i b x) + const.
  const auto f = OscillatorFamily::make(1, 2.0, 1.0);
  const auto pr = build_pair(f.generating_function(), f.eps());
  const Grid gg(-4.0, 4.0, 801);
  const auto w = cumulative_integral([&pr](double x) { return pr.W(x).v(); }, 0.0, gg);
  const auto anti = [](double x) { return 0.5 * x * x + I * x * x * x / 6.0 - std::log(2.0 + I * x); };
  for (std::size_t i = 0; i < gg.size(); ++i) CHECK(std::abs(w[i] - (anti(gg.x(i)) - anti(0.0))) <= 1e-9);
}

TEST_CASE("Simpson accumulation is fourth order") {
  const auto fn = [](double x) { return std::exp(cplx(0.7, 0.4) * x); };
  const auto exact = [](double x) { return (std::exp(cplx(0.7, 0.4) * x) - 1.0) / cplx(0.7, 0.4); };
  double prev = 0.0;
  for (std::size_t n : {21, 41, 81}) {
    const Grid g(-2.0, 3.0, n);
    const auto v = cumulative_integral(fn, 0.0, g);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(v[i] - exact(g.x(i))));
    if (prev > 0.0) {
      CHECK(prev / err >= 12.0);
      CHECK(prev / err <= 20.0);
    }
    prev = err;
  }
}

TEST_CASE("harmonic ground and first excited state") {
  const auto p = pair_of("x");
  const auto g = Grid::symmetric(0.0, 12.0, 1201);
  const auto w0 = psi0(p, g);
  const auto w1 = psi1(p, g);
  CHECK(w0.energy == 0.0);
  CHECK(w1.energy == 1.0);
  CHECK(w0.max_modulus() == doctest::Approx(1.0));
  CHECK(ratio_spread(w0, [](double x) { return cplx(std::exp(-x * x / 4.0)); }, 1e-10) <= 1e-10);
  CHECK(ratio_spread(w1, [](double x) { return cplx(x * std::exp(-x * x / 4.0)); }, 1e-10) <= 1e-10);
  CHECK(w0.decays());
  CHECK(w1.decays());
  CHECK(ratio_check(w1, w0, [](double x) { return cplx(x); }) <= 1e-12);
}

TEST_CASE("closed forms of the quartic family and the B = 0 hyperbolic model") {
  const auto f = OscillatorFamily::make(1, 2.0, 1.0);
  const auto p = build_pair(f.generating_function(), f.eps());
  const auto g = Grid::symmetric(0.0, 8.0, 4001);
  const auto expo = [](double x) { return std::exp(-x * x / 2.0 - I * x * x * x / 6.0); };
  CHECK(ratio_spread(psi0(p, g), [&](double x) { return (2.0 + I * x) * expo(x); }) <= 1e-8);
  CHECK(ratio_spread(psi1(p, g), [&](double x) { return x * expo(x); }) <= 1e-8);

  const auto h = HyperbolicFamily::make(1.0, 1.0, 0.0);
  const auto hp = build_pair(h.generating_function(), std::nullopt);
  const auto hg = Grid::symmetric(0.0, 6.0, 4001);
  const auto e = [](double x) { return std::exp(-0.5 * std::cosh(x)); };
  CHECK(ratio_spread(psi0(hp, hg), [&](double x) { return cplx(std::cosh(x / 2.0) * e(x)); }) <= 1e-8);
  CHECK(ratio_spread(psi1(hp, hg), [&](double x) { return cplx(std::sinh(x / 2.0) * e(x)); }) <= 1e-8);
}

TEST_CASE("exponent stabilization keeps large domains finite") {
  const auto h = HyperbolicFamily::make(1.0, 1.0, 0.0);
  const auto hp = build_pair(h.generating_function(), std::nullopt);
  const auto w = psi0(hp, Grid::symmetric(0.0, 9.0, 2001));
  CHECK(w.max_modulus() == doctest::Approx(1.0));
  for (const auto& v : w.values) CHECK(std::isfinite(std::abs(v)));
}

TEST_CASE("Schrodinger residual") {
  const auto p = pair_of("x");
  const auto g = Grid::symmetric(0.0, 8.0, 4001);
  const ComplexFn V = [](double x) { return cplx(x * x / 4.0 - 0.5); };
  const auto w0 = psi0(p, g);
  CHECK(schrodinger_residual(V, w0) <= 1e-8);

  WavefunctionGrid bad = w0;
  for (std::size_t i = 0; i < g.size(); ++i) bad.values[i] *= 1.0 + 0.01 * g.x(i);
  CHECK(schrodinger_residual(V, bad) > 1e-3);

  const auto f = OscillatorFamily::make(1, 2.0, 1.0);
  const auto pr = build_pair(f.generating_function(), f.eps());
  const PartnerPotentials pots(pr);
  CHECK(schrodinger_residual(pots.plus_fn(), psi1(pr, g)) <= 1e-6);
  CHECK(schrodinger_residual(pots.plus_fn(), psi0(pr, g)) <= 1e-6);
}

TEST_CASE("ratio check against z") {
  for (int m : {1, 2}) {
    const auto f = OscillatorFamily::make(m, 2.0, 1.0);
    const auto pr = build_pair(f.generating_function(), f.eps());
    const auto g = Grid::symmetric(0.0, 8.0, 4001);
    CHECK(ratio_check(psi1(pr, g), psi0(pr, g), [&f](double x) { return f.z(x); }) <= 1e-8);
  }
}

TEST_CASE("annihilation and ladder identities") {
  const auto f = OscillatorFamily::make(1, 2.0, 1.0);
  const auto pr = build_pair(f.generating_function(), f.eps());
  const auto g = Grid::symmetric(0.0, 8.0, 4001);
  const auto w0 = psi0(pr, g);
  const double h = g.h();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < g.size(); ++i) {
    const auto& v = w0.values;
    const cplx d = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    worst = std::max(worst, std::abs(apply_A(pr.w_fn(), g.x(i), v[i], d)));
  }
  CHECK(worst <= 1e-6 * w0.max_modulus());

  // Abar exp(-int W1) = W+ exp(-int W1): compare against psi1 pointwise.
  const auto chi = psi0_partner(pr, g);
  const auto w1 = psi1(pr, g);
  std::vector<cplx> ladder(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    ladder[i] = apply_Abar(pr.w_fn(), g.x(i), chi.values[i], -pr.W1(g.x(i)).v() * chi.values[i]);
  double scale = 0.0;
  for (const auto& v : ladder) scale = std::max(scale, std::abs(v));
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) dev = std::max(dev, std::abs(ladder[i] / scale - w1.values[i]));
  CHECK(dev <= 1e-10);
}

TEST_CASE("decaying domains") {
  for (int m = 1; m <= 3; ++m) {
    const auto f = OscillatorFamily::make(m, 2.0, 1.0);
    const auto pr = build_pair(f.generating_function(), f.eps());
    const double L = decaying_half_width(pr, f.default_half_width(), 1.0);
    CAPTURE(m);
    CHECK(L >= f.default_half_width());
    const auto g = Grid::symmetric(0.0, L, 4001);
    CHECK(psi0(pr, g).decays());
    CHECK(psi1(pr, g).decays());
  }
  CHECK(decaying_half_width(build_pair(OscillatorFamily::make(1, 2.0, 1.0).generating_function(), 2.0), 8.0, 1.0) == 8.0);
  for (double B : {0.0, 0.5, 1.0, 2.0}) {
    const auto h = HyperbolicFamily::make(1.0, 1.0, B, 1.0);
    const auto pr = build_pair(h.generating_function(), h.eps());
    const auto g = Grid::symmetric(0.0, h.default_half_width(), 2001);
    CHECK(psi0(pr, g).decays());
    CHECK(psi1(pr, g).decays());
  }
  const auto slow = build_pair(GeneratingFunction::from_expression(Expr::parse("0.01*x"), 0.0), std::nullopt);
  CHECK_THROWS_AS(decaying_half_width(slow, 1.0, 1.0, 201, 3), NumericalError);
}

TEST_CASE("sampled closed forms are normalized") {
  const auto w = sample_wavefunction([](double x) { return cplx(3.0 * std::exp(-x * x)); }, Grid(-3.0, 3.0, 61), 0.5);
  CHECK(w.max_modulus() == doctest::Approx(1.0));
  CHECK(w.energy == 0.5);
  CHECK(std::string(normalization_name(w.normalization)) == "max-modulus-one");
}
