#include "qes/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qes/families.hpp"
#include "qes/sl2.hpp"
#include "qes/spectral.hpp"
#include "qes/susy.hpp"
#include "qes/wavefun.hpp"

namespace qes {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string command;
  std::optional<std::string> family;
  std::optional<std::string> wplus;
  int m = 1;
  std::optional<double> a, b, alpha, c, eps;
  double A = 1.0, B = 0.0;
  double x0 = 0.0;
  std::optional<double> xmin, xmax;
  std::optional<std::size_t> n;
  double tol_eig = 5e-4;
  double tol_res = 1e-11;
  double tol_oracle = 1e-10;
  double tol_wave = 1e-6;
  std::vector<double> targets;
  bool order_check = false;
  int degree = 8;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

struct Model {
  std::optional<OscillatorFamily> osc;
  std::optional<HyperbolicFamily> hyp;
  std::optional<SuperpotentialPair> pair;
  std::string label;
  double half_width = 8.0;
  double step = 1.0;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp() {
  std::time_t t;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  else
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_echo(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.family) j["family"] = *c.family;
  if (c.wplus) j["wplus"] = *c.wplus;
  j["m"] = c.m;
  if (c.a) j["a"] = *c.a;
  if (c.b) j["b"] = *c.b;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.c) j["c"] = *c.c;
  if (c.eps) j["eps"] = *c.eps;
  j["A"] = c.A;
  j["B"] = c.B;
  j["x0"] = c.x0;
  if (c.xmin) j["xmin"] = *c.xmin;
  if (c.xmax) j["xmax"] = *c.xmax;
  if (c.n) j["n"] = *c.n;
  j["tol_eig"] = c.tol_eig;
  j["tol_res"] = c.tol_res;
  j["tol_oracle"] = c.tol_oracle;
  j["tol_wave"] = c.tol_wave;
  if (!c.targets.empty()) j["targets"] = c.targets;
  j["order_check"] = c.order_check;
  j["degree"] = c.degree;
  return j;
}

void validate(const RunConfig& c) {
  if (c.n && (*c.n < 5 || *c.n % 2 == 0)) throw ConstructionError("--n must be odd and >= 5");
  if (c.xmin.has_value() != c.xmax.has_value()) throw ConstructionError("--xmin and --xmax must be given together");
  if (c.xmin && !(*c.xmin < *c.xmax)) throw ConstructionError("--xmin must be below --xmax");
  for (double t : {c.tol_eig, c.tol_res, c.tol_oracle, c.tol_wave})
    if (!(t > 0.0)) throw ConstructionError("tolerances must be positive");
  if (c.command != "sl2" && !c.family && !c.wplus) throw ConstructionError("one of --family or --wplus is required");
}

Model build_model(const RunConfig& c) {
  Model mdl;
  if (c.wplus) {
    const Expr e = Expr::parse(*c.wplus);
    auto gen = GeneratingFunction::from_expression(e, c.x0);
    const auto cls = classify_zero(gen);
    std::optional<double> eps = c.eps;
    if (!is_type2(cls) && !eps) eps = 1.0;
    mdl.pair = build_pair(std::move(gen), eps);
    mdl.label = "wplus " + e.to_string();
    return mdl;
  }
  if (*c.family == "oscillator") {
    OscillatorFamily f = [&] {
      if (c.m == 0 && !c.a && !c.b) return OscillatorFamily::pt_oscillator(c.alpha.value_or(0.5), c.c.value_or(0.0));
      if (c.c) throw ConstructionError("--c applies to the m = 0 presentation only");
      return OscillatorFamily::make(c.m, c.a.value_or(2.0), c.b.value_or(1.0), c.eps);
    }();
    mdl.pair = build_pair(f.generating_function(), f.eps());
    mdl.half_width = f.default_half_width();
    mdl.label = f.describe();
    mdl.osc = f;
    return mdl;
  }
  if (*c.family == "hyperbolic") {
    std::optional<double> eps = c.eps;
    if (c.B != 0.0 && !eps) eps = 1.0;
    const auto f = HyperbolicFamily::make(c.A, c.alpha.value_or(1.0), c.B, eps);
    mdl.pair = build_pair(f.generating_function(), f.eps());
    mdl.half_width = f.default_half_width();
    mdl.step = 1.0 / f.alpha();
    mdl.label = f.describe();
    mdl.hyp = f;
    return mdl;
  }
  throw ConstructionError("unknown family " + *c.family);
}

bool decays_on(const SuperpotentialPair& pair, const Grid& g) {
  return psi0(pair, g).decays() && psi1(pair, g).decays();
}

// Explicit domains are taken as given (and must show decay when required);
// default domains grow from the family half-width until both states decay.
Grid choose_grid(const Model& mdl, const RunConfig& c, std::size_t n, bool require_decay) {
  const std::size_t probe_n = 2001;
  if (c.xmin) {
    if (require_decay && !decays_on(*mdl.pair, Grid(*c.xmin, *c.xmax, probe_n)))
      throw NumericalError("domain too small: boundary wavefunction moduli exceed 1e-12 of the maximum");
    return Grid(*c.xmin, *c.xmax, n);
  }
  const double L = require_decay ? decaying_half_width(*mdl.pair, mdl.half_width, mdl.step, probe_n) : mdl.half_width;
  return Grid::symmetric(mdl.pair->x0(), L, n);
}

json check(const std::string& name, bool ok, double measured, double tol) {
  return json{{"name", name}, {"status", ok ? "pass" : "fail"}, {"measured", measured}, {"tolerance", tol}};
}

json skipped(const std::string& name, const std::string& why) {
  return json{{"name", name}, {"status", "skip"}, {"reason", why}};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

json envelope(const RunConfig& c, const Model* mdl) {
  json p{{"config", config_echo(c)}, {"timestamp", timestamp()}, {"version", kVersion}};
  if (mdl) p["model"] = mdl->label;
  return p;
}

json pair_meta(const SuperpotentialPair& pair) {
  return json{{"eps", pair.eps()}, {"x0", pair.x0()}, {"type", zero_class_name(pair.zero_class())}};
}

// ------------------------------------------------------------------ generate

struct Columns {
  std::vector<double> x;
  std::vector<cplx> v, p0, p1, w, w1;
};

Columns sample_columns(const SuperpotentialPair& pair, const Grid& g) {
  const PartnerPotentials pot(pair);
  Columns cols;
  cols.x = g.points();
  const auto s0 = psi0(pair, g), s1 = psi1(pair, g);
  cols.p0 = s0.values;
  cols.p1 = s1.values;
  for (double x : cols.x) {
    cols.v.push_back(pot.plus(x));
    cols.w.push_back(pair.W(x).v());
    cols.w1.push_back(pair.W1(x).v());
  }
  return cols;
}

void write_csv(std::ostream& os, const Columns& cols) {
  os << "x,re_vplus,im_vplus,re_psi0,im_psi0,re_psi1,im_psi1,re_w,im_w,re_w1,im_w1\n";
  for (std::size_t i = 0; i < cols.x.size(); ++i) {
    os << fmt17(cols.x[i]);
    for (const auto* col : {&cols.v, &cols.p0, &cols.p1, &cols.w, &cols.w1})
      os << ',' << fmt17((*col)[i].real()) << ',' << fmt17((*col)[i].imag());
    os << '\n';
  }
}

json columns_json(const Columns& cols) {
  auto split = [](const std::vector<cplx>& v) {
    std::vector<double> re, im;
    for (const auto& z : v) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    return json{{"re", re}, {"im", im}};
  };
  return json{{"x", cols.x}, {"vplus", split(cols.v)}, {"psi0", split(cols.p0)}, {"psi1", split(cols.p1)},
              {"w", split(cols.w)}, {"w1", split(cols.w1)}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConstructionError("cannot open output file " + path);
  f << text;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  const Model mdl = build_model(c);
  const Grid g = choose_grid(mdl, c, c.n.value_or(2001), false);
  const auto cols = sample_columns(*mdl.pair, g);
  json side = pair_meta(*mdl.pair);
  side["normalization"] = normalization_name(Normalization::MaxModulusOne);
  side["grid"] = json{{"xmin", g.xmin()}, {"xmax", g.xmax()}, {"n", g.size()}};
  side["model"] = mdl.label;
  side["schema"] = 1;
  if (c.format.value_or("csv") == "json") {
    side["data"] = columns_json(cols);
    const std::string text = side.dump(2) + "\n";
    if (c.out)
      write_file(*c.out, text);
    else
      out << text;
    return kExitPass;
  }
  std::ostringstream csv;
  write_csv(csv, cols);
  if (c.out) {
    write_file(*c.out, csv.str());
    write_file(*c.out + ".json", side.dump(2) + "\n");
  } else {
    out << csv.str();
  }
  return kExitPass;
}

// -------------------------------------------------------------------- verify

double constraint_measure(const SuperpotentialPair& pair, std::span<const double> xs) {
  double worst = 0.0;
  for (double x : xs) {
    const double scale = 1.0 + std::norm(pair.W(x).v()) + std::norm(pair.W1(x).v());
    worst = std::max(worst, std::abs(constraint_residual(pair, x)) / scale);
  }
  return worst;
}

bool wplus_is_pt_odd(const SuperpotentialPair& pair, std::span<const double> xs) {
  const double x0 = pair.x0();
  for (double x : xs) {
    const cplx w = pair.Wplus(x).v();
    if (std::abs(std::conj(pair.Wplus(2.0 * x0 - x).v()) + w) > 1e-12 * (1.0 + std::abs(w))) return false;
  }
  return true;
}

void add_residual_checks(json& checks, const std::string& prefix, const ComplexFn& V, const WavefunctionGrid& s0,
                         const WavefunctionGrid& s1, double tol) {
  const double r0 = schrodinger_residual(V, s0), r1 = schrodinger_residual(V, s1);
  checks.push_back(check(prefix + "residual_psi0", r0 <= tol, r0, tol));
  checks.push_back(check(prefix + "residual_psi1", r1 <= tol, r1, tol));
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Model mdl = build_model(c);
  const auto& pair = *mdl.pair;
  const PartnerPotentials pot(pair);
  const Grid g = choose_grid(mdl, c, c.n.value_or(4001), true);
  const auto probes = linspace(g.xmin(), g.xmax(), 1001);
  json checks = json::array();

  const double cres = constraint_measure(pair, probes);
  checks.push_back(check("constraint_residual", cres <= 1e-9, cres, 1e-9));

  const double half = std::min(pair.x0() - g.xmin(), g.xmax() - pair.x0());
  const auto pt_probes = linspace(pair.x0() - half, pair.x0() + half, 201);
  if (wplus_is_pt_odd(pair, pt_probes)) {
    const double d = pt_defect(pot.plus_fn(), pair.x0(), pt_probes);
    checks.push_back(check("pt_defect", d <= 1e-12, d, 1e-12));
  } else {
    checks.push_back(skipped("pt_defect", "W+ is not PT-odd about x0"));
  }

  const auto signs = asymptotic_sign_check(split_real_imag(pair), half);
  checks.push_back(check("sign_f", signs.f_ok, signs.f_ok ? 1.0 : 0.0, 1.0));
  checks.push_back(check("sign_f1", signs.f1_ok, signs.f1_ok ? 1.0 : 0.0, 1.0));

  const auto s0 = psi0(pair, g), s1 = psi1(pair, g);
  checks.push_back(check("decay_psi0", s0.decays(), s0.boundary_ratio(), 1e-12));
  checks.push_back(check("decay_psi1", s1.decays(), s1.boundary_ratio(), 1e-12));
  add_residual_checks(checks, "", pot.plus_fn(), s0, s1, c.tol_wave);

  ComplexFn oracle_v;
  std::function<cplx(double, int)> oracle_psi;
  std::vector<double> oracle_probes;
  if (mdl.osc) {
    const auto f = *mdl.osc;
    oracle_v = [f](double x) { return f.potential(x); };
    if (f.m() >= 1) oracle_psi = [f](double x, int level) { return f.psi(x, level); };
    oracle_probes = linspace(-6.0, 6.0, 201);
  } else if (mdl.hyp) {
    const auto f = *mdl.hyp;
    oracle_v = [f](double x) { return f.potential(x); };
    oracle_psi = [f](double x, int level) { return f.psi(x, level); };
    oracle_probes = linspace(-8.0, 8.0, 201);
  }
  if (oracle_v) {
    double worst = 0.0;
    for (double x : oracle_probes) {
      const cplx vo = oracle_v(x), vg = pot.plus(x);
      worst = std::max(worst, std::abs(vo - vg) / (1.0 + std::abs(vo)));
    }
    checks.push_back(check("oracle_potential", worst <= c.tol_oracle, worst, c.tol_oracle));
  }
  if (oracle_psi) {
    const auto o0 = sample_wavefunction([&](double x) { return oracle_psi(x, 0); }, g, 0.0);
    const auto o1 = sample_wavefunction([&](double x) { return oracle_psi(x, 1); }, g, pair.eps());
    add_residual_checks(checks, "oracle_", oracle_v, o0, o1, c.tol_wave);
    const ComplexFn one = [](double) { return cplx(1.0); };
    const double e0 = ratio_check(o0, s0, one);
    checks.push_back(check("oracle_equivalence_psi0", e0 <= 1e-8, e0, 1e-8));
    // psi1 vanishes at x0, so both sides are divided by W+ first.
    WavefunctionGrid q1 = o1, p1 = s1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const cplx wp = pair.Wplus(g.x(i)).v();
      if (std::abs(wp) > 1e-6) {
        q1.values[i] /= wp;
        p1.values[i] /= wp;
      }
    }
    const double e1b = ratio_check(q1, p1, one);
    checks.push_back(check("oracle_equivalence_psi1", e1b <= 1e-8, e1b, 1e-8));
  }
  if (mdl.osc && mdl.osc->m() >= 1) {
    const auto f = *mdl.osc;
    const double r = ratio_check(s1, s0, [f](double x) { return f.z(x); });
    checks.push_back(check("ratio_z", r <= 1e-8, r, 1e-8));
  }

  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch["status"] != "fail";
  json report{{"schema", 1}, {"kind", "verify"}, {"checks", checks}, {"pass", ok}, {"provenance", envelope(c, &mdl)}};
  report["pair"] = pair_meta(pair);
  report["grid"] = json{{"xmin", g.xmin()}, {"xmax", g.xmax()}, {"n", g.size()}};

  std::ostringstream os;
  if (c.format.value_or("json") == "csv") {
    os << "name,status,measured,tolerance\n";
    for (const auto& ch : checks) {
      os << ch["name"].get<std::string>() << ',' << ch["status"].get<std::string>() << ',';
      if (ch.contains("measured")) os << fmt17(ch["measured"].get<double>()) << ',' << fmt17(ch["tolerance"].get<double>());
      else os << ',';
      os << '\n';
    }
  } else {
    os << report.dump(2) << '\n';
  }
  if (c.out)
    write_file(*c.out, os.str());
  else
    out << os.str();
  return ok ? kExitPass : kExitFail;
}

// ------------------------------------------------------------------ spectrum

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const Model mdl = build_model(c);
  const auto& pair = *mdl.pair;
  const PartnerPotentials pot(pair);
  const ComplexFn V = pot.plus_fn();
  const Grid probe = choose_grid(mdl, c, 4001, true);
  std::size_t n;
  if (c.n) {
    n = *c.n;
  } else {
    const std::vector<WavefunctionGrid> ps{psi0(pair, probe), psi1(pair, probe)};
    n = resolved_grid_size(V, ps, probe.xmin(), probe.xmax());
  }
  const Grid g(probe.xmin(), probe.xmax(), n);
  std::vector<double> targets = c.targets;
  if (targets.empty()) targets = {0.0, pair.eps()};
  const auto rep = verify_energies(V, targets, g, c.tol_eig, c.tol_res);

  json rows = json::array();
  for (const auto& ch : rep.checks) {
    json r{{"target", ch.target},
           {"lambda_re", ch.result.lambda.real()},
           {"lambda_im", ch.result.lambda.imag()},
           {"abs_error", ch.error},
           {"abs_imag", ch.imag_error},
           {"residual", ch.result.residual},
           {"backward_error", ch.result.backward_error},
           {"iterations", ch.result.iterations},
           {"converged", ch.result.converged},
           {"shift_retried", ch.result.retried},
           {"shift_re", ch.shift.real()},
           {"status", ch.ok ? "pass" : "fail"}};
    if (c.order_check) {
      std::size_t nc = (n + 3) / 4;
      if (nc % 2 == 0) ++nc;
      nc = std::max<std::size_t>(nc, 101);
      const auto est = richardson_order(V, ch.target, Grid(g.xmin(), g.xmax(), nc));
      r["richardson_order"] = est.order ? json(*est.order) : json("converged");
    }
    rows.push_back(r);
  }
  json report{{"schema", 1},
              {"kind", "spectrum"},
              {"targets", rows},
              {"pass", rep.ok},
              {"tol_eig", c.tol_eig},
              {"tol_res", c.tol_res},
              {"grid", json{{"xmin", g.xmin()}, {"xmax", g.xmax()}, {"n", g.size()}}},
              {"pair", pair_meta(pair)},
              {"provenance", envelope(c, &mdl)}};
  std::ostringstream os;
  if (c.format.value_or("json") == "csv") {
    os << "target,lambda_re,lambda_im,residual,iterations,status\n";
    for (const auto& r : rows)
      os << fmt17(r["target"].get<double>()) << ',' << fmt17(r["lambda_re"].get<double>()) << ','
         << fmt17(r["lambda_im"].get<double>()) << ',' << fmt17(r["residual"].get<double>()) << ','
         << r["iterations"].get<std::size_t>() << ',' << r["status"].get<std::string>() << '\n';
  } else {
    os << report.dump(2) << '\n';
  }
  if (c.out)
    write_file(*c.out, os.str());
  else
    out << os.str();
  return rep.ok ? kExitPass : kExitFail;
}

// ----------------------------------------------------------------------- sl2

int cmd_sl2(const RunConfig& c, std::ostream& out) {
  if (c.degree < 6) throw ConstructionError("--degree must be >= 6");
  const double a = c.a.value_or(2.0), b = c.b.value_or(1.0);
  const auto T = t_operator_matrix(a, b, c.degree);
  const auto Q = quadratic_combination_matrix(a, b, c.degree);
  const int deg = c.degree - 2;
  const auto cmp = operator_equal(T, Q, deg, 1e-12);
  const auto comm = check_commutators(1.0, c.degree);
  const auto block = two_dim_block_spectrum(T);
  const double eig_err = std::max(std::abs(block.eigenvalues[0]), std::abs(block.eigenvalues[1] - a));
  json checks = json::array();
  checks.push_back(check("identity", cmp.equal, cmp.max_discrepancy, 1e-12));
  checks.push_back(check("commutator_j0_jplus", comm.j0_plus <= 1e-13, comm.j0_plus, 1e-13));
  checks.push_back(check("commutator_j0_jminus", comm.j0_minus <= 1e-13, comm.j0_minus, 1e-13));
  checks.push_back(check("commutator_jplus_jminus", comm.plus_minus <= 1e-13, comm.plus_minus, 1e-13));
  checks.push_back(check("block_invariance", block.leakage == 0.0, block.leakage, 0.0));
  checks.push_back(check("block_eigenvalues", eig_err == 0.0, eig_err, 0.0));
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch["status"] == "pass";
  json report{{"schema", 1},
              {"kind", "sl2"},
              {"a", a},
              {"b", b},
              {"degree", c.degree},
              {"input_degree", deg},
              {"max_discrepancy", cmp.max_discrepancy},
              {"eigenvalues", json::array({json{{"re", block.eigenvalues[0].real()}, {"im", block.eigenvalues[0].imag()}},
                                           json{{"re", block.eigenvalues[1].real()}, {"im", block.eigenvalues[1].imag()}}})},
              {"checks", checks},
              {"pass", ok},
              {"provenance", envelope(c, nullptr)}};
  const std::string text = report.dump(2) + "\n";
  if (c.out)
    write_file(*c.out, text);
  else
    out << text;
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Two-level quasi-exactly solvable potentials: construction and numerical verification", "qes"};
  app.set_config("--config", "", "Config file (key = value); command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* fam = app.add_option("--family", cfg.family, "Reference family")->check(CLI::IsMember({"oscillator", "hyperbolic"}));
  auto* wp = app.add_option("--wplus", cfg.wplus, "W+ expression in x");
  fam->excludes(wp);
  app.add_option("--m", cfg.m, "Oscillator exponent m")->check(CLI::NonNegativeNumber);
  app.add_option("--a", cfg.a, "Oscillator a (also sl2 a)");
  app.add_option("--b", cfg.b, "Oscillator b (also sl2 b)");
  app.add_option("--alpha", cfg.alpha, "Hyperbolic alpha, or m = 0 oscillator alpha");
  app.add_option("--c", cfg.c, "m = 0 oscillator c");
  app.add_option("--A", cfg.A, "Hyperbolic A");
  app.add_option("--B", cfg.B, "Hyperbolic B");
  app.add_option("--eps", cfg.eps, "Excitation energy eps");
  app.add_option("--x0", cfg.x0, "Zero of Re W+ (expression input)");
  app.add_option("--xmin", cfg.xmin);
  app.add_option("--xmax", cfg.xmax);
  app.add_option("--n", cfg.n, "Grid points (odd)");
  app.add_option("--tol-eig", cfg.tol_eig);
  app.add_option("--tol-res", cfg.tol_res);
  app.add_option("--tol-oracle", cfg.tol_oracle);
  app.add_option("--tol-wave", cfg.tol_wave);
  app.add_option("--targets", cfg.targets, "Target energies (default: 0 and eps)")->delimiter(',');
  app.add_flag("--order-check", cfg.order_check, "Report the observed discretization order");
  app.add_option("--degree", cfg.degree, "Monomial degree bound D for sl2");

  app.add_subcommand("generate", "Sample V+, psi0, psi1, W, W1 on a grid");
  app.add_subcommand("verify", "Run the construction checks");
  app.add_subcommand("spectrum", "Check that the target energies are eigenvalues");
  app.add_subcommand("sl2", "Check the sl(2) quadratic-combination identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    validate(cfg);
    if (cfg.command == "generate") return cmd_generate(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    return cmd_sl2(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const EvalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace qes
