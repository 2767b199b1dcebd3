// Acceptance suite: one pass/fail line per criterion.
// Usage: acceptance <path-to-wfprop-binary>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "gwf/io.hpp"

using namespace gwf;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::cout << "criterion " << criterion << " (" << name << "): "
            << (pass ? "PASS" : "FAIL");
  if (!pass && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

QuadraticHamiltonian heat_q(int d) {
  CMat q = CMat::Zero(2 * d, 2 * d);
  q.bottomRightCorner(d, d) = CMat::Identity(d, d);
  return QuadraticHamiltonian(q, d);
}

// Normal-case sample: Q = (a + ib) G with G real symmetric PSD, so
// Re F and Im F are both multiples of J G and commute.
QuadraticHamiltonian random_normal_q(int d, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  RMat a(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i)
    for (int j = 0; j < 2 * d; ++j) a(i, j) = u(rng);
  RMat g = a.transpose() * a;
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  Complex scale(pos(rng), u(rng));
  return QuadraticHamiltonian(CMat(scale * g.cast<Complex>()), d);
}

// Generic sample with Re Q PSD (independent real and imaginary parts).
QuadraticHamiltonian random_q(int d, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  int n = 2 * d;
  RMat a(n, n), im(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) im(i, j) = im(j, i) = u(rng);
  RMat re = a.transpose() * a;
  CMat q = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  q /= q.norm();  // keep e^{-2itF} well conditioned for t up to 2
  return QuadraticHamiltonian(q, d);
}

RVec dir2(double x, double xi) {
  RVec v(2);
  v << x, xi;
  return v.normalized();
}

double angle_to_line(const RVec& d, const RVec& line_dir) {
  double c = std::clamp(std::abs(d.dot(line_dir.normalized())), 0.0, 1.0);
  return std::acos(c);
}

SampledSignal builtin1(const std::string& name,
                       const std::vector<double>& params = {}) {
  return build_signal(name, params, 1, 4096, 64.0);
}

void criterion1() {
  bool pass = true;
  std::string detail;

  for (int d : {1, 2}) {
    Subspace s = singular_space(hamilton_matrix(heat_q(d)));
    RMat expect = RMat::Zero(2 * d, d);  // R^d x {0}
    expect.topRows(d) = RMat::Identity(d, d);
    Subspace ref{expect};
    if (s.dim() != d || s.containment_residual(ref) > 1e-10 ||
        ref.containment_residual(s) > 1e-10) {
      pass = false;
      detail = "heat singular space mismatch (d=" + std::to_string(d) + ")";
    }
  }

  std::mt19937 rng(101);
  for (int trial = 0; trial < 50 && pass; ++trial) {
    int d = 1 + trial % 2;
    HamiltonData h = hamilton_matrix(random_normal_q(d, rng));
    Subspace s = singular_space(h);
    Subspace oracle = Subspace::full(2 * d);
    RMat imp = RMat::Identity(2 * d, 2 * d);
    for (int j = 0; j < 2 * d; ++j) {
      oracle = intersect(oracle, kernel(RMat(h.reF * imp)));
      imp = imp * h.imF;
    }
    if (s.dim() != oracle.dim() || s.containment_residual(oracle) > 1e-8 ||
        oracle.containment_residual(s) > 1e-8) {
      pass = false;
      detail = "random normal-case trial " + std::to_string(trial);
    }
  }
  report(1, "singular space correctness", pass, detail);
}

void criterion2() {
  bool pass = true;
  std::string detail;
  std::mt19937 rng(202);
  for (int trial = 0; trial < 20 && pass; ++trial) {
    int d = 1 + trial % 2;
    HamiltonData h = hamilton_matrix(random_q(d, rng));
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
      CMat tmat = matrix_exponential(CMat(Complex(0, -2 * t) * h.F));
      if (!is_symplectic(tmat, 1e-8) || !is_positive_symplectic(tmat, 1e-8)) {
        pass = false;
        detail = "trial " + std::to_string(trial) + " t=" + std::to_string(t);
        break;
      }
    }
  }
  report(2, "symplecticity and positivity of e^{-2itF}", pass, detail);
}

void criterion3() {
  bool pass = true;
  std::string detail;
  PhaseGrid grid = PhaseGrid::defaults(1);
  double step = 1.0001 * grid.directions.angular_resolution();
  auto w = WindowSpec::gaussian();

  auto rd = decay_order(builtin1("delta"), w, grid);
  DirectionSet d1 = rd.threshold(1.0);
  if (d1.size() != 2 || d1.min_angle_to(dir2(0, 1)) > 1e-9 ||
      d1.min_angle_to(dir2(0, -1)) > 1e-9 || !rd.threshold(-0.5).empty()) {
    pass = false;
    detail = "delta";
  }

  auto rc = decay_order(builtin1("constant"), w, grid);
  DirectionSet c1 = rc.threshold(1.0);
  if (c1.size() != 2 || c1.min_angle_to(dir2(1, 0)) > 1e-9) {
    pass = false;
    detail = "constant";
  }

  for (double a : {1.0, -1.0}) {
    DirectionSet set = wavefront_estimate(builtin1("chirp", {a}), w, grid, 1.0);
    bool ok = !set.empty() && set.min_angle_to(dir2(1, a)) <= step &&
              set.min_angle_to(dir2(-1, -a)) <= step;
    for (const auto& d : set.dirs())
      ok = ok && angle_to_line(d, dir2(1, a)) <= step;
    if (!ok) {
      pass = false;
      detail = "chirp a=" + std::to_string(a);
    }
  }

  auto rg = decay_order(builtin1("gaussian"), w, grid);
  for (double s : {-1.0, 0.0, 1.0, 2.0, 4.0})
    if (!rg.threshold(s).empty()) {
      pass = false;
      detail = "gaussian";
    }
  report(3, "reference wave front sets (d=1)", pass, detail);
}

void criterion4() {
  bool pass = true;
  std::string detail;
  Experiment e = preset("heat", 1);
  InclusionReport r = run_experiment(e);
  if (!r.pass || r.inconclusive || r.cases.size() != 2) {
    pass = false;
    detail = "experiment did not pass";
  }
  for (const auto& c : r.cases) {
    if (!c.violations.empty()) pass = false;
    for (const auto& d : c.observed_output.dirs())
      if (angle_to_line(d, dir2(1, 0)) >
          1.0001 * c.observed_output.angular_resolution()) {
        pass = false;
        detail = "output direction off the horizontal pair";
      }
  }

  // Vertical order jumps from ~0 to the superpolynomial sentinel.
  PhaseGrid grid = e.grid.make(1);
  auto u0 = build_signal(e.signal.name, e.signal.params, 1, e.grid.n,
                         e.grid.half_extent);
  auto ut = propagate(QuadraticHamiltonian(e.Q, 1), u0, 0.25);
  auto rin = decay_order(u0, e.window, grid);
  auto rout = decay_order(ut, e.window, grid);
  for (std::size_t i = 0; i < rin.entries.size(); ++i) {
    if (std::abs(std::abs(rin.entries[i].dir(1)) - 1.0) > 1e-9) continue;
    if (std::abs(rin.entries[i].order) > 0.25 ||
        !std::isinf(rout.entries[i].order)) {
      pass = false;
      detail = "vertical order did not jump to the sentinel";
    }
  }
  report(4, "heat propagation inclusion (normal case)", pass, detail);
}

void criterion5() {
  bool pass = true;
  std::string detail;

  // Harmonic oscillator: WF(delta) rotates by theta = 2t.
  Experiment ho = preset("harmonic", 1);
  ho.times = {kPi / 8, kPi / 4};  // theta in {pi/4, pi/2}
  InclusionReport r = run_experiment(ho);
  if (!r.pass || r.inconclusive) {
    pass = false;
    detail = "harmonic experiment failed";
  }
  for (std::size_t i = 0; i < r.cases.size(); ++i) {
    double theta = 2 * r.cases[i].t;
    // e^{2tJ} rotates (0,1) to (sin, cos).
    RVec target = dir2(std::sin(theta), std::cos(theta));
    double step = 1.0001 * r.cases[i].observed_output.angular_resolution();
    if (r.cases[i].observed_output.empty()) pass = false;
    for (const auto& d : r.cases[i].observed_output.dirs())
      if (angle_to_line(d, target) > step) {
        pass = false;
        detail = "harmonic observed direction off the rotated axis";
      }
  }

  // Free Schroedinger maps the chirp ridge (1,1) to (1+2t*1, 1) = (2,1).
  Experiment fs_e = preset("free_schrodinger", 1);
  InclusionReport rf = run_experiment(fs_e);
  if (!rf.pass || rf.inconclusive || rf.cases.size() != 1) {
    pass = false;
    detail = "free Schroedinger experiment failed";
  } else {
    double step = 1.0001 * rf.cases[0].observed_output.angular_resolution();
    if (rf.cases[0].observed_output.empty()) pass = false;
    for (const auto& d : rf.cases[0].observed_output.dirs())
      if (angle_to_line(d, dir2(2, 1)) > step) {
        pass = false;
        detail = "free Schroedinger observed direction off the mapped line";
      }
  }
  report(5, "exact case (Re Q = 0) flows", pass, detail);
}

void criterion6() {
  bool pass = true;
  std::string detail;
  Experiment e = preset("damping", 2);  // A = diag(1,0), u0 = 1, t = 1
  InclusionReport r = run_experiment(e);
  if (!r.pass || r.inconclusive || r.cases.size() != 1 ||
      !r.cases[0].violations.empty()) {
    pass = false;
    detail = "experiment did not pass cleanly";
  } else {
    // Observed set confined to Ker A x {0} = span{(0,1,0,0)} directions.
    RVec axis(4);
    axis << 0, 1, 0, 0;
    double tol = 2.0001 * r.cases[0].observed_output.angular_resolution();
    if (r.cases[0].observed_output.empty()) pass = false;
    for (const auto& d : r.cases[0].observed_output.dirs())
      if (angle_to_line(d, axis) > tol) {
        pass = false;
        detail = "observed direction outside the Ker A cone";
      }
  }
  report(6, "damping example (d=2)", pass, detail);
}

void criterion7() {
  bool pass = true;
  std::string detail;

  struct Case {
    const char* name;
    QuadraticHamiltonian q;
  };
  CMat qd = CMat::Zero(2, 2);
  qd(0, 0) = 1;
  CMat qf = CMat::Zero(2, 2);
  qf(1, 1) = Complex(0, 1);
  std::vector<Case> cases = {
      {"heat", heat_q(1)},
      {"free_schrodinger", QuadraticHamiltonian(qf, 1)},
      {"harmonic",
       QuadraticHamiltonian(CMat(Complex(0, 1) * CMat::Identity(2, 2)), 1)},
      {"damping", QuadraticHamiltonian(qd, 1)},
  };
  auto g0 = GaussianState::standard(1);
  auto u0 = sample_gaussian(g0, 4096, 64.0);
  for (const auto& c : cases)
    for (double t : {0.1, 0.5, 1.0}) {
      auto grid_out = propagate(c.q, u0, t);
      auto exact = sample_gaussian(gaussian_propagate(g0, c.q, t), 4096, 64.0);
      double rel = l2_distance(grid_out, exact) / exact.l2_norm();
      if (rel > 1e-6) {
        pass = false;
        detail = std::string(c.name) + " t=" + std::to_string(t) +
                 " rel=" + std::to_string(rel);
      }
    }

  auto k = heat_propagate(builtin1("delta"), 1.0);
  SampledSignal oracle(1, 4096, 64.0);
  for (int j = 0; j < 4096; ++j) {
    double x = oracle.coord(j);
    oracle.values[j] = std::exp(-x * x / 4) / std::sqrt(4 * kPi);
  }
  if (l2_distance(k, oracle) / oracle.l2_norm() > 1e-6) {
    pass = false;
    detail = "heat kernel mismatch";
  }
  report(7, "cross-oracle propagator coherence", pass, detail);
}

void criterion8() {
  bool pass = true;
  std::string detail;
  PhaseGrid grid = PhaseGrid::defaults(1);
  double step = 1.0001 * grid.directions.angular_resolution();
  std::vector<double> orders = {-1.0, 0.0, 0.5, 1.0, 2.0, 4.0};

  struct Sig {
    const char* name;
    std::vector<double> params;
  };
  std::vector<Sig> five = {{"delta", {}},
                           {"constant", {}},
                           {"plane_wave", {4.0}},
                           {"chirp", {1.0}},
                           {"gaussian", {}}};

  for (const auto& sig : five) {
    auto u = builtin1(sig.name, sig.params);
    auto rep = decay_order(u, WindowSpec::gaussian(), grid);
    for (std::size_t i = 0; i + 1 < orders.size(); ++i)
      if (!DirectionSet::subset_within(rep.threshold(orders[i]),
                                       rep.threshold(orders[i + 1]), 1e-9)) {
        pass = false;
        detail = std::string("monotonicity: ") + sig.name;
      }

    DirectionSet a = wavefront_estimate(u, WindowSpec::gaussian(), grid, 1.0);
    DirectionSet b = wavefront_estimate(u, WindowSpec::hermite(1), grid, 1.0);
    if (!DirectionSet::subset_within(a, b, step) ||
        !DirectionSet::subset_within(b, a, step)) {
      pass = false;
      detail = std::string("window independence: ") + sig.name;
    }
  }

  // Translation invariance for lattice z0 with |z0| <= L/4.
  struct Tr {
    const char* name;
    std::vector<double> params;
    double x0, xi0;
  };
  for (const Tr& c : std::initializer_list<Tr>{
           {"delta", {}, 0.0, 8.0},
           {"gaussian", {}, 16.0, 0.0},
           {"constant", {}, 16.0, 0.0},
           {"chirp", {1.0}, 8.0, 8.0},
       }) {
    auto u = builtin1(c.name, c.params);
    RVec z0(2);
    z0 << c.x0, c.xi0;
    auto v = phase_space_translate(u, z0);
    DirectionSet a = wavefront_estimate(u, WindowSpec::gaussian(), grid, 1.0);
    DirectionSet b = wavefront_estimate(v, WindowSpec::gaussian(), grid, 1.0);
    if (!DirectionSet::subset_within(a, b, step) ||
        !DirectionSet::subset_within(b, a, step)) {
      pass = false;
      detail = std::string("translation invariance: ") + c.name;
    }
  }
  report(8, "estimator properties", pass, detail);
}

void criterion9() {
  bool pass = true;
  std::string detail;
  auto u = builtin1("delta_plus_constant");
  for (double t1 : {0.1, 0.4})
    for (double t2 : {0.1, 0.4}) {
      double err =
          l2_distance(heat_propagate(heat_propagate(u, t1), t2),
                      heat_propagate(u, t1 + t2));
      if (err > 1e-9) {
        pass = false;
        detail = "err=" + std::to_string(err);
      }
    }
  report(9, "heat semigroup property", pass, detail);
}

int run_cmd(const std::string& cmd) {
  int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return rc < 0 ? rc : (rc >> 8) & 0xff;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion10(const std::string& wfprop) {
  bool pass = true;
  std::string detail;
  fs::path tmp = fs::temp_directory_path() / "gwf_acceptance_cli";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  auto f = [&](const std::string& n) { return (tmp / n).string(); };

  // Inputs.
  write_json_file(hamiltonian_to_json(heat_q(1)), f("heat.json"));
  Json sig;
  sig["d"] = 1;
  sig["N"] = 4096;
  sig["L"] = 64.0;
  sig["builtin"] = {{"name", "delta"}};
  write_json_file(sig, f("delta.json"));
  Json exp;
  exp["preset"] = "heat";
  exp["d"] = 1;
  write_json_file(exp, f("exp.json"));
  Json dirs;
  dirs["angular_resolution"] = 0.1;
  dirs["directions"] = Json::array({Json::array({0.0, 1.0})});
  write_json_file(dirs, f("dirs.json"));

  // Determinism: run every subcommand twice, require identical bytes.
  struct Cmd {
    std::string args;
    std::string out;
    int expect;
  };
  std::vector<Cmd> cmds = {
      {"analyze " + f("delta.json") + " --orders 1", "analyze.json", 0},
      {"singular-space " + f("heat.json"), "sing.json", 0},
      {"propagate " + f("delta.json") + " " + f("heat.json") + " --time 1",
       "prop.json", 0},
      {"predict " + f("heat.json") + " " + f("dirs.json") +
           " --time 0.5 --order 1 --rule equal",
       "pred.json", 0},
      {"verify " + f("exp.json"), "verify.json", 0},
  };
  fs::create_directories(tmp / "run1");
  fs::create_directories(tmp / "run2");
  for (const auto& c : cmds) {
    for (int run = 1; run <= 2; ++run) {
      fs::path out = tmp / ("run" + std::to_string(run)) / c.out;
      int rc = run_cmd(wfprop + " " + c.args + " --output " + out.string());
      if (rc != c.expect) {
        pass = false;
        detail = c.out + " exit " + std::to_string(rc);
      }
    }
    if (slurp(tmp / "run1" / c.out) != slurp(tmp / "run2" / c.out)) {
      pass = false;
      detail = c.out + " not byte-identical";
    }
  }
  // Propagated payloads byte-identical too.
  if (slurp(tmp / "run1/prop.bin") != slurp(tmp / "run2/prop.bin") ||
      slurp(tmp / "run1/prop.bin").empty()) {
    pass = false;
    detail = "payload not byte-identical";
  }

  // Exit-code contract.
  auto expect_code = [&](const std::string& args, int code,
                         const std::string& what) {
    int rc = run_cmd(wfprop + " " + args);
    if (rc != code) {
      pass = false;
      detail = what + ": got " + std::to_string(rc) + " want " +
               std::to_string(code);
    }
  };

  expect_code("analyze " + f("missing.json"), 2, "malformed input");

  Json small = sig;
  small["N"] = 256;
  small["L"] = 8.0;
  write_json_file(small, f("small.json"));
  expect_code("analyze " + f("small.json"), 3, "resolution violation");

  Json negq;
  negq["d"] = 1;
  negq["Q_re"] = Json::array({Json::array({-1.0, 0.0}), Json::array({0.0, 0.0})});
  write_json_file(negq, f("negq.json"));
  expect_code("singular-space " + f("negq.json"), 2, "indefinite Q");

  Json coupled;
  coupled["d"] = 1;
  coupled["Q_re"] =
      Json::array({Json::array({1.0, 0.5}), Json::array({0.5, 1.0})});
  write_json_file(coupled, f("coupled.json"));
  expect_code("propagate " + f("delta.json") + " " + f("coupled.json") +
                  " --time 1 --output " + f("x.json"),
              4, "unsupported propagator");

  Json stub = exp;
  stub["times"] = Json::array({0.25});
  stub["stub_empty_predicted"] = true;
  write_json_file(stub, f("stub.json"));
  expect_code("verify " + f("stub.json") + " --output " + f("v1.json"), 1,
              "forced violation");

  Json tiny = exp;
  tiny["times"] = Json::array({0.25});
  tiny["grid"] = Json{{"r_min", 2.0}, {"r_max", 3.0}, {"rho", 1.2}};
  write_json_file(tiny, f("tiny.json"));
  expect_code("verify " + f("tiny.json") + " --output " + f("v5.json"), 5,
              "inconclusive");

  fs::remove_all(tmp);
  report(10, "CLI determinism and exit codes", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (argc > 1) {
    criterion10(argv[1]);
  } else {
    report(10, "CLI determinism and exit codes", false, "wfprop path missing");
  }
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                : "FAILURES: " + std::to_string(g_failures))
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
