// wfprop: wave front analysis and quadratic-Hamiltonian propagation CLI.
//
// Exit codes: 0 success / inclusion verified, 1 inclusion violation,
// 2 malformed input, 3 phase-space resolution violation, 4 unsupported
// propagator, 5 inconclusive verification.

#include <CLI11.hpp>
#include <iostream>

#include "gwf/io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitResolution = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitInconclusive = 5;

struct CommonOpts {
  int grid_n = 0;
  double extent = 0;
  std::string window = "gaussian";
  int directions = 0;
  double tolerance_angle = 0;
  std::string output;
  unsigned seed = 0;  // reserved; all code paths are deterministic
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--grid-n", o.grid_n, "grid nodes per axis (power of two)");
  cmd->add_option("--extent", o.extent, "half extent L of the spatial grid");
  cmd->add_option("--window", o.window, "analysis window: gaussian|hermite_k");
  cmd->add_option("--directions", o.directions,
                  "number of phase-space directions");
  cmd->add_option("--tolerance-angle", o.tolerance_angle,
                  "angular tolerance in radians (default: grid resolution)");
  cmd->add_option("--output", o.output, "output file path");
  cmd->add_option("--seed", o.seed, "seed (reserved)");
}

gwf::WindowSpec parse_window(const std::string& w) {
  if (w == "gaussian") return gwf::WindowSpec::gaussian();
  if (w.rfind("hermite_", 0) == 0)
    return gwf::WindowSpec::hermite(std::stoi(w.substr(8)));
  throw std::invalid_argument("unknown window \"" + w + "\"");
}

gwf::GridSpec grid_for(const CommonOpts& o, int dim_d) {
  gwf::GridSpec g = gwf::GridSpec::defaults(dim_d);
  if (o.grid_n > 0) g.n = o.grid_n;
  if (o.extent > 0) g.half_extent = o.extent;
  if (o.directions > 0) g.directions = o.directions;
  return g;
}

void emit(const gwf::Json& j, const std::string& output) {
  if (output.empty())
    std::cout << j.dump(2) << '\n';
  else
    gwf::write_json_file(j, output);
}

int run_analyze(const std::string& signal_path, const CommonOpts& o,
                const std::vector<double>& orders,
                const std::string& spectrogram_path) {
  gwf::SampledSignal u;
  gwf::WindowSpec win = gwf::WindowSpec::gaussian();
  try {
    u = gwf::load_signal(signal_path);
    win = parse_window(o.window);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }

  gwf::GridSpec gs = grid_for(o, u.dim_d);
  gs.n = u.n;
  gs.half_extent = u.half_extent;
  gwf::WavefrontReport report;
  try {
    gwf::PhaseGrid grid = gs.make(u.dim_d);
    grid.validate_for(u);
    report = gwf::decay_order(u, win, grid);
  } catch (const std::exception& ex) {
    std::cerr << "resolution error: " << ex.what() << '\n';
    return kExitResolution;
  }

  if (!spectrogram_path.empty())
    gwf::write_spectrogram_csv(u, win, spectrogram_path);
  emit(gwf::wavefront_report_to_json(report, orders), o.output);
  return kExitPass;
}

int run_singular_space(const std::string& ham_path, const CommonOpts& o) {
  gwf::Json out;
  try {
    gwf::QuadraticHamiltonian q = gwf::load_hamiltonian(ham_path);
    gwf::HamiltonData h = gwf::hamilton_matrix(q);
    gwf::Subspace s = gwf::singular_space(h);
    out["singular_space"] = gwf::subspace_to_json(s);
    out["ker_re_F"] = gwf::subspace_to_json(gwf::kernel(h.reF));
    out["normal"] = h.normal;
    bool exact = h.reF.cwiseAbs().maxCoeff() <= 1e-12;
    out["rule"] = exact ? "exact" : (h.normal ? "equal" : "minus8d");
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  emit(out, o.output);
  return kExitPass;
}

int run_propagate(const std::string& signal_path, const std::string& ham_path,
                  double t, const CommonOpts& o) {
  gwf::SampledSignal u;
  gwf::QuadraticHamiltonian q(gwf::CMat::Zero(2, 2), 1);
  try {
    u = gwf::load_signal(signal_path);
    q = gwf::load_hamiltonian(ham_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  std::string path_used;
  gwf::SampledSignal ut;
  try {
    ut = gwf::propagate(q, u, t, &path_used);
  } catch (const gwf::UnsupportedPropagator& ex) {
    std::cerr << "unsupported propagator: " << ex.what() << '\n';
    return kExitUnsupported;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  std::string out = o.output.empty() ? "propagated.json" : o.output;
  gwf::save_signal(ut, out);
  std::cerr << "propagator path: " << path_used << '\n';
  return kExitPass;
}

int run_predict(const std::string& ham_path, const std::string& dirs_path,
                double t, double s, const std::string& rule_name,
                const CommonOpts& o) {
  gwf::Json out;
  try {
    gwf::QuadraticHamiltonian q = gwf::load_hamiltonian(ham_path);
    gwf::HamiltonData h = gwf::hamilton_matrix(q);
    gwf::Json dj = gwf::read_json_file(dirs_path);
    double res = o.tolerance_angle > 0
                     ? o.tolerance_angle
                     : dj.value("angular_resolution", 0.1);
    gwf::DirectionSet input(res);
    for (const auto& row : dj.at("directions")) {
      gwf::RVec v(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) v(i) = row[i].get<double>();
      input.add(v);
    }
    gwf::BudgetRule rule = gwf::budget_rule_from_string(rule_name);
    gwf::OrderBudget budget = gwf::order_budget(h, rule, s);
    out["r"] = budget.r_out;
    out["s"] = s;
    out["t"] = t;
    out["rule"] = gwf::to_string(rule);
    out["predicted"] =
        gwf::direction_set_to_json(gwf::predicted_set(h, t, input, budget));
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  emit(out, o.output);
  return kExitPass;
}

int run_verify(const std::string& experiment_path, const CommonOpts& o) {
  gwf::Experiment e;
  try {
    e = gwf::load_experiment(experiment_path);
    if (o.grid_n > 0) e.grid.n = o.grid_n;
    if (o.extent > 0) e.grid.half_extent = o.extent;
    if (o.directions > 0) e.grid.directions = o.directions;
    if (o.window != "gaussian") e.window = parse_window(o.window);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  gwf::InclusionReport report;
  try {
    report = gwf::run_experiment(e);
  } catch (const gwf::UnsupportedPropagator& ex) {
    std::cerr << "unsupported propagator: " << ex.what() << '\n';
    return kExitUnsupported;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  emit(gwf::inclusion_report_to_json(report), o.output);
  if (report.inconclusive) return kExitInconclusive;
  return report.pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wave front set estimation and quadratic propagation"};
  app.require_subcommand(1);

  CommonOpts opts;

  std::string signal_path, ham_path, dirs_path, experiment_path;
  std::string spectrogram_path, rule_name = "equal";
  std::vector<double> orders = {1.0};
  double t = 0, s = 1;

  CLI::App* analyze = app.add_subcommand("analyze", "estimate wave front set");
  analyze->add_option("signal", signal_path, "signal file")->required();
  analyze->add_option("--orders", orders, "threshold orders s");
  analyze->add_option("--spectrogram", spectrogram_path, "CSV output path");
  add_common(analyze, opts);

  CLI::App* sing = app.add_subcommand("singular-space",
                                      "singular space of a Hamiltonian");
  sing->add_option("hamiltonian", ham_path, "hamiltonian JSON")->required();
  add_common(sing, opts);

  CLI::App* prop = app.add_subcommand("propagate", "apply e^{-t q^w}");
  prop->add_option("signal", signal_path, "signal file")->required();
  prop->add_option("hamiltonian", ham_path, "hamiltonian JSON")->required();
  prop->add_option("--time,-t", t, "propagation time")->required();
  add_common(prop, opts);

  CLI::App* pred = app.add_subcommand("predict", "predicted singularity cone");
  pred->add_option("hamiltonian", ham_path, "hamiltonian JSON")->required();
  pred->add_option("input-directions", dirs_path, "input direction set JSON")
      ->required();
  pred->add_option("--time,-t", t, "propagation time")->required();
  pred->add_option("--order,-s", s, "input order s");
  pred->add_option("--rule", rule_name, "exact|equal|minus4d|minus8d");
  add_common(pred, opts);

  CLI::App* verify = app.add_subcommand("verify", "run an inclusion experiment");
  verify->add_option("experiment", experiment_path, "experiment JSON")
      ->required();
  add_common(verify, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed())
      return run_analyze(signal_path, opts, orders, spectrogram_path);
    if (sing->parsed()) return run_singular_space(ham_path, opts);
    if (prop->parsed()) return run_propagate(signal_path, ham_path, t, opts);
    if (pred->parsed())
      return run_predict(ham_path, dirs_path, t, s, rule_name, opts);
    if (verify->parsed()) return run_verify(experiment_path, opts);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitMalformed;
  }
  return kExitMalformed;
}
