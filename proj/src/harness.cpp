#include "gwf/harness.hpp"

#include <cmath>

namespace gwf {

GridSpec GridSpec::defaults(int dim_d) {
  GridSpec g;
  g.rho = std::pow(2.0, 0.25);
  if (dim_d == 1) {
    g.n = 4096;
    g.half_extent = 64;
    g.directions = 64;
    g.r_min = 4;
    g.r_max = 24;
  } else if (dim_d == 2) {
    g.n = 256;
    g.half_extent = 16;
    g.directions = 642;
    g.r_min = 2;
    g.r_max = 8;
  } else {
    throw std::invalid_argument("GridSpec::defaults: d must be 1 or 2");
  }
  return g;
}

PhaseGrid GridSpec::make(int dim_d) const {
  PhaseGrid grid(r_min, r_max, rho, DirectionSet::uniform(dim_d, directions));
  grid.tube_width = tube_width;
  return grid;
}

namespace {

bool is_zero(const CMat& m, double tol = 1e-14) {
  return m.size() == 0 || m.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

SampledSignal propagate(const QuadraticHamiltonian& q, const SampledSignal& u,
                        double t, std::string* path_used) {
  int d = q.dim_d;
  if (u.dim_d != d)
    throw std::invalid_argument("propagate: signal/hamiltonian dimensions differ");
  CMat qxx = q.Q.topLeftCorner(d, d);
  CMat qxxi = q.Q.topRightCorner(d, d);
  CMat qxixi = q.Q.bottomRightCorner(d, d);

  auto set_path = [&](const char* p) {
    if (path_used) *path_used = p;
  };

  if (is_zero(q.Q)) {
    set_path("identity");
    return u;
  }
  if (is_zero(qxxi)) {
    if (is_zero(qxx)) {
      set_path("fourier_multiplier");
      return quadratic_fourier_multiplier(u, qxixi, t);
    }
    if (is_zero(qxixi)) {
      set_path("multiplication");
      return quadratic_multiplication(u, qxx, t);
    }
  }
  // Harmonic oscillator family Q = icI, c real.
  Complex c = q.Q(0, 0);
  if (std::abs(c.real()) <= 1e-14 &&
      is_zero(CMat(q.Q - c * CMat::Identity(2 * d, 2 * d)))) {
    set_path("fractional_fourier");
    return harmonic_oscillator_propagate(u, c.imag() * t);
  }
  throw UnsupportedPropagator(
      "propagate: Q is outside the implemented propagator family "
      "(supported: zero, [[A,0],[0,0]], [[0,0],[0,B]], icI)");
}

namespace {

// Core thresholding of a decay report; optionally dilated by one
// angular-resolution step. The input estimate is dilated (a larger input
// cone can only enlarge the predicted set), while the output estimate
// stays at its core so the one-step comparison tolerance is not spent
// twice.
DirectionSet estimate_from_report(const WavefrontReport& report,
                                  const PhaseGrid& grid, double s,
                                  double margin, bool dilate) {
  DirectionSet core(report.angular_resolution);
  for (const auto& e : report.entries)
    if (e.reliable && std::isfinite(e.order) && e.order < s - margin)
      core.add(e.dir);
  if (!dilate) return core;
  DirectionSet out(report.angular_resolution);
  for (const auto& dir : grid.directions.dirs())
    if (core.contains_within(dir, 1.0001 * report.angular_resolution))
      out.add(dir);
  return out;
}

}  // namespace

InclusionReport run_experiment(const Experiment& e) {
  QuadraticHamiltonian q(e.Q, e.dim_d);
  HamiltonData h = hamilton_matrix(q);
  PhaseGrid grid = e.grid.make(e.dim_d);
  SampledSignal u0 =
      build_signal(e.signal.name, e.signal.params, e.dim_d, e.grid.n,
                   e.grid.half_extent);

  WavefrontReport input_report = decay_order(u0, e.window, grid);
  // Observed and predicted are both discrete direction samples, each up
  // to one angular-resolution step away from the underlying cone, so
  // matching is allowed two steps.
  double tol = 2.0001 * grid.directions.angular_resolution();

  InclusionReport report;
  report.pass = true;
  report.inconclusive = false;

  for (double t : e.times) {
    SampledSignal ut = propagate(q, u0, t);
    WavefrontReport output_report = decay_order(ut, e.window, grid);
    for (double s : e.orders) {
      InclusionCase c;
      c.t = t;
      c.s = s;
      OrderBudget budget = order_budget(h, e.rule, s, e.epsilon);
      c.r = budget.r_out;
      c.observed_input =
          estimate_from_report(input_report, grid, s, 0.25, true);
      c.predicted =
          e.stub_empty_predicted
              ? DirectionSet(grid.directions.angular_resolution())
              : predicted_set(h, t, c.observed_input, budget);
      c.observed_output =
          estimate_from_report(output_report, grid, budget.r_out, 0.25, false);
      c.unreliable_fraction = output_report.unreliable_fraction();
      c.inconclusive = c.unreliable_fraction > 0.25;
      for (const auto& dir : c.observed_output.dirs()) {
        double angle = c.predicted.min_angle_to(dir);
        if (angle > tol) c.violations.push_back({dir, angle});
      }
      c.pass = !c.inconclusive && c.violations.empty();
      if (c.inconclusive) report.inconclusive = true;
      if (!c.pass) report.pass = false;
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

Experiment preset(const std::string& name, int dim_d,
                  const std::vector<double>& params) {
  Experiment e;
  e.dim_d = dim_d;
  e.grid = GridSpec::defaults(dim_d);
  int n2 = 2 * dim_d;
  CMat Q = CMat::Zero(n2, n2);

  if (name == "heat") {
    Q.bottomRightCorner(dim_d, dim_d) = CMat::Identity(dim_d, dim_d);
    e.signal = {"delta_plus_constant", {}};
    e.times = {0.25, 1.0};
    e.orders = {1.0};
    e.rule = BudgetRule::equal;
  } else if (name == "free_schrodinger") {
    Q.bottomRightCorner(dim_d, dim_d) =
        Complex(0, 1) * CMat::Identity(dim_d, dim_d);
    std::vector<double> chirp_params =
        dim_d == 1 ? std::vector<double>{1.0} : std::vector<double>{1, 0, 1};
    e.signal = {"chirp", chirp_params};
    e.times = {0.5};
    e.orders = {1.0};
    e.rule = BudgetRule::exact;
  } else if (name == "harmonic") {
    Q = Complex(0, 1) * CMat::Identity(n2, n2);
    e.signal = {"delta", {}};
    e.times = {std::numbers::pi / 8, std::numbers::pi / 4};
    e.orders = {1.0};
    e.rule = BudgetRule::exact;
  } else if (name == "damping") {
    RMat a;
    if (dim_d == 1) {
      a = RMat::Constant(1, 1, params.empty() ? 1.0 : params[0]);
    } else {
      a = RMat::Zero(2, 2);
      if (params.empty()) {
        a(0, 0) = 1;
      } else if (params.size() == 3) {
        a(0, 0) = params[0];
        a(0, 1) = a(1, 0) = params[1];
        a(1, 1) = params[2];
      } else {
        throw std::invalid_argument("damping preset: expected 3 params for d=2");
      }
    }
    Q.topLeftCorner(dim_d, dim_d) = a.cast<Complex>();
    e.signal = {"constant", {}};
    e.times = {1.0};
    e.orders = {1.0};
    e.rule = BudgetRule::equal;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  e.Q = Q;
  return e;
}

}  // namespace gwf
