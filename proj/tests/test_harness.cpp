#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gwf/harness.hpp"

using namespace gwf;

namespace {

constexpr double kPi = std::numbers::pi;

RVec dir2(double x, double xi) {
  RVec v(2);
  v << x, xi;
  return v.normalized();
}

}  // namespace

TEST_CASE("propagator dispatch") {
  auto u = build_signal("gaussian", {}, 1, 1024, 32.0);
  std::string path;

  QuadraticHamiltonian zero(CMat::Zero(2, 2), 1);
  auto same = propagate(zero, u, 1.0, &path);
  CHECK(path == "identity");
  CHECK(l2_distance(same, u) == 0.0);

  CMat qh = CMat::Zero(2, 2);
  qh(1, 1) = 1;
  propagate(QuadraticHamiltonian(qh, 1), u, 0.5, &path);
  CHECK(path == "fourier_multiplier");

  CMat qm = CMat::Zero(2, 2);
  qm(0, 0) = 1;
  propagate(QuadraticHamiltonian(qm, 1), u, 0.5, &path);
  CHECK(path == "multiplication");

  propagate(QuadraticHamiltonian(
                CMat(Complex(0, 1) * CMat::Identity(2, 2)), 1),
            u, 0.5, &path);
  CHECK(path == "fractional_fourier");

  // Coupled x-xi blocks are outside the implemented family.
  CMat qbad = CMat::Zero(2, 2);
  qbad(0, 0) = qbad(1, 1) = 1;
  qbad(0, 1) = qbad(1, 0) = 0.5;
  CHECK_THROWS_AS(propagate(QuadraticHamiltonian(qbad, 1), u, 0.5),
                  UnsupportedPropagator);
}

TEST_CASE("presets") {
  Experiment heat = preset("heat", 1);
  CHECK(heat.Q(1, 1) == Complex(1, 0));
  CHECK(heat.Q.cwiseAbs().sum() == doctest::Approx(1.0));
  CHECK(heat.rule == BudgetRule::equal);

  Experiment ho = preset("harmonic", 1);
  CHECK(ho.rule == BudgetRule::exact);
  CHECK((ho.Q - Complex(0, 1) * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);

  // damping(0) gives identity dynamics: any input passes trivially.
  Experiment d0 = preset("damping", 1, {0.0});
  d0.signal = {"delta", {}};
  InclusionReport r = run_experiment(d0);
  CHECK(r.pass);
  CHECK_FALSE(r.inconclusive);

  CHECK_THROWS(preset("bogus"));
}

TEST_CASE("heat experiment erases vertical singularities") {
  Experiment e = preset("heat", 1);
  InclusionReport r = run_experiment(e);
  REQUIRE(r.cases.size() == 2);  // t in {0.25, 1}
  CHECK(r.pass);
  for (const auto& c : r.cases) {
    CHECK(c.pass);
    CHECK(c.violations.empty());
    // observed output confined to the horizontal pair
    for (const auto& d : c.observed_output.dirs())
      CHECK(std::min(std::acos(std::clamp(d.dot(dir2(1, 0)), -1.0, 1.0)),
                     std::acos(std::clamp(d.dot(dir2(-1, 0)), -1.0, 1.0))) <=
            1.0001 * c.observed_output.angular_resolution());
  }
}

TEST_CASE("heat at t=0.5 keeps only the constant's singularities") {
  Experiment e = preset("heat", 1);
  e.times = {0.5};
  InclusionReport r = run_experiment(e);
  REQUIRE(r.cases.size() == 1);
  CHECK(r.pass);
  const auto& c = r.cases[0];
  CHECK(!c.observed_output.empty());
  CHECK(c.observed_output.min_angle_to(dir2(1, 0)) <= 1e-9);
  CHECK(c.observed_output.min_angle_to(dir2(-1, 0)) <= 1e-9);
  CHECK(c.observed_output.min_angle_to(dir2(0, 1)) >
        2 * c.observed_output.angular_resolution());
}

TEST_CASE("harmonic oscillator rotates the delta singularities") {
  Experiment e = preset("harmonic", 1);
  e.times = {kPi / 4};  // theta = pi/2: vertical -> horizontal
  InclusionReport r = run_experiment(e);
  REQUIRE(r.cases.size() == 1);
  CHECK(r.pass);
  const auto& c = r.cases[0];
  CHECK(!c.observed_output.empty());
  double step = 1.0001 * c.observed_output.angular_resolution();
  for (const auto& d : c.observed_output.dirs())
    CHECK(std::min(std::acos(std::clamp(d.dot(dir2(1, 0)), -1.0, 1.0)),
                   std::acos(std::clamp(d.dot(dir2(-1, 0)), -1.0, 1.0))) <=
          step);
}

TEST_CASE("free Schroedinger round trip (group property)") {
  Experiment e = preset("free_schrodinger", 1);
  PhaseGrid grid = e.grid.make(1);
  auto u0 = build_signal(e.signal.name, e.signal.params, 1, e.grid.n,
                         e.grid.half_extent);
  QuadraticHamiltonian q(e.Q, 1);
  auto fwd = propagate(q, u0, 0.5);
  auto back = propagate(q, fwd, -0.5);
  DirectionSet a = wavefront_estimate(u0, e.window, grid, 1.0);
  DirectionSet b = wavefront_estimate(back, e.window, grid, 1.0);
  double step = 1.0001 * grid.directions.angular_resolution();
  CHECK(DirectionSet::subset_within(a, b, step));
  CHECK(DirectionSet::subset_within(b, a, step));
}

TEST_CASE("heat absorbing state: constant input is stationary") {
  Experiment e = preset("heat", 1);
  e.signal = {"constant", {}};
  PhaseGrid grid = e.grid.make(1);
  QuadraticHamiltonian q(e.Q, 1);
  auto u0 = build_signal("constant", {}, 1, e.grid.n, e.grid.half_extent);
  DirectionSet ref = wavefront_estimate(u0, e.window, grid, 1.0);
  for (double t : {0.25, 0.5, 1.0}) {
    auto ut = propagate(q, u0, t);
    DirectionSet obs = wavefront_estimate(ut, e.window, grid, 1.0);
    CHECK(obs.size() == ref.size());
    CHECK(DirectionSet::subset_within(obs, ref, 1e-9));
    CHECK(DirectionSet::subset_within(ref, obs, 1e-9));
  }
}

TEST_CASE("every preset passes on its default signal") {
  // Each preset applied to its default d=1 signal passes outright.
  for (const char* name : {"heat", "free_schrodinger", "harmonic", "damping"}) {
    Experiment e = preset(name, 1);
    InclusionReport r = run_experiment(e);
    CHECK(r.pass);
    CHECK_FALSE(r.inconclusive);
  }
}

TEST_CASE("forced violation path") {
  Experiment e = preset("heat", 1);
  e.times = {0.25};
  e.stub_empty_predicted = true;
  InclusionReport r = run_experiment(e);
  CHECK_FALSE(r.pass);
  REQUIRE(!r.cases.empty());
  CHECK(!r.cases[0].violations.empty());
  for (const auto& v : r.cases[0].violations)
    CHECK(v.angle_to_predicted > 0);
}

TEST_CASE("undersized radial grid is inconclusive, not pass") {
  Experiment e = preset("heat", 1);
  e.times = {0.25};
  e.grid.r_min = 2.0;
  e.grid.r_max = 3.0;
  e.grid.rho = 1.2;  // only 3 radii: every live ray is unreliable
  InclusionReport r = run_experiment(e);
  CHECK(r.inconclusive);
}
