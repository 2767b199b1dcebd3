#include "gwf/wavefront.hpp"

#include <cmath>
#include <limits>

namespace gwf {

namespace {

constexpr double kMagnitudeFloor = 1e-13;
constexpr double kResidualGate = 0.5;
constexpr int kMinUsableSamples = 4;
// Fitted orders above this are superpolynomial for every order we test;
// such rays (typically Gaussian tails still above the magnitude floor,
// whose curvature would fail the residual gate) collapse to the
// +infinity sentinel.
constexpr double kSuperpolyCutoff = 10.0;
// Polynomial decay r^{-s} is linear in log-log coordinates; Gaussian
// tails are strongly concave. Rays whose quadratic log-log fit has a
// second-order coefficient below this are likewise superpolynomial.
constexpr double kCurvatureCutoff = -0.5;

// Coefficient c2 of the least-squares quadratic c0 + c1 x + c2 x^2.
double quadratic_coefficient(const std::vector<double>& x,
                             const std::vector<double>& y) {
  Eigen::MatrixXd a(x.size(), 3);
  Eigen::VectorXd b(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(i, 0) = 1;
    a(i, 1) = x[i];
    a(i, 2) = x[i] * x[i];
    b(i) = y[i];
  }
  Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  return c(2);
}

// Offset stencil thickening a ray into a fixed-width tube: the center
// point plus +-w along each phase-space axis.
std::vector<RVec> tube_stencil(const RVec& center, double w) {
  std::vector<RVec> pts{center};
  for (int i = 0; i < center.size(); ++i) {
    RVec p = center;
    p(i) += w;
    pts.push_back(p);
    p(i) -= 2 * w;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

DirectionSet WavefrontReport::threshold(double s) const {
  DirectionSet set(angular_resolution);
  for (const auto& e : entries)
    if (e.reliable && std::isfinite(e.order) && e.order < s - 1e-9)
      set.add(e.dir);
  return set;
}

double WavefrontReport::unreliable_fraction() const {
  if (entries.empty()) return 0;
  int bad = 0;
  for (const auto& e : entries)
    if (!e.reliable) ++bad;
  return static_cast<double>(bad) / entries.size();
}

WavefrontReport decay_order(const SampledSignal& u, const WindowSpec& w,
                            const PhaseGrid& grid) {
  grid.validate_for(u);
  WavefrontReport report;
  report.angular_resolution = grid.directions.angular_resolution();

  const auto& radii = grid.radii;
  const int n_r = static_cast<int>(radii.size());

  for (const auto& dir : grid.directions.dirs()) {
    // One batched STFT evaluation per ray.
    std::vector<RVec> points;
    for (double r : radii)
      for (const auto& p : tube_stencil(r * dir, grid.tube_width))
        points.push_back(p);
    auto vals = stft(u, w, points);
    int stencil = static_cast<int>(points.size()) / n_r;

    std::vector<double> mag(n_r, 0.0);
    for (int k = 0; k < n_r; ++k)
      for (int j = 0; j < stencil; ++j)
        mag[k] = std::max(mag[k], std::abs(vals[k * stencil + j]));

    DirectionEstimate est;
    est.dir = dir;

    bool outer_dead = true;
    for (int k = n_r / 2; k < n_r; ++k)
      if (mag[k] >= kMagnitudeFloor) outer_dead = false;

    if (outer_dead) {
      est.order = std::numeric_limits<double>::infinity();
      est.residual = 0;
      est.reliable = true;
      est.usable_samples = 0;
      report.entries.push_back(std::move(est));
      continue;
    }

    std::vector<double> lx, ly;
    for (int k = 0; k < n_r; ++k) {
      if (mag[k] < kMagnitudeFloor) continue;
      lx.push_back(std::log(radii[k]));
      ly.push_back(std::log(mag[k]));
    }
    est.usable_samples = static_cast<int>(lx.size());
    if (est.usable_samples < kMinUsableSamples) {
      est.order = 0;
      est.reliable = false;
      report.entries.push_back(std::move(est));
      continue;
    }

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      double pred = my + slope * (lx[i] - mx);
      rss += (ly[i] - pred) * (ly[i] - pred);
    }
    est.order = -slope;
    est.residual = std::sqrt(rss / lx.size());
    if (est.order > kSuperpolyCutoff ||
        (est.residual > kResidualGate &&
         quadratic_coefficient(lx, ly) < kCurvatureCutoff)) {
      est.order = std::numeric_limits<double>::infinity();
      est.reliable = true;
    } else {
      est.reliable = est.residual <= kResidualGate;
    }
    report.entries.push_back(std::move(est));
  }
  return report;
}

DirectionSet wavefront_estimate(const SampledSignal& u, const WindowSpec& w,
                                const PhaseGrid& grid, double s,
                                double margin) {
  WavefrontReport report = decay_order(u, w, grid);
  DirectionSet core(report.angular_resolution);
  for (const auto& e : report.entries)
    if (e.reliable && std::isfinite(e.order) && e.order < s - margin)
      core.add(e.dir);
  // Closed-cone conservatism: dilate by one angular-resolution step.
  DirectionSet out(report.angular_resolution);
  for (const auto& dir : grid.directions.dirs())
    if (core.contains_within(dir, 1.0001 * report.angular_resolution))
      out.add(dir);
  return out;
}

WindowIndependenceReport window_independence_check(const SampledSignal& u,
                                                   const PhaseGrid& grid) {
  auto a = decay_order(u, WindowSpec::gaussian(), grid);
  auto b = decay_order(u, WindowSpec::hermite(1), grid);
  WindowIndependenceReport rep;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& ea = a.entries[i];
    const auto& eb = b.entries[i];
    if (!ea.reliable || !eb.reliable) continue;
    if (!std::isfinite(ea.order) || !std::isfinite(eb.order)) continue;
    rep.max_order_discrepancy =
        std::max(rep.max_order_discrepancy, std::abs(ea.order - eb.order));
    ++rep.compared_directions;
  }
  return rep;
}

}  // namespace gwf
