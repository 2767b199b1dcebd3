#include "gwf/stft.hpp"

#include <cmath>
#include <stdexcept>

namespace gwf {

namespace {

constexpr double kWindowReach = 10.0;  // |phi| < 1e-20 beyond this

double hermite_axis(int k, double x) {
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
  if (k == 0) return h0;
  double h1 = std::sqrt(2.0) * x * h0;
  for (int j = 1; j < k; ++j) {
    double h2 = std::sqrt(2.0 / (j + 1)) * x * h1 -
                std::sqrt(double(j) / (j + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace

double window_axis_value(const WindowSpec& w, int axis, double y) {
  if (w.kind == WindowSpec::Kind::gaussian || axis > 0)
    return hermite_axis(0, y);
  return hermite_axis(w.hermite_k, y);
}

double window_value(const WindowSpec& w, double y) {
  return window_axis_value(w, 0, y);
}

PhaseGrid::PhaseGrid(double r_min, double r_max, double rho,
                     DirectionSet dirs)
    : directions(std::move(dirs)) {
  if (!(r_min >= 2))
    throw std::invalid_argument("PhaseGrid: r_min must be >= 2");
  if (!(rho > 1)) throw std::invalid_argument("PhaseGrid: rho must be > 1");
  if (!(r_max > r_min))
    throw std::invalid_argument("PhaseGrid: r_max must exceed r_min");
  for (double r = r_min; r <= r_max * (1 + 1e-12); r *= rho)
    radii.push_back(r);
}

PhaseGrid PhaseGrid::defaults(int dim_d) {
  double rho = std::pow(2.0, 0.25);
  if (dim_d == 1)
    return PhaseGrid(4.0, 24.0, rho, DirectionSet::uniform(1, 64));
  if (dim_d == 2)
    return PhaseGrid(2.0, 8.0, rho, DirectionSet::uniform(2, 642));
  throw std::invalid_argument("PhaseGrid::defaults: d must be 1 or 2");
}

void PhaseGrid::validate_for(const SampledSignal& u) const {
  double bound = 0.5 * std::min(u.half_extent, u.nyquist());
  if (radii.back() > bound + 1e-12)
    throw std::invalid_argument(
        "PhaseGrid: r_max exceeds 0.5*min(L, pi/h) = " + std::to_string(bound));
}

namespace {

void check_point(const SampledSignal& u, const RVec& p) {
  if (p.size() != 2 * u.dim_d)
    throw std::invalid_argument("stft: point must be in R^{2d}");
  for (int i = 0; i < u.dim_d; ++i)
    if (std::abs(p(i)) > u.half_extent)
      throw std::out_of_range("stft: |x| exceeds the grid extent L = " +
                              std::to_string(u.half_extent));
  for (int i = 0; i < u.dim_d; ++i)
    if (std::abs(p(u.dim_d + i)) > u.nyquist())
      throw std::out_of_range(
          "stft: |xi| exceeds the resolvable bound pi/h = " +
          std::to_string(u.nyquist()));
}

Complex stft_point_1d(const SampledSignal& u, const WindowSpec& w, double x,
                      double xi) {
  double h = u.spacing();
  int j_lo = std::max(0, static_cast<int>(std::ceil((x - kWindowReach) / h)) +
                             u.n / 2);
  int j_hi = std::min(u.n - 1,
                      static_cast<int>(std::floor((x + kWindowReach) / h)) +
                          u.n / 2);
  Complex acc(0, 0);
  for (int j = j_lo; j <= j_hi; ++j) {
    double y = u.coord(j);
    double win = window_axis_value(w, 0, y - x);
    if (win == 0.0) continue;
    acc += u.values[j] * win * std::exp(Complex(0, -y * xi));
  }
  return acc * h;
}

Complex stft_point_2d(const SampledSignal& u, const WindowSpec& w, double x1,
                      double x2, double xi1, double xi2) {
  double h = u.spacing();
  auto range = [&](double x) {
    int lo = std::max(
        0, static_cast<int>(std::ceil((x - kWindowReach) / h)) + u.n / 2);
    int hi = std::min(u.n - 1, static_cast<int>(std::floor(
                                   (x + kWindowReach) / h)) +
                                   u.n / 2);
    return std::pair<int, int>(lo, hi);
  };
  auto [lo1, hi1] = range(x1);
  auto [lo2, hi2] = range(x2);
  if (lo1 > hi1 || lo2 > hi2) return Complex(0, 0);

  // Separable window/phase factors keep the inner loop a plain
  // complex multiply-add.
  std::vector<Complex> a1(hi1 - lo1 + 1), a2(hi2 - lo2 + 1);
  for (int j = lo1; j <= hi1; ++j) {
    double y = u.coord(j);
    a1[j - lo1] =
        window_axis_value(w, 0, y - x1) * std::exp(Complex(0, -y * xi1));
  }
  for (int j = lo2; j <= hi2; ++j) {
    double y = u.coord(j);
    a2[j - lo2] =
        window_axis_value(w, 1, y - x2) * std::exp(Complex(0, -y * xi2));
  }
  Complex acc(0, 0);
  for (int j1 = lo1; j1 <= hi1; ++j1) {
    const Complex* row = &u.values[std::size_t(j1) * u.n];
    Complex inner(0, 0);
    for (int j2 = lo2; j2 <= hi2; ++j2) inner += row[j2] * a2[j2 - lo2];
    acc += a1[j1 - lo1] * inner;
  }
  return acc * h * h;
}

}  // namespace

std::vector<Complex> stft(const SampledSignal& u, const WindowSpec& w,
                          const std::vector<RVec>& points) {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    check_point(u, p);
    if (u.dim_d == 1)
      out.push_back(stft_point_1d(u, w, p(0), p(1)));
    else
      out.push_back(stft_point_2d(u, w, p(0), p(1), p(2), p(3)));
  }
  return out;
}

std::vector<std::vector<Complex>> stft_lattice_1d(const SampledSignal& u,
                                                  const WindowSpec& w,
                                                  int x_stride) {
  if (u.dim_d != 1)
    throw std::invalid_argument("stft_lattice_1d: d=1 only");
  std::vector<std::vector<Complex>> rows;
  for (int jx = 0; jx < u.n; jx += x_stride) {
    double x = u.coord(jx);
    SampledSignal g = u;
    for (int j = 0; j < u.n; ++j)
      g.values[j] *= window_axis_value(w, 0, u.coord(j) - x);
    // Centered transform gives V(x, xi_m) on bins xi_m = (m - n/2) dxi.
    SampledSignal v = unitary_fourier(g);
    for (auto& c : v.values) c *= std::sqrt(2 * std::numbers::pi);
    rows.push_back(std::move(v.values));
  }
  return rows;
}

double stft_frame_energy(const SampledSignal& u, const WindowSpec& w) {
  auto rows = stft_lattice_1d(u, w);
  double acc = 0;
  for (const auto& row : rows)
    for (const auto& c : row) acc += std::norm(c);
  double cell = u.spacing() * u.freq_step();
  return acc * cell / (2 * std::numbers::pi);
}

}  // namespace gwf
