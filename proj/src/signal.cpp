#include "gwf/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gwf {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Wrapped frequency for unshifted FFT index k.
double freq_of_index(int k, int n, double dxi) {
  return dxi * (k < n / 2 ? k : k - n);
}

struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans;

  fftw_plan get(int dim_d, int n, bool inverse, fftw_complex* buf) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(dim_d, n, inverse);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    int sign = inverse ? FFTW_BACKWARD : FFTW_FORWARD;
    fftw_plan p;
    if (dim_d == 1)
      p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    else
      p = fftw_plan_dft_2d(n, n, buf, buf, sign,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans[key] = p;
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

SampledSignal::SampledSignal(int d, int n_, double L)
    : dim_d(d), n(n_), half_extent(L) {
  values.assign(d == 1 ? n : std::size_t(n) * n, Complex(0, 0));
  validate();
}

void SampledSignal::validate() const {
  if (dim_d != 1 && dim_d != 2)
    throw std::invalid_argument("SampledSignal: d must be 1 or 2");
  if (!power_of_two(n))
    throw std::invalid_argument("SampledSignal: N must be a power of two");
  if (!(half_extent > 0))
    throw std::invalid_argument("SampledSignal: L must be positive");
  std::size_t expect = dim_d == 1 ? std::size_t(n) : std::size_t(n) * n;
  if (values.size() != expect)
    throw std::invalid_argument("SampledSignal: value count mismatch");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("SampledSignal: non-finite value");
}

double SampledSignal::l2_norm() const {
  double acc = 0;
  for (const auto& v : values) acc += std::norm(v);
  return std::sqrt(acc * std::pow(spacing(), dim_d));
}

double l2_distance(const SampledSignal& a, const SampledSignal& b) {
  if (a.dim_d != b.dim_d || a.n != b.n ||
      std::abs(a.half_extent - b.half_extent) > 1e-12)
    throw std::invalid_argument("l2_distance: incompatible grids");
  double acc = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    acc += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(acc * std::pow(a.spacing(), a.dim_d));
}

void fft_inplace(std::vector<Complex>& data, int dim_d, int n, bool inverse) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan p = plan_cache().get(dim_d, n, inverse, buf);
  fftw_execute_dft(p, buf, buf);
  if (inverse) {
    double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
  }
}

SampledSignal apply_fourier_multiplier(
    const SampledSignal& u, const std::function<Complex(const RVec&)>& m) {
  SampledSignal out = u;
  fft_inplace(out.values, out.dim_d, out.n, false);
  double dxi = u.freq_step();
  if (u.dim_d == 1) {
    RVec xi(1);
    for (int k = 0; k < u.n; ++k) {
      xi(0) = freq_of_index(k, u.n, dxi);
      out.values[k] *= m(xi);
    }
  } else {
    RVec xi(2);
    for (int k1 = 0; k1 < u.n; ++k1) {
      xi(0) = freq_of_index(k1, u.n, dxi);
      for (int k2 = 0; k2 < u.n; ++k2) {
        xi(1) = freq_of_index(k2, u.n, dxi);
        out.values[std::size_t(k1) * u.n + k2] *= m(xi);
      }
    }
  }
  fft_inplace(out.values, out.dim_d, out.n, true);
  return out;
}

namespace {

// Centered 1D transform G_m = sum_j g_j e^{-i x_j xi_m} with
// x_j = (j - n/2) h and xi_m = (m - n/2) dxi, via sign flips around a
// standard FFT. "inverse" flips the exponent sign.
void centered_dft_axis(std::vector<Complex>& g, bool inverse) {
  int n = static_cast<int>(g.size());
  for (int j = 1; j < n; j += 2) g[j] = -g[j];
  fft_inplace(g, 1, n, inverse);
  if (inverse)  // plain sum in both directions
    for (auto& v : g) v *= static_cast<double>(n);
  for (int m = 1; m < n; m += 2) g[m] = -g[m];
  // e^{+-i pi n/2} factor; n is a power of two so this is +-1.
  if (n % 4 == 2)
    for (auto& v : g) v = -v;
}

}  // namespace

SampledSignal unitary_fourier(const SampledSignal& u, bool inverse) {
  SampledSignal out = u;
  out.half_extent = u.n / 2 * u.freq_step();  // pi/h
  double norm =
      std::pow(u.spacing() / std::sqrt(2 * std::numbers::pi), u.dim_d);
  if (u.dim_d == 1) {
    centered_dft_axis(out.values, inverse);
  } else {
    std::vector<Complex> line(u.n);
    for (int r = 0; r < u.n; ++r) {  // rows
      for (int c = 0; c < u.n; ++c) line[c] = out.at(r, c);
      centered_dft_axis(line, inverse);
      for (int c = 0; c < u.n; ++c) out.at(r, c) = line[c];
    }
    for (int c = 0; c < u.n; ++c) {  // columns
      for (int r = 0; r < u.n; ++r) line[r] = out.at(r, c);
      centered_dft_axis(line, inverse);
      for (int r = 0; r < u.n; ++r) out.at(r, c) = line[r];
    }
  }
  for (auto& v : out.values) v *= norm;
  return out;
}

SampledSignal phase_space_translate(const SampledSignal& u, const RVec& z0) {
  if (z0.size() != 2 * u.dim_d)
    throw std::invalid_argument("phase_space_translate: z0 must be in R^{2d}");
  SampledSignal out = u;
  double h = u.spacing();
  if (u.dim_d == 1) {
    int shift = static_cast<int>(std::lround(z0(0) / h));
    for (int j = 0; j < u.n; ++j) {
      int src = j - shift;
      out.values[j] = (src >= 0 && src < u.n) ? u.values[src] : Complex(0, 0);
    }
    double xi0 = z0(1);
    for (int j = 0; j < u.n; ++j)
      out.values[j] *= std::exp(Complex(0, out.coord(j) * xi0));
  } else {
    int s1 = static_cast<int>(std::lround(z0(0) / h));
    int s2 = static_cast<int>(std::lround(z0(1) / h));
    for (int j1 = 0; j1 < u.n; ++j1)
      for (int j2 = 0; j2 < u.n; ++j2) {
        int r = j1 - s1, c = j2 - s2;
        out.at(j1, j2) = (r >= 0 && r < u.n && c >= 0 && c < u.n)
                             ? u.at(r, c)
                             : Complex(0, 0);
      }
    for (int j1 = 0; j1 < u.n; ++j1)
      for (int j2 = 0; j2 < u.n; ++j2)
        out.at(j1, j2) *= std::exp(
            Complex(0, out.coord(j1) * z0(2) + out.coord(j2) * z0(3)));
  }
  return out;
}

Complex trig_interpolate(const SampledSignal& u, const RVec& x) {
  if (u.dim_d != 1)
    throw std::invalid_argument("trig_interpolate: d=1 only");
  // Coefficients of u_j = sum_m c_m e^{i x_j xi_m}.
  std::vector<Complex> c = u.values;
  centered_dft_axis(c, false);
  double scale = 1.0 / u.n;
  double dxi = u.freq_step();
  Complex acc(0, 0);
  for (int m = 0; m < u.n; ++m) {
    double xi = (m - u.n / 2) * dxi;
    acc += c[m] * std::exp(Complex(0, x(0) * xi));
  }
  return acc * scale;
}

namespace {

RMat sym_from_params(const std::vector<double>& params, int d) {
  RMat a(d, d);
  if (d == 1) {
    if (params.size() != 1)
      throw std::invalid_argument("expected 1 parameter for d=1 matrix");
    a(0, 0) = params[0];
  } else {
    if (params.size() != 3)
      throw std::invalid_argument(
          "expected 3 parameters (a11 a12 a22) for d=2 matrix");
    a(0, 0) = params[0];
    a(0, 1) = a(1, 0) = params[1];
    a(1, 1) = params[2];
  }
  return a;
}

double hermite_value(int k, double x) {
  // Normalized Hermite functions via the stable recurrence.
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

SampledSignal build_signal(const std::string& name,
                           const std::vector<double>& params, int dim_d, int n,
                           double half_extent) {
  SampledSignal u(dim_d, n, half_extent);
  double h = u.spacing();
  auto for_each_point = [&](auto&& fn) {
    if (dim_d == 1) {
      RVec x(1);
      for (int j = 0; j < n; ++j) {
        x(0) = u.coord(j);
        u.values[j] = fn(x);
      }
    } else {
      RVec x(2);
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) {
          x(0) = u.coord(j1);
          x(1) = u.coord(j2);
          u.at(j1, j2) = fn(x);
        }
    }
  };

  if (name == "delta" || name == "delta_plus_constant") {
    double base = name == "delta" ? 0.0 : 1.0;
    for (auto& v : u.values) v = base;
    double spike = std::pow(1.0 / h, dim_d);
    if (dim_d == 1)
      u.at(n / 2) += spike;
    else
      u.at(n / 2, n / 2) += spike;
  } else if (name == "constant") {
    for (auto& v : u.values) v = 1.0;
  } else if (name == "plane_wave") {
    if (static_cast<int>(params.size()) != dim_d)
      throw std::invalid_argument("plane_wave: expected d parameters");
    RVec xi0 = Eigen::Map<const RVec>(params.data(), dim_d);
    for_each_point([&](const RVec& x) {
      return std::exp(Complex(0, x.dot(xi0)));
    });
  } else if (name == "chirp") {
    RMat a = sym_from_params(params, dim_d);
    for_each_point([&](const RVec& x) {
      return std::exp(Complex(0, 0.5 * x.dot(a * x)));
    });
  } else if (name == "gaussian") {
    for_each_point([&](const RVec& x) {
      return std::exp(Complex(-0.5 * x.squaredNorm(), 0));
    });
  } else if (name == "gaussian_decay") {
    RMat a = sym_from_params(params, dim_d);
    for_each_point([&](const RVec& x) {
      return std::exp(Complex(-x.dot(a * x), 0));
    });
  } else if (name == "hermite") {
    if (params.size() != 1)
      throw std::invalid_argument("hermite: expected parameter k");
    int k = static_cast<int>(params[0]);
    for_each_point([&](const RVec& x) {
      double v = hermite_value(k, x(0));
      for (int ax = 1; ax < dim_d; ++ax) v *= hermite_value(0, x(ax));
      return Complex(v, 0);
    });
  } else {
    throw std::invalid_argument("unknown builtin signal: " + name);
  }
  return u;
}

}  // namespace gwf
