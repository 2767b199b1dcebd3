#include "gwf/propagators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace gwf {

GaussianState GaussianState::standard(int dim_d) {
  GaussianState g;
  g.dim_d = dim_d;
  g.M = Complex(0, 1) * CMat::Identity(dim_d, dim_d);
  g.amplitude = 1.0;
  g.center = RVec::Zero(dim_d);
  g.modulation = RVec::Zero(dim_d);
  return g;
}

void GaussianState::validate() const {
  if (M.rows() != dim_d || M.cols() != dim_d)
    throw std::invalid_argument("GaussianState: M must be d x d");
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("GaussianState: M must be symmetric");
  Eigen::SelfAdjointEigenSolver<RMat> es(RMat(M.imag()));
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("GaussianState: Im M must be >= 0");
}

namespace {

struct MoebiusStep {
  CMat m;
  Complex det;  // det(A + B M0) along the path
};

MoebiusStep moebius_at(const CMat& f, const CMat& m0, double tau) {
  int d = static_cast<int>(m0.rows());
  CMat t = matrix_exponential(CMat(Complex(0, -2 * tau) * f));
  CMat a = t.topLeftCorner(d, d);
  CMat b = t.topRightCorner(d, d);
  CMat c = t.bottomLeftCorner(d, d);
  CMat dd = t.bottomRightCorner(d, d);
  CMat denom = a + b * m0;
  MoebiusStep step;
  step.det = denom.determinant();
  step.m = (c + dd * m0) * denom.inverse();
  return step;
}

}  // namespace

GaussianState gaussian_propagate(const GaussianState& g,
                                 const QuadraticHamiltonian& q, double t) {
  g.validate();
  if (t < 0) throw std::invalid_argument("gaussian_propagate: t must be >= 0");
  if (g.center.cwiseAbs().maxCoeff() > 1e-12 ||
      g.modulation.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(
        "gaussian_propagate: only centered states are supported");
  if (q.dim_d != g.dim_d)
    throw std::invalid_argument("gaussian_propagate: dimension mismatch");

  HamiltonData h = hamilton_matrix(q);

  // Track arg det(A + B M) continuously from t = 0 (value 1) so the
  // square-root branch is well defined. Refine the path until the
  // determinant's phase moves by less than pi/2 per step.
  int steps = std::max(8, static_cast<int>(std::ceil(t / 0.02)));
  double arg_acc = 0;
  MoebiusStep last{g.M, Complex(1, 0)};
  for (int attempt = 0;; ++attempt, steps *= 2) {
    if (attempt > 8)
      throw std::runtime_error(
          "gaussian_propagate: could not resolve the square-root branch");
    arg_acc = 0;
    double prev_arg = 0;
    bool ok = true;
    for (int i = 1; i <= steps; ++i) {
      double tau = t * i / steps;
      MoebiusStep step = moebius_at(h.F, g.M, tau);
      if (std::abs(step.det) < 1e-12)
        throw std::runtime_error(
            "gaussian_propagate: degenerate (caustic) propagation, "
            "det(A + B M) vanished");
      double a = std::arg(step.det);
      double delta = a - prev_arg;
      while (delta > std::numbers::pi) delta -= 2 * std::numbers::pi;
      while (delta < -std::numbers::pi) delta += 2 * std::numbers::pi;
      if (std::abs(delta) > std::numbers::pi / 2) {
        ok = false;
        break;
      }
      arg_acc += delta;
      prev_arg = a;
      last = step;
    }
    if (ok) break;
  }

  GaussianState out = g;
  out.M = 0.5 * (last.m + last.m.transpose());  // symmetrize roundoff
  double log_abs = std::log(std::abs(last.det));
  out.amplitude =
      g.amplitude * std::exp(Complex(-0.5 * log_abs, -0.5 * arg_acc));

  Eigen::SelfAdjointEigenSolver<RMat> es(RMat(out.M.imag()));
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::runtime_error("gaussian_propagate: output lost Im M >= 0");
  return out;
}

SampledSignal sample_gaussian(const GaussianState& g, int n, double L) {
  g.validate();
  SampledSignal u(g.dim_d, n, L);
  if (g.dim_d == 1) {
    Complex m = g.M(0, 0);
    for (int j = 0; j < n; ++j) {
      double x = u.coord(j) - g.center(0);
      u.values[j] = g.amplitude *
                    std::exp(Complex(0, 0.5) * m * x * x +
                             Complex(0, u.coord(j) * g.modulation(0)));
    }
  } else {
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2) {
        CVec x(2);
        x << Complex(u.coord(j1) - g.center(0), 0),
            Complex(u.coord(j2) - g.center(1), 0);
        Complex phase = Complex(0, 0.5) * (x.transpose() * g.M * x)(0, 0);
        phase += Complex(0, u.coord(j1) * g.modulation(0) +
                                u.coord(j2) * g.modulation(1));
        u.at(j1, j2) = g.amplitude * std::exp(phase);
      }
  }
  return u;
}

SampledSignal heat_propagate(const SampledSignal& u, double t) {
  if (t < 0)
    throw std::invalid_argument(
        "heat_propagate: backward heat (t < 0) is rejected");
  if (t == 0) return u;
  return apply_fourier_multiplier(u, [t](const RVec& xi) {
    return Complex(std::exp(-t * xi.squaredNorm()), 0);
  });
}

SampledSignal schrodinger_free_propagate(const SampledSignal& u, double t) {
  if (t == 0) return u;
  return apply_fourier_multiplier(u, [t](const RVec& xi) {
    return std::exp(Complex(0, -t * xi.squaredNorm()));
  });
}

SampledSignal chirp_multiply(const SampledSignal& u, const RMat& a,
                             ChirpMode mode, double t) {
  if (a.rows() != u.dim_d || a.cols() != u.dim_d)
    throw std::invalid_argument("chirp_multiply: A must be d x d");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("chirp_multiply: A must be symmetric");
  if (mode == ChirpMode::damping) {
    if (t < 0) throw std::invalid_argument("chirp_multiply: t must be >= 0");
    Eigen::SelfAdjointEigenSolver<RMat> es(a);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument(
          "chirp_multiply: damping mode requires A >= 0");
  }
  SampledSignal out = u;
  auto factor = [&](const RVec& x) {
    double q = x.dot(a * x);
    return mode == ChirpMode::phase ? std::exp(Complex(0, 0.5 * q))
                                    : Complex(std::exp(-t * q), 0);
  };
  if (u.dim_d == 1) {
    RVec x(1);
    for (int j = 0; j < u.n; ++j) {
      x(0) = u.coord(j);
      out.values[j] *= factor(x);
    }
  } else {
    RVec x(2);
    for (int j1 = 0; j1 < u.n; ++j1)
      for (int j2 = 0; j2 < u.n; ++j2) {
        x(0) = u.coord(j1);
        x(1) = u.coord(j2);
        out.at(j1, j2) *= factor(x);
      }
  }
  return out;
}

MetaplecticGenerator MetaplecticGenerator::fourier() {
  MetaplecticGenerator g;
  g.kind = Kind::fourier;
  return g;
}

MetaplecticGenerator MetaplecticGenerator::chirp(RMat a) {
  MetaplecticGenerator g;
  g.kind = Kind::chirp;
  g.A = std::move(a);
  return g;
}

MetaplecticGenerator MetaplecticGenerator::dilation(RMat l) {
  MetaplecticGenerator g;
  g.kind = Kind::dilation;
  g.L = std::move(l);
  return g;
}

MetaplecticGenerator MetaplecticGenerator::free_flow(double t) {
  MetaplecticGenerator g;
  g.kind = Kind::free_flow;
  g.t = t;
  return g;
}

RMat MetaplecticGenerator::chi(int d) const {
  RMat m = RMat::Identity(2 * d, 2 * d);
  switch (kind) {
    case Kind::fourier:
      return standard_symplectic_form(d);
    case Kind::chirp:
      m.bottomLeftCorner(d, d) = A;
      return m;
    case Kind::dilation:
      m.topLeftCorner(d, d) = L;
      m.bottomRightCorner(d, d) = L.inverse().transpose();
      return m;
    case Kind::free_flow:
      m.topRightCorner(d, d) = 2 * t * RMat::Identity(d, d);
      return m;
  }
  return m;
}

namespace {

SampledSignal dilate(const SampledSignal& u, const RMat& l) {
  double det = l.determinant();
  if (std::abs(det) < 1.0 / 8 - 1e-12 || std::abs(det) > 8 + 1e-12)
    throw std::invalid_argument(
        "metaplectic dilation: |det L| outside [1/8, 8]");
  double amp = 1.0 / std::sqrt(std::abs(det));
  SampledSignal out = u;
  if (u.dim_d == 1) {
    double inv = 1.0 / l(0, 0);
    RVec x(1);
    for (int j = 0; j < u.n; ++j) {
      x(0) = u.coord(j) * inv;
      out.values[j] = std::abs(x(0)) <= u.half_extent
                          ? amp * trig_interpolate(u, x)
                          : Complex(0, 0);
    }
    return out;
  }
  if (std::abs(l(0, 1)) > 1e-14 || std::abs(l(1, 0)) > 1e-14)
    throw std::invalid_argument(
        "metaplectic dilation: only diagonal L supported for d=2");
  // Separable band-limited resampling, one axis at a time.
  SampledSignal tmp = u;
  for (int axis = 0; axis < 2; ++axis) {
    double inv = 1.0 / l(axis, axis);
    SampledSignal line(1, u.n, u.half_extent);
    SampledSignal next = tmp;
    for (int other = 0; other < u.n; ++other) {
      for (int j = 0; j < u.n; ++j)
        line.values[j] = axis == 0 ? tmp.at(j, other) : tmp.at(other, j);
      RVec x(1);
      for (int j = 0; j < u.n; ++j) {
        x(0) = u.coord(j) * inv;
        Complex v = std::abs(x(0)) <= u.half_extent
                        ? trig_interpolate(line, x)
                        : Complex(0, 0);
        if (axis == 0)
          next.at(j, other) = v;
        else
          next.at(other, j) = v;
      }
    }
    tmp = std::move(next);
  }
  for (auto& v : tmp.values) v *= amp;
  return tmp;
}

}  // namespace

SampledSignal metaplectic_apply(const SampledSignal& u,
                                const std::vector<MetaplecticGenerator>& gens) {
  SampledSignal cur = u;
  for (const auto& g : gens) {
    switch (g.kind) {
      case MetaplecticGenerator::Kind::fourier:
        cur = unitary_fourier(cur);
        break;
      case MetaplecticGenerator::Kind::chirp:
        cur = chirp_multiply(cur, g.A, ChirpMode::phase);
        break;
      case MetaplecticGenerator::Kind::dilation:
        cur = dilate(cur, g.L);
        break;
      case MetaplecticGenerator::Kind::free_flow:
        cur = schrodinger_free_propagate(cur, g.t);
        break;
    }
  }
  return cur;
}

RMat composite_chi(const std::vector<MetaplecticGenerator>& gens, int dim_d) {
  RMat m = RMat::Identity(2 * dim_d, 2 * dim_d);
  for (const auto& g : gens) m = g.chi(dim_d) * m;
  return m;
}

namespace {

// One-axis fractional Fourier step for reduced angle |theta| <= pi/2 + eps,
// as chirp(a) . multiplier(b) . chirp(a) with a = -tan(theta/2),
// b = sin(theta). The global phase is calibrated afterwards.
void frft_axis_reduced(std::vector<Complex>& line, double theta, double L) {
  int n = static_cast<int>(line.size());
  if (std::abs(theta) < 1e-12) return;
  double a = -std::tan(theta / 2);
  double b = std::sin(theta);
  double h = 2 * L / n;
  auto chirp = [&]() {
    for (int j = 0; j < n; ++j) {
      double x = (j - n / 2) * h;
      line[j] *= std::exp(Complex(0, 0.5 * a * x * x));
    }
  };
  chirp();
  // multiplier e^{-i b xi^2 / 2} on the FFT frequencies
  fft_inplace(line, 1, n, false);
  double dxi = std::numbers::pi / L;
  for (int k = 0; k < n; ++k) {
    double xi = dxi * (k < n / 2 ? k : k - n);
    line[k] *= std::exp(Complex(0, -0.5 * b * xi * xi));
  }
  fft_inplace(line, 1, n, true);
  chirp();
}

// Applies the reduced-angle chain plus parity range reduction to one
// axis, returning the uncalibrated result and the number of parity
// applications (each carrying a factor e^{-i pi/2} relative to the
// Hermite phase convention).
void frft_axis(std::vector<Complex>& line, double theta, double L) {
  int n = static_cast<int>(line.size());
  long m = std::lround(theta / std::numbers::pi);
  double reduced = theta - m * std::numbers::pi;
  long mm = ((m % 2) + 2) % 2;  // parity of the reduction count
  long m4 = ((m % 4) + 4) % 4;
  if (mm == 1) {
    std::vector<Complex> flipped(n);
    // Grid reflection: coord(j) = (j - n/2) h maps to index n - j
    // (index 0 has no mirror node; it maps to itself at the boundary).
    for (int j = 1; j < n; ++j) flipped[j] = line[n - j];
    flipped[0] = line[0];
    line = std::move(flipped);
  }
  // Phase factor of F_pi^m = (e^{-i pi/2} P)^m.
  Complex phase = std::exp(Complex(0, -0.5 * std::numbers::pi * m4));
  for (auto& v : line) v *= phase;
  frft_axis_reduced(line, reduced, L);
}

// Phase calibration against the Gaussian ground state: the chain is
// unitary up to a global phase; the Hermite convention requires
// F_theta h0 = e^{-i theta/2} h0.
Complex frft_phase_correction(double theta, int n, double L) {
  std::vector<Complex> h0(n);
  double h = 2 * L / n;
  double c = std::pow(std::numbers::pi, -0.25);
  for (int j = 0; j < n; ++j) {
    double x = (j - n / 2) * h;
    h0[j] = c * std::exp(-x * x / 2);
  }
  std::vector<Complex> out = h0;
  frft_axis(out, theta, L);
  Complex ip(0, 0);
  double nn = 0;
  for (int j = 0; j < n; ++j) {
    ip += out[j] * std::conj(h0[j]);
    nn += std::norm(h0[j]);
  }
  Complex observed = ip / nn;
  Complex target = std::exp(Complex(0, -theta / 2));
  return target / (observed / std::abs(observed));
}

}  // namespace

SampledSignal harmonic_oscillator_propagate(const SampledSignal& u, double t) {
  double theta = 2 * t;
  SampledSignal out = u;
  Complex corr = frft_phase_correction(theta, u.n, u.half_extent);
  if (u.dim_d == 1) {
    frft_axis(out.values, theta, u.half_extent);
    for (auto& v : out.values) v *= corr;
    return out;
  }
  std::vector<Complex> line(u.n);
  for (int r = 0; r < u.n; ++r) {
    for (int c2 = 0; c2 < u.n; ++c2) line[c2] = out.at(r, c2);
    frft_axis(line, theta, u.half_extent);
    for (int c2 = 0; c2 < u.n; ++c2) out.at(r, c2) = line[c2];
  }
  for (int c2 = 0; c2 < u.n; ++c2) {
    for (int r = 0; r < u.n; ++r) line[r] = out.at(r, c2);
    frft_axis(line, theta, u.half_extent);
    for (int r = 0; r < u.n; ++r) out.at(r, c2) = line[r];
  }
  for (auto& v : out.values) v *= corr * corr;
  return out;
}

SampledSignal quadratic_fourier_multiplier(const SampledSignal& u,
                                           const CMat& b, double t) {
  return apply_fourier_multiplier(u, [&](const RVec& xi) {
    CVec z = xi.cast<Complex>();
    Complex q = (z.transpose() * b * z)(0, 0);
    return std::exp(-t * q);
  });
}

SampledSignal quadratic_multiplication(const SampledSignal& u, const CMat& a,
                                       double t) {
  SampledSignal out = u;
  auto factor = [&](const RVec& x) {
    CVec z = x.cast<Complex>();
    Complex q = (z.transpose() * a * z)(0, 0);
    return std::exp(-t * q);
  };
  if (u.dim_d == 1) {
    RVec x(1);
    for (int j = 0; j < u.n; ++j) {
      x(0) = u.coord(j);
      out.values[j] *= factor(x);
    }
  } else {
    RVec x(2);
    for (int j1 = 0; j1 < u.n; ++j1)
      for (int j2 = 0; j2 < u.n; ++j2) {
        x(0) = u.coord(j1);
        x(1) = u.coord(j2);
        out.at(j1, j2) *= factor(x);
      }
  }
  return out;
}

}  // namespace gwf
