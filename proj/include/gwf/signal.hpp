#ifndef GWF_SIGNAL_HPP
#define GWF_SIGNAL_HPP

#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gwf/symplectic.hpp"

namespace gwf {

/// Complex values on a uniform spatial grid x_j = (j - N/2) h with
/// h = 2L/N, stored row-major for d=2. N must be a power of two.
struct SampledSignal {
  int dim_d = 1;
  int n = 0;            // nodes per axis
  double half_extent = 0;  // L
  std::vector<Complex> values;  // size n^d

  SampledSignal() = default;
  SampledSignal(int d, int n_, double L);

  double spacing() const { return 2 * half_extent / n; }
  double coord(int j) const { return (j - n / 2) * spacing(); }
  /// Largest resolvable frequency magnitude pi/h.
  double nyquist() const { return std::numbers::pi / spacing(); }
  double freq_step() const { return std::numbers::pi / half_extent; }

  Complex& at(int j) { return values[j]; }
  Complex& at(int j1, int j2) { return values[j1 * n + j2]; }
  Complex at(int j) const { return values[j]; }
  Complex at(int j1, int j2) const { return values[j1 * n + j2]; }

  /// Grid L2 norm sqrt(sum |u|^2 h^d).
  double l2_norm() const;
  void validate() const;
};

double l2_distance(const SampledSignal& a, const SampledSignal& b);

/// In-place complex FFT of a signal's value array (d=1 length n,
/// d=2 an n x n row-major block). Unnormalized forward transform;
/// the inverse divides by n^d.
void fft_inplace(std::vector<Complex>& data, int dim_d, int n, bool inverse);

/// Applies a Fourier multiplier m(xi) using the grid's discrete
/// frequencies (wrapped to [-pi/h, pi/h)).
SampledSignal apply_fourier_multiplier(
    const SampledSignal& u, const std::function<Complex(const RVec&)>& m);

/// Centered unitary Fourier transform (2pi)^{-d/2} \int u e^{-i<x,xi>} dx,
/// returned as a signal on the frequency grid (half extent pi/h).
SampledSignal unitary_fourier(const SampledSignal& u, bool inverse = false);

/// Phase-space translation Pi(z0) = M_xi0 T_x0. The spatial shift is
/// rounded to the nearest whole number of grid nodes.
SampledSignal phase_space_translate(const SampledSignal& u, const RVec& z0);

/// Trigonometric (band-limited) interpolation of u at point x.
Complex trig_interpolate(const SampledSignal& u, const RVec& x);

// Builtin signal constructors. "params" usage is documented per name:
//   delta                 (no params; single node of value 1/h^d at 0)
//   constant              (value 1)
//   plane_wave            params = xi0 (d components)
//   chirp                 params = symmetric A, row-major upper triangle
//                         (d=1: a; d=2: a11 a12 a22); u = e^{i<x,Ax>/2}
//   gaussian              e^{-|x|^2/2}
//   gaussian_decay        params as chirp; u = e^{-<x,Ax>}
//   hermite               params = k; normalized Hermite function
//                         (d=2: along first axis, ground state in second)
//   delta_plus_constant   delta + 1
SampledSignal build_signal(const std::string& name,
                           const std::vector<double>& params, int dim_d, int n,
                           double half_extent);

}  // namespace gwf

#endif
