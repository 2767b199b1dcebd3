#ifndef GWF_STFT_HPP
#define GWF_STFT_HPP

#include <vector>

#include "gwf/quadham.hpp"
#include "gwf/signal.hpp"

namespace gwf {

/// Window function with unit L2 norm. "hermite" uses the normalized
/// Hermite function of the given order along the first axis and the
/// ground state along the others.
struct WindowSpec {
  enum class Kind { gaussian, hermite };
  Kind kind = Kind::gaussian;
  int hermite_k = 1;

  static WindowSpec gaussian() { return {Kind::gaussian, 0}; }
  static WindowSpec hermite(int k) { return {Kind::hermite, k}; }
};

double window_value(const WindowSpec& w, double y);  // one axis factor
double window_axis_value(const WindowSpec& w, int axis, double y);

/// Radial/angular sampling of phase space used by the decay estimator.
struct PhaseGrid {
  std::vector<double> radii;          // geometric, r_min .. r_max, ratio rho
  DirectionSet directions;
  double tube_width = 0.1;  // fixed-width thickening of each ray

  PhaseGrid(double r_min, double r_max, double rho, DirectionSet dirs);
  static PhaseGrid defaults(int dim_d);
  /// r_min >= 2 and r_max <= 0.5 min(L, pi/h).
  void validate_for(const SampledSignal& u) const;
};

/// V_phi u at the given phase-space points (x, xi) in R^{2d},
/// approximated by a trapezoid sum on the grid. Points outside
/// [-L, L]^d x [-pi/h, pi/h]^d are rejected.
std::vector<Complex> stft(const SampledSignal& u, const WindowSpec& w,
                          const std::vector<RVec>& points);

/// STFT over the full (x-node, FFT-bin) lattice for d=1, using one
/// windowed FFT per x node; row index = x node, column = frequency bin
/// ordered from -pi/h.
std::vector<std::vector<Complex>> stft_lattice_1d(const SampledSignal& u,
                                                  const WindowSpec& w,
                                                  int x_stride = 1);

/// sum |V|^2 (cell area)/(2pi)^d over the full lattice; approximates
/// ||u||_{L2}^2 by STFT isometry.
double stft_frame_energy(const SampledSignal& u, const WindowSpec& w);

}  // namespace gwf

#endif
