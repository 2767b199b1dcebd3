#ifndef GWF_WAVEFRONT_HPP
#define GWF_WAVEFRONT_HPP

#include "gwf/stft.hpp"

namespace gwf {

/// Estimated polynomial decay order along one phase-space direction.
/// order = +infinity marks superpolynomial decay (STFT underflow on the
/// outer half of the ray).
struct DirectionEstimate {
  RVec dir;
  double order = 0;
  double residual = 0;
  bool reliable = true;
  int usable_samples = 0;
};

class WavefrontReport {
public:
  std::vector<DirectionEstimate> entries;
  double angular_resolution = 0;

  /// Reliable directions with finite estimated order s* < s.
  DirectionSet threshold(double s) const;
  double unreliable_fraction() const;
};

/// Per-ray log-log regression of the STFT magnitude against radius.
/// Each ray is thickened by the grid's fixed tube width (the estimator
/// samples the maximum of |V| over a small offset stencil), values below
/// the 1e-13 floor are clamped, and a residual gate marks unreliable fits.
WavefrontReport decay_order(const SampledSignal& u, const WindowSpec& w,
                            const PhaseGrid& grid);

/// Thresholding of decay_order with a safety margin, dilated by one
/// angular-resolution step over the grid directions.
DirectionSet wavefront_estimate(const SampledSignal& u, const WindowSpec& w,
                                const PhaseGrid& grid, double s,
                                double margin = 0.25);

struct WindowIndependenceReport {
  double max_order_discrepancy = 0;
  int compared_directions = 0;
};

/// Runs decay_order with the gaussian and hermite_1 windows and reports
/// the largest order discrepancy over directions where both are finite
/// and reliable.
WindowIndependenceReport window_independence_check(const SampledSignal& u,
                                                   const PhaseGrid& grid);

}  // namespace gwf

#endif
