#ifndef GWF_HARNESS_HPP
#define GWF_HARNESS_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "gwf/propagators.hpp"
#include "gwf/wavefront.hpp"

namespace gwf {

struct SignalSpec {
  std::string name;
  std::vector<double> params;
};

struct GridSpec {
  int n = 0;
  double half_extent = 0;
  int directions = 0;
  double r_min = 0, r_max = 0, rho = 0;
  double tube_width = 0.1;

  static GridSpec defaults(int dim_d);
  PhaseGrid make(int dim_d) const;
};

struct Experiment {
  int dim_d = 1;
  CMat Q;
  SignalSpec signal;
  WindowSpec window = WindowSpec::gaussian();
  GridSpec grid;
  std::vector<double> times;
  std::vector<double> orders;
  BudgetRule rule = BudgetRule::equal;
  double epsilon = 0.5;
  /// Replaces the predicted set by the empty cone; exercises the
  /// violation-reporting path in tests.
  bool stub_empty_predicted = false;
};

struct Violation {
  RVec dir;
  double angle_to_predicted;
};

struct InclusionCase {
  double t = 0, s = 0, r = 0;
  DirectionSet observed_input{0};
  DirectionSet predicted{0};
  DirectionSet observed_output{0};
  std::vector<Violation> violations;
  double unreliable_fraction = 0;
  bool inconclusive = false;
  bool pass = false;
};

struct InclusionReport {
  std::vector<InclusionCase> cases;
  bool pass = false;
  bool inconclusive = false;
};

class UnsupportedPropagator : public std::runtime_error {
public:
  explicit UnsupportedPropagator(const std::string& what)
      : std::runtime_error(what) {}
};

/// Dispatches to the implemented propagator family for Q: zero,
/// Fourier-side multiplier (heat / free Schroedinger and mixtures),
/// position-side multiplication (damping / chirp), or the harmonic
/// oscillator Q = icI. Throws UnsupportedPropagator otherwise.
SampledSignal propagate(const QuadraticHamiltonian& q, const SampledSignal& u,
                        double t, std::string* path_used = nullptr);

/// Estimate the input wave front set, propagate, estimate the output
/// set at the budgeted order, and check observed subset of predicted
/// within one angular-resolution step.
InclusionReport run_experiment(const Experiment& e);

/// Presets: heat, free_schrodinger, harmonic, damping (params give the
/// symmetric damping matrix A, defaults diag(1) / diag(1,0)).
Experiment preset(const std::string& name, int dim_d = 1,
                  const std::vector<double>& params = {});

}  // namespace gwf

#endif
