#ifndef GWF_PROPAGATORS_HPP
#define GWF_PROPAGATORS_HPP

#include "gwf/quadham.hpp"
#include "gwf/signal.hpp"

namespace gwf {

/// Centered Gaussian u(x) = c e^{i<x - x0, M (x - x0)>/2} e^{i<x, xi0>}
/// with M complex symmetric and Im M >= 0.
struct GaussianState {
  CMat M;             // d x d
  Complex amplitude = 1.0;
  RVec center;        // x0
  RVec modulation;    // xi0
  int dim_d = 1;

  static GaussianState standard(int dim_d);  // M = iI, c = 1, centered
  void validate() const;
};

/// Exact propagation of a centered Gaussian state under e^{-t q^w(x,D)}
/// via the Moebius action of T = e^{-2itF} in d x d blocks [[A,B],[C,D]]:
/// M' = (C + D M)(A + B M)^{-1}, c' = c det(A + B M)^{-1/2} with the
/// square-root branch tracked continuously from t = 0.
GaussianState gaussian_propagate(const GaussianState& g,
                                 const QuadraticHamiltonian& q, double t);

SampledSignal sample_gaussian(const GaussianState& g, int n, double L);

/// Fourier multiplier e^{-t|xi|^2}; rejects t < 0.
SampledSignal heat_propagate(const SampledSignal& u, double t);

/// Unitary multiplier e^{-it|xi|^2} (group case, any real t).
SampledSignal schrodinger_free_propagate(const SampledSignal& u, double t);

enum class ChirpMode { phase, damping };

/// phase: multiply by e^{i<x,Ax>/2}. damping: multiply by e^{-t<x,Ax>}
/// (requires A >= 0 and t >= 0).
SampledSignal chirp_multiply(const SampledSignal& u, const RMat& a,
                             ChirpMode mode, double t = 1.0);

struct MetaplecticGenerator {
  enum class Kind { fourier, chirp, dilation, free_flow };
  Kind kind = Kind::fourier;
  RMat A;      // chirp parameter (real symmetric)
  RMat L;      // dilation matrix (invertible; diagonal for d=2)
  double t = 0;  // free_flow time

  static MetaplecticGenerator fourier();
  static MetaplecticGenerator chirp(RMat a);
  static MetaplecticGenerator dilation(RMat l);
  static MetaplecticGenerator free_flow(double t);

  /// Associated symplectic matrix in Sp(d, R).
  RMat chi(int dim_d) const;
};

/// Applies mu(gen) for each generator in list order.
SampledSignal metaplectic_apply(const SampledSignal& u,
                                const std::vector<MetaplecticGenerator>& gens);

/// Product of the generators' symplectic matrices in application order.
RMat composite_chi(const std::vector<MetaplecticGenerator>& gens, int dim_d);

/// Fractional Fourier transform of angle theta = 2t realizing
/// e^{-t q^w} for q = i(|x|^2 + |xi|^2), with eigenvalue
/// e^{-i theta (k + 1/2)} on the k-th Hermite function. Implemented as a
/// chirp / multiplier / chirp factorization with range reduction by the
/// parity operator near odd multiples of pi.
SampledSignal harmonic_oscillator_propagate(const SampledSignal& u, double t);

/// e^{-t<xi, B xi>} multiplier for complex symmetric B with Re B >= 0.
SampledSignal quadratic_fourier_multiplier(const SampledSignal& u,
                                           const CMat& b, double t);

/// e^{-t<x, A x>} multiplication for complex symmetric A with Re A >= 0.
SampledSignal quadratic_multiplication(const SampledSignal& u, const CMat& a,
                                       double t);

}  // namespace gwf

#endif
