#ifndef GWF_SYMPLECTIC_HPP
#define GWF_SYMPLECTIC_HPP

#include <Eigen/Dense>
#include <complex>

namespace gwf {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Orthonormal basis of a real linear subspace of R^{2d}.
/// An empty basis (zero columns) represents the trivial subspace {0}.
class Subspace {
public:
  Subspace() = default;
  /// Takes a 2d x k matrix whose columns are assumed orthonormal.
  explicit Subspace(RMat basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const RMat& basis() const { return basis_; }

  RVec project(const RVec& v) const;
  /// Euclidean distance from v to its orthogonal projection.
  double distance(const RVec& v) const;
  bool contains(const RVec& v, double tol) const;

  /// Residual max_i ||(I - P_other) b_i|| over this basis, i.e. how far
  /// this subspace sticks out of the other one.
  double containment_residual(const Subspace& other) const;

  static Subspace full(int ambient);
  static Subspace trivial(int ambient);

private:
  RMat basis_;  // 2d x k, orthonormal columns
};

/// J = [[0, I], [-I, 0]] in d x d blocks.
RMat standard_symplectic_form(int dim_d);

/// Scaling-and-squaring with a degree-13 Pade approximant.
/// Entries of magnitude above 1e8 are rejected as out of range.
CMat matrix_exponential(const CMat& m);

/// ||T^t J T - J||_max <= tol (plain transpose, also for complex T).
bool is_symplectic(const CMat& t, double tol);

/// T in Sp(d,C) is positive when the Hermitian form
/// X -> i(sigma(conj(TX), TX) - sigma(conj(X), X)) is >= 0.
/// The associated Hermitian matrix is H = i(J - T^* J T); we require
/// its eigenvalues >= -tol. Throws if T is not symplectic.
bool is_positive_symplectic(const CMat& t, double tol);

/// Null space basis via SVD. Singular values <= tol * sigma_max count as
/// zero; absolute fallback 1e-14 when sigma_max vanishes.
Subspace kernel(const RMat& m, double tol = 1e-10);

/// Intersection of two subspaces of the same ambient space, computed as
/// the kernel of the stacked projection complements.
Subspace intersect(const Subspace& a, const Subspace& b, double tol = 1e-10);

}  // namespace gwf

#endif
