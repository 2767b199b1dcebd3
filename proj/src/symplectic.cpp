#include "gwf/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace gwf {

Subspace::Subspace(RMat basis) : basis_(std::move(basis)) {
  if (basis_.cols() > 0) {
    RMat gram = basis_.transpose() * basis_;
    double err = (gram - RMat::Identity(basis_.cols(), basis_.cols()))
                     .cwiseAbs()
                     .maxCoeff();
    if (err > 1e-10)
      throw std::invalid_argument("Subspace basis is not orthonormal");
  }
}

RVec Subspace::project(const RVec& v) const {
  if (dim() == 0) return RVec::Zero(v.size());
  return basis_ * (basis_.transpose() * v);
}

double Subspace::distance(const RVec& v) const {
  return (v - project(v)).norm();
}

bool Subspace::contains(const RVec& v, double tol) const {
  return distance(v) <= tol;
}

double Subspace::containment_residual(const Subspace& other) const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    worst = std::max(worst, other.distance(basis_.col(i)));
  return worst;
}

Subspace Subspace::full(int ambient) {
  return Subspace(RMat::Identity(ambient, ambient));
}

Subspace Subspace::trivial(int ambient) {
  return Subspace(RMat::Zero(ambient, 0));
}

RMat standard_symplectic_form(int dim_d) {
  if (dim_d < 1) throw std::invalid_argument("dimension d must be >= 1");
  int n = 2 * dim_d;
  RMat j = RMat::Zero(n, n);
  j.topRightCorner(dim_d, dim_d) = RMat::Identity(dim_d, dim_d);
  j.bottomLeftCorner(dim_d, dim_d) = -RMat::Identity(dim_d, dim_d);
  return j;
}

namespace {

// Degree-13 Pade numerator coefficients (Higham 2005).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

CMat matrix_exponential(const CMat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  if (!m.allFinite())
    throw std::invalid_argument("matrix_exponential: non-finite entries");
  if (m.cwiseAbs().maxCoeff() > 1e8)
    throw std::out_of_range("matrix_exponential: entry magnitude above 1e8");

  const int n = static_cast<int>(m.rows());
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  if (norm > kTheta13)
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  CMat a = m / std::pow(2.0, squarings);

  CMat a2 = a * a;
  CMat a4 = a2 * a2;
  CMat a6 = a2 * a4;
  CMat id = CMat::Identity(n, n);

  CMat u = a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
                kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
                kPade13[1] * id);
  CMat v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
           kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 +
           kPade13[0] * id;

  CMat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

bool is_symplectic(const CMat& t, double tol) {
  if (t.rows() != t.cols() || t.rows() % 2 != 0)
    throw std::invalid_argument("is_symplectic: matrix must be 2d x 2d");
  int d = static_cast<int>(t.rows()) / 2;
  CMat j = standard_symplectic_form(d).cast<Complex>();
  return (t.transpose() * j * t - j).cwiseAbs().maxCoeff() <= tol;
}

bool is_positive_symplectic(const CMat& t, double tol) {
  if (!is_symplectic(t, std::max(tol, 1e-8)))
    throw std::invalid_argument("is_positive_symplectic: input not symplectic");
  int d = static_cast<int>(t.rows()) / 2;
  CMat j = standard_symplectic_form(d).cast<Complex>();
  CMat h = Complex(0, 1) * (j - t.adjoint() * j * t);
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  return es.eigenvalues().minCoeff() >= -tol;
}

Subspace kernel(const RMat& m, double tol) {
  const int n = static_cast<int>(m.cols());
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return Subspace::full(n);
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullV);
  double smax = svd.singularValues()(0);
  double cut = smax > 0 ? tol * smax : 1e-14;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cut) ++rank;
  int k = n - rank;
  if (k == 0) return Subspace::trivial(n);
  return Subspace(svd.matrixV().rightCols(k));
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: ambient dimensions differ");
  int n = a.ambient_dim();
  // v lies in a and b iff both projection complements annihilate it.
  RMat stacked(2 * n, n);
  stacked.topRows(n) =
      RMat::Identity(n, n) - a.basis() * a.basis().transpose();
  stacked.bottomRows(n) =
      RMat::Identity(n, n) - b.basis() * b.basis().transpose();
  Subspace result = kernel(stacked, tol);
  for (int i = 0; i < result.dim(); ++i) {
    RVec v = result.basis().col(i);
    if (a.distance(v) > 1e3 * tol || b.distance(v) > 1e3 * tol)
      throw std::runtime_error("intersect: result fails membership check");
  }
  return result;
}

}  // namespace gwf
