#ifndef GWF_QUADHAM_HPP
#define GWF_QUADHAM_HPP

#include <string>
#include <vector>

#include "gwf/symplectic.hpp"

namespace gwf {

/// Quadratic form q(x,xi) = <(x,xi), Q (x,xi)> on phase space, with
/// Q complex symmetric and Re Q positive semidefinite.
struct QuadraticHamiltonian {
  CMat Q;     // 2d x 2d
  int dim_d;

  QuadraticHamiltonian(CMat q, int d);
};

/// Hamilton matrix F = J Q and its split into real and imaginary parts.
struct HamiltonData {
  CMat F;
  RMat reF;
  RMat imF;
  int dim_d;
  bool normal;  // [Re F, Im F] = 0 within 1e-10
};

/// Finite set of unit vectors in R^{2d} representing a closed cone.
class DirectionSet {
public:
  explicit DirectionSet(double angular_resolution)
      : angular_resolution_(angular_resolution) {}

  /// Normalizes and inserts v unless a direction within
  /// angular_resolution/2 is already present. Zero vectors are ignored.
  void add(const RVec& v);
  bool contains_within(const RVec& unit_dir, double angle) const;
  /// Smallest angle from unit_dir to any member (pi for an empty set).
  double min_angle_to(const RVec& unit_dir) const;

  const std::vector<RVec>& dirs() const { return dirs_; }
  std::size_t size() const { return dirs_.size(); }
  bool empty() const { return dirs_.empty(); }
  double angular_resolution() const { return angular_resolution_; }

  /// a subset of b, each direction matched within the given angle.
  static bool subset_within(const DirectionSet& a, const DirectionSet& b,
                            double angle);

  /// Uniform direction samples: the 2d-sphere covering used by the
  /// estimator (n equally spaced on S^1 for d=1, a super-Fibonacci
  /// spiral on S^3 for d=2).
  static DirectionSet uniform(int dim_d, int count);

private:
  std::vector<RVec> dirs_;
  double angular_resolution_;
};

enum class BudgetRule { exact, minus4d, minus8d, equal };

std::string to_string(BudgetRule rule);
BudgetRule budget_rule_from_string(const std::string& s);

/// Admissible output order r for input order s under the propagation
/// inclusions: r = s in the exact and normal cases, r < s - 4d or
/// r < s - 8d otherwise (realized with a fixed epsilon margin).
struct OrderBudget {
  double s_in = 0;
  double r_out = 0;
  double m_kernel = 0;
  BudgetRule rule = BudgetRule::equal;
};

HamiltonData hamilton_matrix(const QuadraticHamiltonian& q);

/// S = intersection over j = 0..2d-1 of Ker(Re F (Im F)^j), computed as
/// the kernel of the stacked real matrix.
Subspace singular_space(const HamiltonData& h, double tol = 1e-10);

OrderBudget order_budget(const HamiltonData& h, BudgetRule rule, double s_in,
                         double epsilon = 0.5);

/// Predicted cone of output singularities at time t for the given input
/// cone, under the selected inclusion rule. Membership of a direction in
/// a subspace cone means distance from the unit vector to the subspace
/// <= sin(angular tolerance).
DirectionSet predicted_set(const HamiltonData& h, double t,
                           const DirectionSet& input_dirs,
                           const OrderBudget& budget,
                           double rank_tol = 1e-10);

}  // namespace gwf

#endif
