#include "gwf/quadham.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gwf {

QuadraticHamiltonian::QuadraticHamiltonian(CMat q, int d)
    : Q(std::move(q)), dim_d(d) {
  if (d < 1) throw std::invalid_argument("QuadraticHamiltonian: d must be >= 1");
  if (Q.rows() != 2 * d || Q.cols() != 2 * d)
    throw std::invalid_argument("QuadraticHamiltonian: Q must be 2d x 2d");
  if (!Q.allFinite())
    throw std::invalid_argument("QuadraticHamiltonian: non-finite entries");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("QuadraticHamiltonian: Q must be symmetric");
  RMat reQ = Q.real();
  Eigen::SelfAdjointEigenSolver<RMat> es(reQ);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument(
        "QuadraticHamiltonian: Re Q must be positive semidefinite");
}

HamiltonData hamilton_matrix(const QuadraticHamiltonian& q) {
  HamiltonData h;
  h.dim_d = q.dim_d;
  CMat j = standard_symplectic_form(q.dim_d).cast<Complex>();
  h.F = j * q.Q;
  h.reF = h.F.real();
  h.imF = h.F.imag();
  RMat comm = h.reF * h.imF - h.imF * h.reF;
  h.normal = comm.cwiseAbs().maxCoeff() <= 1e-10;
  return h;
}

Subspace singular_space(const HamiltonData& h, double tol) {
  int n = 2 * h.dim_d;
  RMat stacked(n * n, n);
  RMat imPow = RMat::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    stacked.middleRows(j * n, n) = h.reF * imPow;
    imPow = h.imF * imPow;
  }
  return kernel(stacked, tol);
}

void DirectionSet::add(const RVec& v) {
  double norm = v.norm();
  if (norm < 1e-14) return;
  RVec u = v / norm;
  if (contains_within(u, angular_resolution_ / 2)) return;
  dirs_.push_back(u);
}

double DirectionSet::min_angle_to(const RVec& unit_dir) const {
  double best = std::numbers::pi;
  for (const auto& w : dirs_) {
    double c = std::clamp(w.dot(unit_dir), -1.0, 1.0);
    best = std::min(best, std::acos(c));
  }
  return best;
}

bool DirectionSet::contains_within(const RVec& unit_dir, double angle) const {
  return min_angle_to(unit_dir) <= angle;
}

bool DirectionSet::subset_within(const DirectionSet& a, const DirectionSet& b,
                                 double angle) {
  for (const auto& v : a.dirs())
    if (!b.contains_within(v, angle)) return false;
  return true;
}

DirectionSet DirectionSet::uniform(int dim_d, int count) {
  if (dim_d == 1) {
    double step = 2 * std::numbers::pi / count;
    DirectionSet set(step);
    for (int i = 0; i < count; ++i) {
      double th = i * step;
      RVec v(2);
      v << std::cos(th), std::sin(th);
      set.add(v);
    }
    return set;
  }
  if (dim_d == 2) {
    // Super-Fibonacci spiral on S^3 (Alexa 2022): near-uniform covering.
    const double phi = std::numbers::sqrt2;
    const double psi = 1.533751168755204288118041;
    std::vector<RVec> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      double s = (i + 0.5) / count;
      double r = std::sqrt(s);
      double rr = std::sqrt(1.0 - s);
      double alpha = 2 * std::numbers::pi * i / phi;
      double beta = 2 * std::numbers::pi * i / psi;
      RVec v(4);
      v << r * std::sin(alpha), r * std::cos(alpha), rr * std::sin(beta),
          rr * std::cos(beta);
      pts.push_back(v);
    }
    // Angular resolution: covering-radius estimate from the largest
    // nearest-neighbor separation.
    double worst_nn = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double nn = std::numbers::pi;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i == j) continue;
        double c = std::clamp(pts[i].dot(pts[j]), -1.0, 1.0);
        nn = std::min(nn, std::acos(c));
      }
      worst_nn = std::max(worst_nn, nn);
    }
    DirectionSet set(worst_nn);
    for (const auto& v : pts) set.add(v);
    return set;
  }
  throw std::invalid_argument("DirectionSet::uniform: only d=1,2 supported");
}

std::string to_string(BudgetRule rule) {
  switch (rule) {
    case BudgetRule::exact: return "exact";
    case BudgetRule::minus4d: return "minus4d";
    case BudgetRule::minus8d: return "minus8d";
    case BudgetRule::equal: return "equal";
  }
  return "?";
}

BudgetRule budget_rule_from_string(const std::string& s) {
  if (s == "exact") return BudgetRule::exact;
  if (s == "minus4d") return BudgetRule::minus4d;
  if (s == "minus8d") return BudgetRule::minus8d;
  if (s == "equal") return BudgetRule::equal;
  throw std::invalid_argument("unknown budget rule: " + s);
}

namespace {

bool re_part_vanishes(const HamiltonData& h) {
  return h.reF.cwiseAbs().maxCoeff() <= 1e-12;
}

void check_rule(const HamiltonData& h, BudgetRule rule) {
  if (rule == BudgetRule::exact && !re_part_vanishes(h))
    throw std::invalid_argument("exact rule requires Re Q = 0");
  if (rule == BudgetRule::equal && !h.normal)
    throw std::invalid_argument("equal rule requires the normal case");
}

}  // namespace

OrderBudget order_budget(const HamiltonData& h, BudgetRule rule, double s_in,
                         double epsilon) {
  check_rule(h, rule);
  OrderBudget b;
  b.s_in = s_in;
  b.m_kernel = 0;
  b.rule = rule;
  switch (rule) {
    case BudgetRule::exact:
    case BudgetRule::equal:
      b.r_out = s_in;
      break;
    case BudgetRule::minus4d:
      b.r_out = s_in - 4 * h.dim_d - epsilon;
      break;
    case BudgetRule::minus8d:
      b.r_out = s_in - 8 * h.dim_d - epsilon;
      break;
  }
  return b;
}

DirectionSet predicted_set(const HamiltonData& h, double t,
                           const DirectionSet& input_dirs,
                           const OrderBudget& budget, double rank_tol) {
  if (t < 0) throw std::invalid_argument("predicted_set: t must be >= 0");
  check_rule(h, budget.rule);
  const double cone_margin = std::sin(input_dirs.angular_resolution());
  DirectionSet out(input_dirs.angular_resolution());

  if (budget.rule == BudgetRule::exact) {
    // Re Q = 0 makes -2itF real and e^{-2itF} in Sp(d,R).
    RMat flow = matrix_exponential(Complex(0, -2 * t) * h.F).real();
    for (const auto& v : input_dirs.dirs()) out.add(flow * v);
    return out;
  }

  if (budget.rule == BudgetRule::minus4d) {
    CMat tmat = matrix_exponential(Complex(0, -2 * t) * h.F);
    Subspace ker_im = kernel(tmat.imag(), rank_tol);
    RMat re_t = tmat.real();
    for (const auto& v : input_dirs.dirs())
      if (ker_im.distance(v) <= cone_margin) out.add(re_t * v);
    return out;
  }

  // equal / minus8d: flow along e^{2t Im F} inside the singular-space cone.
  Subspace s = singular_space(h, rank_tol);
  RMat flow = matrix_exponential(CMat(Complex(2 * t, 0) * h.imF.cast<Complex>()))
                  .real();
  for (const auto& v : input_dirs.dirs()) {
    if (s.distance(v) > cone_margin) continue;
    RVec mapped = flow * v;
    double norm = mapped.norm();
    if (norm < 1e-14) continue;
    mapped /= norm;
    if (s.distance(mapped) <= cone_margin) out.add(mapped);
  }
  return out;
}

}  // namespace gwf
