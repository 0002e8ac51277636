#include "netcontract/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"

namespace netcontract {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kPhaseOneTolerance = 1e-9;
constexpr double kVerifyTolerance = 1e-9;
constexpr int kMaxPivots = 100000;

// Dense phase-1 simplex for { z >= 0 : G z <= r }, Bland's rule throughout.
class PhaseOneSimplex {
 public:
  PhaseOneSimplex(const Matrix& g, const Vector& r) : rows_(g.rows()), vars_(g.cols()) {
    artificial_start_ = vars_ + rows_;
    Eigen::Index artificials = 0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (r[i] < 0.0) ++artificials;
    }
    cols_ = artificial_start_ + artificials;
    tableau_ = Matrix::Zero(rows_ + 1, cols_ + 1);
    basis_.resize(static_cast<std::size_t>(rows_));

    Eigen::Index next_artificial = artificial_start_;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      // Rows are scaled to unit max coefficient; feasibility is unchanged.
      double scale = std::max(g.row(i).cwiseAbs().maxCoeff(), std::abs(r[i]));
      if (scale == 0.0) scale = 1.0;
      const double sign = r[i] < 0.0 ? -1.0 : 1.0;
      tableau_.row(i).head(vars_) = sign * g.row(i) / scale;
      tableau_(i, vars_ + i) = sign;
      tableau_(i, cols_) = sign * r[i] / scale;
      if (r[i] < 0.0) {
        tableau_(i, next_artificial) = 1.0;
        basis_[static_cast<std::size_t>(i)] = next_artificial++;
      } else {
        basis_[static_cast<std::size_t>(i)] = vars_ + i;
      }
    }
    // Reduced costs of the phase-1 objective (sum of artificials).
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= artificial_start_) {
        tableau_.row(rows_) -= tableau_.row(i);
      }
    }
    for (Eigen::Index j = artificial_start_; j < cols_; ++j) tableau_(rows_, j) = 0.0;
  }

  void solve() {
    for (int pivots = 0; pivots < kMaxPivots; ++pivots) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (tableau_(rows_, j) < -kPivotEps) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return;

      Eigen::Index leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double coef = tableau_(i, entering);
        if (coef <= kPivotEps) continue;
        const double ratio = tableau_(i, cols_) / coef;
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leaving >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          best_ratio = std::min(best_ratio, ratio);
          leaving = i;
        }
      }
      // Phase-1 objective is bounded below by zero.
      if (leaving < 0) throw NumericalError("phase-1 simplex reported an unbounded ray");
      pivot(leaving, entering);
    }
    throw NumericalError("phase-1 simplex exceeded the pivot limit");
  }

  double infeasibility() const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= artificial_start_) total += tableau_(i, cols_);
    }
    return total;
  }

  Vector primal() const {
    Vector z = Vector::Zero(vars_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index var = basis_[static_cast<std::size_t>(i)];
      if (var < vars_) z[var] = std::max(0.0, tableau_(i, cols_));
    }
    return z;
  }

 private:
  void pivot(Eigen::Index row, Eigen::Index col) {
    tableau_.row(row) /= tableau_(row, col);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == row) continue;
      const double factor = tableau_(i, col);
      if (factor != 0.0) tableau_.row(i) -= factor * tableau_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index rows_;
  Eigen::Index vars_;
  Eigen::Index cols_ = 0;
  Eigen::Index artificial_start_ = 0;
  Matrix tableau_;
  std::vector<Eigen::Index> basis_;
};

// max_k max_i (M_k eta)_i / eta_i, the smallest b the weight certifies.
double achieved_level(const std::vector<Matrix>& metzler, const Vector& eta) {
  double level = -std::numeric_limits<double>::infinity();
  for (const auto& m : metzler) {
    level = std::max(level, (m * eta).cwiseQuotient(eta).maxCoeff());
  }
  return level;
}

void check_problem(const std::vector<Matrix>& matrices) {
  if (matrices.empty()) throw ValidationError("at least one constraint matrix is required");
  const auto n = matrices.front().rows();
  for (const auto& m : matrices) {
    require_square(m, "constraint matrix");
    if (m.rows() != n) throw ValidationError("constraint matrices must share one dimension");
  }
}

}  // namespace

std::optional<WeightVector> feasible_eta(const FeasibilityProblem& problem) {
  check_problem(problem.constraint_matrices);
  if (!std::isfinite(problem.b)) throw ValidationError("feasibility level b must be finite");
  const auto n = problem.constraint_matrices.front().rows();
  const auto k = static_cast<Eigen::Index>(problem.constraint_matrices.size());

  // eta = 1 + z, z >= 0:  (M_k - bI) z <= -(M_k - bI) 1.
  Matrix g(k * n, n);
  for (Eigen::Index block = 0; block < k; ++block) {
    Matrix shifted = problem.constraint_matrices[static_cast<std::size_t>(block)];
    shifted.diagonal().array() -= problem.b;
    g.middleRows(block * n, n) = shifted;
  }
  const Vector r = -(g * Vector::Ones(n));

  PhaseOneSimplex simplex(g, r);
  simplex.solve();
  if (simplex.infeasibility() > kPhaseOneTolerance) return std::nullopt;

  const Vector eta = Vector::Ones(n) + simplex.primal();
  const double slack = kVerifyTolerance * (1.0 + std::abs(problem.b));
  if (achieved_level(problem.constraint_matrices, eta) > problem.b + slack) return std::nullopt;
  return WeightVector(eta);
}

const char* to_string(BisectStatus status) {
  switch (status) {
    case BisectStatus::Optimal: return "optimal";
    case BisectStatus::InfeasibleEverywhere: return "infeasible_everywhere";
    case BisectStatus::ToleranceReached: return "tolerance_reached";
  }
  return "?";
}

BisectResult bisect_min_mu(const std::vector<Matrix>& matrices, NormFamily family) {
  check_problem(matrices);
  if (family == NormFamily::L2) throw ValidationError("weight optimization supports l1 and linf only");

  std::vector<Matrix> constraints;
  constraints.reserve(matrices.size());
  double bracket = 0.0;
  for (const auto& x : matrices) {
    Matrix m = metzler_majorant(x);
    if (family == NormFamily::L1) m.transposeInPlace();
    // Max row sum bounds the level reached at eta = 1.
    bracket = std::max(bracket, m.cwiseAbs().rowwise().sum().maxCoeff());
    constraints.push_back(std::move(m));
  }
  bracket += 1.0;

  BisectResult result;
  double lo = -bracket;
  double hi = bracket;
  auto top = feasible_eta({constraints, hi});
  if (!top) {
    result.b_star = hi;
    result.status = BisectStatus::InfeasibleEverywhere;
    return result;
  }
  Vector best = top->values();
  hi = std::max(lo, std::min(hi, achieved_level(constraints, best)));

  int it = 0;
  while (hi - lo > kBisectTolerance && it < kBisectMaxIterations) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    if (auto eta = feasible_eta({constraints, mid})) {
      best = eta->values();
      hi = std::max(lo, std::min(mid, achieved_level(constraints, best)));
    } else {
      lo = mid;
    }
  }

  result.b_star = hi;
  result.eta_star = WeightVector(best / best.sum());
  result.iterations = it;
  result.status = hi - lo <= kBisectTolerance ? BisectStatus::Optimal : BisectStatus::ToleranceReached;
  return result;
}

double max_lognorm(const std::vector<Matrix>& matrices, NormFamily family, const WeightVector& eta) {
  check_problem(matrices);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& m : matrices) best = std::max(best, lognorm(m, family, eta));
  return best;
}

}  // namespace netcontract
