#include "netcontract/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "netcontract/errors.hpp"

namespace netcontract {
namespace {

constexpr int kPowerIterationCap = 100000;
constexpr double kPowerTolerance = 1e-12;

struct PowerResult {
  Vector vec;
  double value;
};

// Power iteration on M + sI with s = 1 + max |M_ii|, which is nonnegative
// with a positive diagonal. Returns nothing when the cap is hit.
std::optional<PowerResult> shifted_power_iteration(const Matrix& m) {
  const Eigen::Index n = m.rows();
  const double shift = 1.0 + m.diagonal().cwiseAbs().maxCoeff();
  Matrix shifted = m;
  shifted.diagonal().array() += shift;

  Vector v = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < kPowerIterationCap; ++it) {
    Vector next = shifted * v;
    const double total = next.sum();
    if (!(total > 0.0) || !std::isfinite(total)) return std::nullopt;
    next /= total;
    const double change = (next - v).cwiseAbs().maxCoeff() / next.maxCoeff();
    v = std::move(next);
    if (change < kPowerTolerance) {
      const double value = (m * v).sum() / v.sum();
      return PowerResult{std::move(v), value};
    }
  }
  return std::nullopt;
}

// Real eigenvector of the eigenvalue with the largest real part, from the
// dense solver. Used as the fallback when power iteration stalls.
PowerResult dense_dominant(const Matrix& m) {
  Eigen::EigenSolver<Matrix> solver(m, true);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    if (values[k].real() > values[best].real()) best = k;
  }
  Vector vec = solver.eigenvectors().col(best).real();
  if (vec.sum() < 0.0) vec = -vec;
  vec = vec.cwiseAbs();
  const double total = vec.sum();
  if (!(total > 0.0)) throw NumericalError("dominant eigenvector vanished");
  vec /= total;
  return PowerResult{std::move(vec), values[best].real()};
}

double residual_inf(const Matrix& m, const Vector& v, double value) {
  return (m * v - value * v).cwiseAbs().maxCoeff();
}

double residual_bound(const Matrix& m) {
  return 1e-9 * std::max(1.0, m.lpNorm<Eigen::Infinity>());
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  require_square(a, "matrix");
  Eigen::EigenSolver<Matrix> solver(a, true);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");

  const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const std::complex<double> lambda = solver.eigenvalues()[k];
    const Eigen::VectorXcd vec = solver.eigenvectors().col(k);
    const double residual = (ac * vec - lambda * vec).norm();
    if (residual > 1e-10 * scale * vec.norm()) {
      throw NumericalError("eigenpair residual above tolerance");
    }
    out.push_back(lambda);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return out;
}

double spectral_abscissa_general(const Matrix& a) {
  require_square(a, "matrix");
  Eigen::EigenSolver<Matrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return solver.eigenvalues().real().maxCoeff();
}

double spectral_abscissa(const Matrix& a) {
  require_square(a, "matrix");
  if (!is_metzler(a)) return spectral_abscissa_general(a);
  if (is_irreducible(a)) return perron_pair(a, 0.0).alpha;
  if (auto right = shifted_power_iteration(a)) {
    if (residual_inf(a, right->vec, right->value) <= residual_bound(a) * right->vec.maxCoeff()) {
      return right->value;
    }
  }
  return spectral_abscissa_general(a);
}

bool is_irreducible(const Matrix& a) {
  require_square(a, "matrix");
  const Eigen::Index n = a.rows();
  auto reaches_all = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const Eigen::Index j = stack.back();
      stack.pop_back();
      for (Eigen::Index i = 0; i < n; ++i) {
        // Edge j -> i exists when A(i, j) != 0.
        const double entry = forward ? a(i, j) : a(j, i);
        if (i != j && entry != 0.0 && !seen[static_cast<std::size_t>(i)]) {
          seen[static_cast<std::size_t>(i)] = 1;
          ++count;
          stack.push_back(i);
        }
      }
    }
    return count == n;
  };
  return reaches_all(true) && reaches_all(false);
}

PerronPair perron_pair(const Matrix& m, double delta) {
  require_square(m, "matrix");
  if (!is_metzler(m)) throw ValidationError("perron_pair requires a Metzler matrix");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be finite and nonnegative");
  const bool irreducible = is_irreducible(m);
  if (delta == 0.0 && !irreducible) {
    throw ValidationError("reducible Metzler matrix needs a positive delta perturbation");
  }

  const Matrix perturbed = (m.array() + delta).matrix();
  const Matrix transposed = perturbed.transpose();

  auto right = shifted_power_iteration(perturbed);
  auto left = shifted_power_iteration(transposed);
  if (!right) right = dense_dominant(perturbed);
  if (!left) left = dense_dominant(transposed);

  // Two-sided Rayleigh quotient: second-order accurate in the vector errors.
  double alpha = left->vec.dot(perturbed * right->vec) / left->vec.dot(right->vec);
  double right_res = residual_inf(perturbed, right->vec, alpha);
  double left_res = residual_inf(transposed, left->vec, alpha);

  const double bound = residual_bound(perturbed);
  if (right_res > bound * right->vec.maxCoeff() || left_res > bound * left->vec.maxCoeff()) {
    right = dense_dominant(perturbed);
    left = dense_dominant(transposed);
    alpha = left->vec.dot(perturbed * right->vec) / left->vec.dot(right->vec);
    right_res = residual_inf(perturbed, right->vec, alpha);
    left_res = residual_inf(transposed, left->vec, alpha);
    if (right_res > bound * right->vec.maxCoeff() || left_res > bound * left->vec.maxCoeff()) {
      throw NumericalError("Perron eigenvector residual above tolerance");
    }
  }
  if ((right->vec.array() <= 0.0).any() || (left->vec.array() <= 0.0).any()) {
    throw NumericalError("Perron eigenvector is not strictly positive");
  }

  return PerronPair{
      .alpha = alpha,
      .right_v = WeightVector(right->vec),
      .left_w = WeightVector(left->vec),
      .delta_used = delta,
      .irreducible = irreducible,
      .right_residual = right_res,
      .left_residual = left_res,
  };
}

WeightVector lemma1_weights(const Matrix& m, NormFamily family, double delta) {
  const PerronPair pair = perron_pair(m, delta);
  switch (family) {
    case NormFamily::L1: return pair.left_w;
    case NormFamily::Linf: return pair.right_v.reciprocal();
    case NormFamily::L2: break;
  }
  throw ValidationError("optimal Perron weights are defined here for l1 and linf only");
}

double perturbation_gap(const Matrix& m, double delta) {
  const double base = spectral_abscissa(m);
  const Matrix perturbed = (m.array() + delta).matrix();
  return spectral_abscissa(perturbed) - base;
}

}  // namespace netcontract
