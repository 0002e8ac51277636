#include "netcontract/lognorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netcontract/errors.hpp"

namespace netcontract {
namespace {

void check_weight(const Matrix& a, const WeightVector& eta) {
  require_square(a, "matrix");
  if (eta.size() != a.rows()) throw ValidationError("weight dimension does not match matrix");
}

// I o A
Matrix diagonal_part(const Matrix& a) {
  Matrix d = Matrix::Zero(a.rows(), a.cols());
  d.diagonal() = a.diagonal();
  return d;
}

}  // namespace

double mu1(const Matrix& a, const WeightVector& eta) {
  check_weight(a, eta);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    double column = a(i, i);
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
      if (j != i) column += eta[j] / eta[i] * std::abs(a(j, i));
    }
    best = std::max(best, column);
  }
  return best;
}

double muinf(const Matrix& a, const WeightVector& eta) {
  check_weight(a, eta);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double row = a(i, i);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j != i) row += eta[j] / eta[i] * std::abs(a(i, j));
    }
    best = std::max(best, row);
  }
  return best;
}

double mu2(const Matrix& a, const WeightVector& eta) {
  check_weight(a, eta);
  const Vector root = eta.values().cwiseSqrt();
  const Matrix similar = root.asDiagonal() * a * root.cwiseInverse().asDiagonal();
  const Matrix sym = 0.5 * (similar + similar.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return solver.eigenvalues().maxCoeff();
}

double lognorm(const Matrix& a, NormFamily family, const WeightVector& eta) {
  switch (family) {
    case NormFamily::L1: return mu1(a, eta);
    case NormFamily::Linf: return muinf(a, eta);
    case NormFamily::L2: return mu2(a, eta);
  }
  throw ValidationError("unknown norm family");
}

double weighted_norm(const Vector& x, NormFamily family, const WeightVector& eta) {
  if (x.size() != eta.size()) throw ValidationError("weight dimension does not match vector");
  switch (family) {
    case NormFamily::L1: return eta.values().dot(x.cwiseAbs());
    case NormFamily::Linf: return x.cwiseAbs().cwiseQuotient(eta.values()).maxCoeff();
    case NormFamily::L2: return std::sqrt(eta.values().dot(x.cwiseAbs2()));
  }
  throw ValidationError("unknown norm family");
}

const char* to_string(ScalingSide side) {
  return side == ScalingSide::Left ? "left" : "right";
}

PolytopeSpec::PolytopeSpec(Matrix a_in, Vector c_in, SlopeInterval slopes_in, ScalingSide side_in)
    : a(std::move(a_in)), c(std::move(c_in)), slopes(slopes_in), side(side_in) {
  require_square(a, "polytope matrix A");
  require_finite(c, "polytope diagonal c");
  if (c.size() != a.rows()) throw ValidationError("polytope diagonal c has the wrong length");
  if (!slopes.bounded()) throw ValidationError("polytope requires a finite slope upper bound");
}

Matrix PolytopeSpec::assemble(const Vector& d) const {
  Matrix m = side == ScalingSide::Left ? Matrix(d.asDiagonal() * a) : Matrix(a * d.asDiagonal());
  m.diagonal() += c;
  return m;
}

std::pair<Matrix, Matrix> worst_case_vertices(const PolytopeSpec& spec, NormFamily family) {
  const bool endpoint_form = (family == NormFamily::Linf && spec.side == ScalingSide::Left) ||
                             (family == NormFamily::L1 && spec.side == ScalingSide::Right);
  Matrix first;
  Matrix second;
  if (endpoint_form) {
    first = spec.slopes.d1 * spec.a;
    second = spec.slopes.d2 * spec.a;
  } else {
    const double dbar = spec.slopes.dbar();
    const Matrix diag = diagonal_part(spec.a);
    first = dbar * spec.a - (dbar - spec.slopes.d1) * diag;
    second = dbar * spec.a - (dbar - spec.slopes.d2) * diag;
  }
  first.diagonal() += spec.c;
  second.diagonal() += spec.c;
  return {std::move(first), std::move(second)};
}

double worst_case_mu(const PolytopeSpec& spec, NormFamily family, const WeightVector& eta,
                     WorstCaseRoute route) {
  if (family == NormFamily::L2) throw ValidationError("worst-case polytope log norm supports l1 and linf only");
  if (eta.size() != spec.dim()) throw ValidationError("weight dimension does not match matrix");

  const bool endpoint_form = (family == NormFamily::Linf && spec.side == ScalingSide::Left) ||
                             (family == NormFamily::L1 && spec.side == ScalingSide::Right);
  if (!endpoint_form && route == WorstCaseRoute::Auto) {
    const double d1 = spec.slopes.d1;
    const double d2 = spec.slopes.d2;
    const double dbar = spec.slopes.dbar();
    // Simplified pairs: gamma A and gamma A - (gamma - other)(I o A), with
    // gamma the endpoint of largest magnitude.
    const double gamma = (dbar == d2) ? d2 : d1;
    const double other = (dbar == d2) ? d1 : d2;
    Matrix first = gamma * spec.a;
    Matrix second = first - (gamma - other) * diagonal_part(spec.a);
    first.diagonal() += spec.c;
    second.diagonal() += spec.c;
    return std::max(lognorm(first, family, eta), lognorm(second, family, eta));
  }
  const auto [first, second] = worst_case_vertices(spec, family);
  return std::max(lognorm(first, family, eta), lognorm(second, family, eta));
}

double brute_force_worst_case(const PolytopeSpec& spec, NormFamily family, const WeightVector& eta) {
  const auto n = spec.dim();
  if (n > kBruteForceMaxDim) throw ValidationError("vertex enumeration is limited to n <= 20");
  if (eta.size() != n) throw ValidationError("weight dimension does not match matrix");
  double best = -std::numeric_limits<double>::infinity();
  const unsigned long long count = 1ULL << n;
  Vector d(n);
  for (unsigned long long mask = 0; mask < count; ++mask) {
    for (Eigen::Index i = 0; i < n; ++i) d[i] = (mask & (1ULL << i)) ? spec.slopes.d2 : spec.slopes.d1;
    best = std::max(best, lognorm(spec.assemble(d), family, eta));
  }
  return best;
}

std::pair<Matrix, Matrix> scaled_majorant_identity(double gamma, const Matrix& a) {
  require_square(a, "matrix");
  const double mag = std::abs(gamma);
  return {metzler_majorant(gamma * a), metzler_majorant(mag * a - (mag - gamma) * diagonal_part(a))};
}

}  // namespace netcontract
