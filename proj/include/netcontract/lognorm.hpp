#pragma once

#include <utility>

#include "netcontract/matrix_core.hpp"

namespace netcontract {

// Weight conventions. Every function below takes the eta that appears
// inside the closed-form log norm expression:
//
//   mu1(A, eta)   : norm ||x|| = sum_i eta_i |x_i|          (weight [eta])
//   muinf(A, eta) : norm ||x|| = max_i |x_i| / eta_i        (weight [eta]^-1)
//   mu2(A, eta)   : norm ||x|| = sqrt(sum_i eta_i x_i^2)    (weight [eta]^1/2)

double mu1(const Matrix& a, const WeightVector& eta);
double muinf(const Matrix& a, const WeightVector& eta);
double mu2(const Matrix& a, const WeightVector& eta);
double lognorm(const Matrix& a, NormFamily family, const WeightVector& eta);

double weighted_norm(const Vector& x, NormFamily family, const WeightVector& eta);

enum class ScalingSide {
  Left,   // [c] + [d] A : rows scaled
  Right,  // [c] + A [d] : columns scaled
};

const char* to_string(ScalingSide side);

// The matrix polytope { [c] + [d]A or [c] + A[d] : d in [d1, d2]^n }.
struct PolytopeSpec {
  Matrix a;
  Vector c;
  SlopeInterval slopes;
  ScalingSide side = ScalingSide::Right;

  PolytopeSpec(Matrix a, Vector c, SlopeInterval slopes, ScalingSide side);

  Eigen::Index dim() const { return a.rows(); }
  // [c] + [d]A or [c] + A[d] for a given scaling vector d.
  Matrix assemble(const Vector& d) const;
};

enum class WorstCaseRoute {
  Auto,     // use the simplified endpoint pair when dbar = d2 or dbar = -d1
  General,  // always use the dbar-shifted pair
};

// Exact max over the polytope of the fixed-weight l1 / l-infinity log norm,
// evaluated on two matrices instead of 2^n vertices.
double worst_case_mu(const PolytopeSpec& spec, NormFamily family, const WeightVector& eta,
                     WorstCaseRoute route = WorstCaseRoute::Auto);

// The two matrices whose log norms worst_case_mu maximizes over, for the
// given family and side (general route).
std::pair<Matrix, Matrix> worst_case_vertices(const PolytopeSpec& spec, NormFamily family);

inline constexpr Eigen::Index kBruteForceMaxDim = 20;

// max over all 2^n vertices d in {d1, d2}^n. Requires n <= 20.
double brute_force_worst_case(const PolytopeSpec& spec, NormFamily family, const WeightVector& eta);

// (ceil(gamma A)_Mzr, ceil(|gamma| A - (|gamma| - gamma)(I o A))_Mzr); the
// two are equal entrywise for every gamma.
std::pair<Matrix, Matrix> scaled_majorant_identity(double gamma, const Matrix& a);

}  // namespace netcontract
