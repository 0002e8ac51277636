#pragma once

#include <optional>
#include <vector>

#include "netcontract/matrix_core.hpp"

namespace netcontract {

// Find eta >= 1 with M_k eta <= b eta for every k.
//
// The matrices are expected to be Metzler (callers pass majorants, or their
// transposes for the l1 family). The feasible set is a polyhedral cone, so
// the normalization eta >= 1 loses nothing.
struct FeasibilityProblem {
  std::vector<Matrix> constraint_matrices;
  double b = 0.0;
};

// Returns the weight found by a phase-1 simplex, or nothing when the system
// is infeasible. Throws NumericalError if the simplex fails to terminate.
std::optional<WeightVector> feasible_eta(const FeasibilityProblem& problem);

enum class BisectStatus { Optimal, InfeasibleEverywhere, ToleranceReached };

const char* to_string(BisectStatus status);

struct BisectResult {
  double b_star = 0.0;
  // Certifies max_k mu(X_k, eta_star) <= b_star + 1e-8.
  std::optional<WeightVector> eta_star;
  int iterations = 0;
  BisectStatus status = BisectStatus::Optimal;
};

inline constexpr double kBisectTolerance = 1e-8;
inline constexpr int kBisectMaxIterations = 200;

// inf over eta > 0 of max_k mu_family(X_k, eta), for family L1 or Linf.
//
// The raw matrices X_k are majorized internally: for L1 each constraint is
// ceil(X_k)^T eta <= b eta, for Linf ceil(X_k) eta <= b eta. The returned eta
// follows the lognorm.hpp convention for the family.
BisectResult bisect_min_mu(const std::vector<Matrix>& matrices, NormFamily family);

// max_k mu_family(X_k, eta).
double max_lognorm(const std::vector<Matrix>& matrices, NormFamily family, const WeightVector& eta);

}  // namespace netcontract
