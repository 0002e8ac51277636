#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "netcontract/matrix_core.hpp"

namespace netcontract {

// Negativity threshold for spectral abscissas and log norms: a value v is
// declared negative when v < -kClassEps, marginal when |v| <= kClassEps.
inline constexpr double kClassEps = 1e-12;

inline constexpr Eigen::Index kTotallyHurwitzMaxDim = 20;
inline constexpr Eigen::Index kPruningMaxDim = 12;

struct ClassReport {
  bool hurwitz = false;
  bool totally_hurwitz = false;
  bool m_hurwitz = false;
  bool quasidominant = false;
  // Present when a weight was supplied and the weighted l2 witness passes.
  std::optional<WeightVector> lds_certified_at;
  double abscissa = 0.0;           // alpha(A)
  double majorant_abscissa = 0.0;  // alpha(ceil(A)_Mzr)
  bool hurwitz_marginal = false;
  bool m_hurwitz_marginal = false;
};

bool is_hurwitz(const Matrix& a);
bool is_totally_hurwitz(const Matrix& a);
bool is_m_hurwitz(const Matrix& a);
bool is_quasidominant(const Matrix& a);

// True iff mu2(A, eta) < 0 at this single weight; a witness check, not an
// LDS membership test.
bool lds_certificate(const Matrix& a, const WeightVector& eta);

// Constructive LDS witness for an M-Hurwitz matrix: w ./ v from the Perron
// pair of the majorant (delta-perturbed when it is reducible), which makes
// mu2(ceil(A)_Mzr) <= alpha(ceil(A)_Mzr) + O(delta).
WeightVector lds_witness_weight(const Matrix& a);

ClassReport classify(const Matrix& a, const std::optional<WeightVector>& lds_weight = std::nullopt);

struct SubsetEntry {
  IndexSet indices;
  bool m_hurwitz = false;
  double majorant_abscissa = 0.0;
};

// Every nonempty principal submatrix, ordered by bitmask. Requires n <= 12.
std::vector<SubsetEntry> pruning_robustness(const Matrix& a);

struct EdgeRemovalResult {
  bool before_hurwitz = false;
  bool after_hurwitz = false;
  double before_abscissa = 0.0;
  double after_abscissa = 0.0;
};

// Compares shift * I + A against shift * I + A~, where A~ has the listed
// off-diagonal (row, col) entries zeroed. Positions are zero-based.
EdgeRemovalResult edge_removal_check(const Matrix& a,
                                     const std::vector<std::pair<Eigen::Index, Eigen::Index>>& zeroed,
                                     double shift);

}  // namespace netcontract
