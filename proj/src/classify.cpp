#include "netcontract/classify.hpp"

#include <bit>
#include <cmath>

#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"
#include "netcontract/spectral.hpp"

namespace netcontract {

bool is_hurwitz(const Matrix& a) { return spectral_abscissa(a) < -kClassEps; }

bool is_totally_hurwitz(const Matrix& a) {
  require_square(a, "matrix");
  const auto n = a.rows();
  if (n > kTotallyHurwitzMaxDim) throw ValidationError("totally Hurwitz test is limited to n <= 20");
  // 1x1 submatrices first: any diagonal entry >= 0 already fails.
  if ((a.diagonal().array() >= -kClassEps).any()) return false;
  const unsigned long long count = 1ULL << n;
  for (unsigned long long mask = 1; mask < count; ++mask) {
    if (std::popcount(mask) == 1) continue;
    if (!is_hurwitz(principal_submatrix(a, IndexSet::from_mask(mask, n)))) return false;
  }
  return true;
}

bool is_m_hurwitz(const Matrix& a) { return spectral_abscissa(metzler_majorant(a)) < -kClassEps; }

bool is_quasidominant(const Matrix& a) { return is_m_hurwitz(-a); }

bool lds_certificate(const Matrix& a, const WeightVector& eta) { return mu2(a, eta) < -kClassEps; }

WeightVector lds_witness_weight(const Matrix& a) {
  const Matrix majorant = metzler_majorant(a);
  const double delta = is_irreducible(majorant) ? 0.0 : kDefaultPerronDelta;
  const PerronPair pair = perron_pair(majorant, delta);
  return WeightVector(pair.left_w.values().cwiseQuotient(pair.right_v.values()));
}

ClassReport classify(const Matrix& a, const std::optional<WeightVector>& lds_weight) {
  require_square(a, "matrix");
  ClassReport report;
  report.abscissa = spectral_abscissa(a);
  report.majorant_abscissa = spectral_abscissa(metzler_majorant(a));
  report.hurwitz = report.abscissa < -kClassEps;
  report.m_hurwitz = report.majorant_abscissa < -kClassEps;
  report.hurwitz_marginal = std::abs(report.abscissa) <= kClassEps;
  report.m_hurwitz_marginal = std::abs(report.majorant_abscissa) <= kClassEps;
  report.totally_hurwitz = report.hurwitz && is_totally_hurwitz(a);
  report.quasidominant = is_quasidominant(a);
  if (lds_weight && lds_certificate(a, *lds_weight)) report.lds_certified_at = lds_weight;
  return report;
}

std::vector<SubsetEntry> pruning_robustness(const Matrix& a) {
  require_square(a, "matrix");
  const auto n = a.rows();
  if (n > kPruningMaxDim) throw ValidationError("pruning report is limited to n <= 12");
  std::vector<SubsetEntry> out;
  const unsigned long long count = 1ULL << n;
  out.reserve(count - 1);
  for (unsigned long long mask = 1; mask < count; ++mask) {
    IndexSet indices = IndexSet::from_mask(mask, n);
    const double alpha = spectral_abscissa(metzler_majorant(principal_submatrix(a, indices)));
    out.push_back(SubsetEntry{std::move(indices), alpha < -kClassEps, alpha});
  }
  return out;
}

EdgeRemovalResult edge_removal_check(const Matrix& a,
                                     const std::vector<std::pair<Eigen::Index, Eigen::Index>>& zeroed,
                                     double shift) {
  require_square(a, "matrix");
  if (!std::isfinite(shift)) throw ValidationError("shift must be finite");
  Matrix pruned = a;
  for (const auto& [row, col] : zeroed) {
    if (row < 0 || col < 0 || row >= a.rows() || col >= a.cols()) {
      throw ValidationError("edge position out of range");
    }
    if (row == col) throw ValidationError("edge removal applies to off-diagonal positions only");
    pruned(row, col) = 0.0;
  }
  Matrix before = a;
  before.diagonal().array() += shift;
  pruned.diagonal().array() += shift;
  EdgeRemovalResult result;
  result.before_abscissa = spectral_abscissa(before);
  result.after_abscissa = spectral_abscissa(pruned);
  result.before_hurwitz = result.before_abscissa < -kClassEps;
  result.after_hurwitz = result.after_abscissa < -kClassEps;
  return result;
}

}  // namespace netcontract
