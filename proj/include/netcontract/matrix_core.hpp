#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace netcontract {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class IndexSet;

// Diagonally weighted l1, l-infinity and l2 norm families.
enum class NormFamily { L1, Linf, L2 };

const char* to_string(NormFamily family);

// Strictly positive weight vector defining a diagonally weighted norm.
//
// Which diagonal matrix the weight induces depends on the norm family and
// is documented at each use site (see lognorm.hpp). Any positive rescaling
// of a weight defines an equivalent constraint set.
class WeightVector {
 public:
  explicit WeightVector(Vector eta);
  WeightVector(std::initializer_list<double> eta);

  static WeightVector ones(Eigen::Index n);

  Eigen::Index size() const { return eta_.size(); }
  double operator[](Eigen::Index i) const { return eta_[i]; }
  const Vector& values() const { return eta_; }

  WeightVector scaled(double theta) const;
  WeightVector reciprocal() const;
  WeightVector squared() const;
  // Rescaled to unit sum.
  WeightVector normalized() const;
  WeightVector restricted(const IndexSet& indices) const;

 private:
  Vector eta_;
};

// Nonempty, strictly increasing set of zero-based indices.
class IndexSet {
 public:
  explicit IndexSet(std::vector<Eigen::Index> indices);
  IndexSet(std::initializer_list<Eigen::Index> indices);

  static IndexSet full(Eigen::Index n);
  // Bit k of mask selects index k.
  static IndexSet from_mask(unsigned long long mask, Eigen::Index n);

  std::size_t size() const { return indices_.size(); }
  Eigen::Index operator[](std::size_t k) const { return indices_[k]; }
  std::span<const Eigen::Index> indices() const { return indices_; }
  Eigen::Index max_index() const { return indices_.back(); }

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<Eigen::Index> indices_;
};

// Slope restriction d1 <= (phi(x) - phi(y)) / (x - y) <= d2. d2 may be +inf.
struct SlopeInterval {
  double d1 = 0.0;
  double d2 = 1.0;

  SlopeInterval() = default;
  SlopeInterval(double lower, double upper);

  bool bounded() const { return d2 < kInf; }
  // max{|d1|, |d2|}; infinite for unbounded intervals.
  double dbar() const;
  bool contains(const SlopeInterval& other) const;

  bool operator==(const SlopeInterval&) const = default;
};

Matrix metzler_majorant(const Matrix& a);
Matrix nonneg_metzler_majorant(const Matrix& a);
Matrix principal_submatrix(const Matrix& a, const IndexSet& indices);
Vector pad(const Vector& y, const IndexSet& indices, Eigen::Index n);

bool is_metzler(const Matrix& a);
bool is_diagonal(const Matrix& a);

// Throw ValidationError unless the matrix is square, nonempty and finite.
void require_square(const Matrix& a, const char* what);
void require_finite(const Matrix& a, const char* what);
void require_finite(const Vector& v, const char* what);
// Off-diagonal entries must be exactly zero and the diagonal nonnegative.
void require_nonneg_diagonal(const Matrix& c, const char* what);

}  // namespace netcontract
