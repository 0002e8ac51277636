#include "netcontract/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netcontract/errors.hpp"

namespace netcontract {

const char* to_string(NormFamily family) {
  switch (family) {
    case NormFamily::L1: return "l1";
    case NormFamily::Linf: return "linf";
    case NormFamily::L2: return "l2";
  }
  return "?";
}

WeightVector::WeightVector(Vector eta) : eta_(std::move(eta)) {
  if (eta_.size() == 0) throw ValidationError("weight vector is empty");
  for (Eigen::Index i = 0; i < eta_.size(); ++i) {
    if (!std::isfinite(eta_[i]) || eta_[i] <= 0.0) {
      throw ValidationError("weight entries must be finite and strictly positive");
    }
  }
}

WeightVector::WeightVector(std::initializer_list<double> eta)
    : WeightVector(Vector(Eigen::Map<const Vector>(eta.begin(), static_cast<Eigen::Index>(eta.size())))) {}

WeightVector WeightVector::ones(Eigen::Index n) { return WeightVector(Vector::Ones(n)); }

WeightVector WeightVector::scaled(double theta) const {
  if (!(theta > 0.0)) throw ValidationError("weight scaling must be positive");
  return WeightVector(eta_ * theta);
}

WeightVector WeightVector::reciprocal() const { return WeightVector(eta_.cwiseInverse()); }

WeightVector WeightVector::squared() const { return WeightVector(eta_.cwiseProduct(eta_)); }

WeightVector WeightVector::normalized() const { return WeightVector(eta_ / eta_.sum()); }

WeightVector WeightVector::restricted(const IndexSet& indices) const {
  if (indices.max_index() >= size()) throw ValidationError("index out of range");
  Vector out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) out[static_cast<Eigen::Index>(k)] = eta_[indices[k]];
  return WeightVector(std::move(out));
}

IndexSet::IndexSet(std::vector<Eigen::Index> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw ValidationError("index set is empty");
  if (indices_.front() < 0) throw ValidationError("negative index");
  for (std::size_t k = 1; k < indices_.size(); ++k) {
    if (indices_[k] <= indices_[k - 1]) throw ValidationError("index set must be strictly increasing");
  }
}

IndexSet::IndexSet(std::initializer_list<Eigen::Index> indices)
    : IndexSet(std::vector<Eigen::Index>(indices)) {}

IndexSet IndexSet::full(Eigen::Index n) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  return IndexSet(std::move(all));
}

IndexSet IndexSet::from_mask(unsigned long long mask, Eigen::Index n) {
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask & (1ULL << i)) picked.push_back(i);
  }
  return IndexSet(std::move(picked));
}

SlopeInterval::SlopeInterval(double lower, double upper) : d1(lower), d2(upper) {
  if (!std::isfinite(d1)) throw ValidationError("slope lower bound d1 must be finite");
  if (std::isnan(d2) || d2 == -kInf) throw ValidationError("slope upper bound d2 must be a number or +inf");
  if (d1 > d2) throw ValidationError("slope interval requires d1 <= d2");
}

double SlopeInterval::dbar() const { return std::max(std::abs(d1), std::abs(d2)); }

bool SlopeInterval::contains(const SlopeInterval& other) const {
  return other.d1 >= d1 && other.d2 <= d2;
}

Matrix metzler_majorant(const Matrix& a) {
  Matrix m = a.cwiseAbs();
  m.diagonal() = a.diagonal();
  return m;
}

Matrix nonneg_metzler_majorant(const Matrix& a) {
  Matrix m = a.cwiseAbs();
  m.diagonal() = a.diagonal().cwiseMax(0.0);
  return m;
}

Matrix principal_submatrix(const Matrix& a, const IndexSet& indices) {
  require_square(a, "matrix");
  if (indices.max_index() >= a.rows()) throw ValidationError("index out of range");
  const auto k = static_cast<Eigen::Index>(indices.size());
  Matrix sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      sub(i, j) = a(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    }
  }
  return sub;
}

Vector pad(const Vector& y, const IndexSet& indices, Eigen::Index n) {
  if (y.size() != static_cast<Eigen::Index>(indices.size())) {
    throw ValidationError("pad: vector length does not match index set size");
  }
  if (indices.max_index() >= n) throw ValidationError("index out of range");
  Vector out = Vector::Zero(n);
  for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] = y[static_cast<Eigen::Index>(k)];
  return out;
}

bool is_metzler(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j && a(i, j) < 0.0) return false;
    }
  }
  return true;
}

bool is_diagonal(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j && a(i, j) != 0.0) return false;
    }
  }
  return true;
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw ValidationError(std::string(what) + " must be a nonempty square matrix");
  }
  require_finite(a, what);
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw ValidationError(std::string(what) + " has non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw ValidationError(std::string(what) + " has non-finite entries");
}

void require_nonneg_diagonal(const Matrix& c, const char* what) {
  require_square(c, what);
  if (!is_diagonal(c)) throw ValidationError(std::string(what) + " must be diagonal");
  if ((c.diagonal().array() < 0.0).any()) {
    throw ValidationError(std::string(what) + " must have a nonnegative diagonal");
  }
}

}  // namespace netcontract
