#pragma once

#include <optional>
#include <string>
#include <variant>

#include "netcontract/matrix_core.hpp"

namespace netcontract {

// Continuous-time network models. Every constructor validates dimensions,
// finiteness, diagonality of decay matrices and the slope interval, so a
// constructed model always satisfies the standing assumptions of its
// certificate routines.

namespace detail {

// Shared parameters of x' = -Cx + A Phi(x) + u and x' = -Cx + Phi(Ax + u).
class DecayNetwork {
 public:
  DecayNetwork(Matrix c, Matrix a, Vector u, SlopeInterval slopes);

  const Matrix& c() const { return c_; }
  const Matrix& a() const { return a_; }
  const Vector& u() const { return u_; }
  const SlopeInterval& slopes() const { return slopes_; }
  Eigen::Index dim() const { return a_.rows(); }

 private:
  Matrix c_;
  Matrix a_;
  Vector u_;
  SlopeInterval slopes_;
};

}  // namespace detail

// x' = -Cx + A Phi(x) + u
class Hopfield : public detail::DecayNetwork {
 public:
  using DecayNetwork::DecayNetwork;
};

// x' = -Cx + Phi(Ax + u)
class FiringRate : public detail::DecayNetwork {
 public:
  using DecayNetwork::DecayNetwork;
};

// x' = A Phi(x), slopes with d1 > 0.
class Persidskii {
 public:
  Persidskii(Matrix a, SlopeInterval slopes);
  const Matrix& a() const { return a_; }
  const SlopeInterval& slopes() const { return slopes_; }
  Eigen::Index dim() const { return a_.rows(); }

 private:
  Matrix a_;
  SlopeInterval slopes_;
};

// x' = Ax - C Phi(x), C diagonal and nonnegative.
class AxMinusCPhi {
 public:
  AxMinusCPhi(Matrix a, Matrix c, SlopeInterval slopes);
  const Matrix& a() const { return a_; }
  const Matrix& c() const { return c_; }
  const SlopeInterval& slopes() const { return slopes_; }
  Eigen::Index dim() const { return a_.rows(); }

 private:
  Matrix a_;
  Matrix c_;
  SlopeInterval slopes_;
};

// x_i' = sum_j A_ij phi_ij(x_j), slopes with d1 > 0.
class Entrywise {
 public:
  Entrywise(Matrix a, SlopeInterval slopes);
  const Matrix& a() const { return a_; }
  const SlopeInterval& slopes() const { return slopes_; }
  Eigen::Index dim() const { return a_.rows(); }

 private:
  Matrix a_;
  SlopeInterval slopes_;
};

// x' = Ax + v phi(w^T x)
class Lure {
 public:
  Lure(Matrix a, Vector v, Vector w, SlopeInterval slopes);
  const Matrix& a() const { return a_; }
  const Vector& v() const { return v_; }
  const Vector& w() const { return w_; }
  const SlopeInterval& slopes() const { return slopes_; }
  Eigen::Index dim() const { return a_.rows(); }

 private:
  Matrix a_;
  Vector v_;
  Vector w_;
  SlopeInterval slopes_;
};

// x' = Ax + B Phi(Cout x), B is n x m and Cout is m x n.
class MultiLure {
 public:
  MultiLure(Matrix a, Matrix b, Matrix cout, SlopeInterval slopes);
  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& cout() const { return cout_; }
  const SlopeInterval& slopes() const { return slopes_; }
  Eigen::Index dim() const { return a_.rows(); }
  Eigen::Index inputs() const { return b_.cols(); }

 private:
  Matrix a_;
  Matrix b_;
  Matrix cout_;
  SlopeInterval slopes_;
};

using NetworkModel = std::variant<Hopfield, FiringRate, Persidskii, AxMinusCPhi, Entrywise, Lure, MultiLure>;

const char* model_tag(const NetworkModel& model);
Eigen::Index model_dim(const NetworkModel& model);
const SlopeInterval& model_slopes(const NetworkModel& model);

// A model is declared contracting only when its certified one-sided
// Lipschitz constant is at most -kContractionMargin.
inline constexpr double kContractionMargin = 1e-9;

struct ContractionCertificate {
  bool contracting = false;
  // c in ||x(t) - y(t)|| <= exp(-ct) ||x(0) - y(0)||; zero when not contracting.
  double rate = 0.0;
  NormFamily family = NormFamily::L1;
  // Weight for `family` in the lognorm.hpp convention.
  WeightVector eta;
  std::string theorem_tag;
  // True when `osl` is the exact minimal one-sided Lipschitz constant at eta.
  bool tight = false;
  double margin = 0.0;  // -osl
  double osl = 0.0;     // certified one-sided Lipschitz bound; +inf if none

  // Second weight for certificates valid in both l1 and linf norms.
  std::optional<WeightVector> linf_eta;
  std::optional<double> b_star;       // bisection optimum, when an LP ran
  std::optional<double> closed_form;  // closed-form optimum, when one applies
  // Rate as written in the theorem statement for unbounded slopes.
  std::optional<double> statement_rate;
  bool mh_shortcut = false;        // d1 >= 0: M-Hurwitz alone suffices
  std::string violated_condition;  // empty when every condition holds
};

// Builds the flag/rate/margin fields from a certified bound.
ContractionCertificate make_certificate(double osl, NormFamily family, WeightVector eta, std::string tag,
                                        bool tight);

struct FixedWeightOsl {
  double value = 0.0;
  bool tight = false;
};

// Minimal one-sided Lipschitz constant at a fixed weight (finite d2):
// worst case of -C + A[d] over d in [d1, d2]^n.
double osl_hopfield(const Hopfield& model, NormFamily family, const WeightVector& eta);

// Worst case of -C + [d]A. Exact only when A is invertible.
FixedWeightOsl osl_firing_rate(const FiringRate& model, NormFamily family, const WeightVector& eta);

// Optimal diagonal weight by bisection over the two extreme Jacobians, with
// the Perron closed form used and cross-checked where its preconditions hold
// (Hopfield/l1 and firing-rate/linf with C = cI and d1 >= 0, or d1 = 0 and
// C positive definite).
ContractionCertificate optimal_certificate(const Hopfield& model, NormFamily family);
ContractionCertificate optimal_certificate(const FiringRate& model, NormFamily family);

enum class RecurrentKind { Hopfield, FiringRate };

// Activations in slope[d1, inf]: requires A M-Hurwitz plus a decay
// condition. Hopfield gets the l1 certificate at w_A, firing-rate the linf
// certificate at v_A.
ContractionCertificate certify_unbounded_slope(RecurrentKind kind, const Matrix& c, const Matrix& a, double d1);

ContractionCertificate certify_persidskii(const Persidskii& model);
ContractionCertificate certify_hopfield_mh(const Matrix& c, const Matrix& a, double d2);
ContractionCertificate certify_ax_minus_cphi(const AxMinusCPhi& model);
ContractionCertificate certify_entrywise(const Entrywise& model);
ContractionCertificate certify_lure(const Lure& model, NormFamily family);

// Metzler upper bound F on every majorant ceil(A + B[d]Cout)_Mzr,
// d in [d1, d2]^m. Requires d1 >= 0.
Matrix build_lure_F(const MultiLure& model);
ContractionCertificate certify_multilure(const MultiLure& model);

inline constexpr Eigen::Index kMultiLureMaxDim = 16;

// max over d in [d1, d2]^m of muinf(A + B[d]Cout, eta), by enumerating the
// active row and the off-diagonal sign pattern. tight when Cout has full
// rank n and m >= n.
FixedWeightOsl osl_multilure_linf(const MultiLure& model, const WeightVector& eta);

// Dispatch on the model type. Without a family each model uses its natural
// norm (l1 for Hopfield-like models, linf for firing-rate).
ContractionCertificate certify(const NetworkModel& model, std::optional<NormFamily> family = std::nullopt);

// Fixed-weight one-sided Lipschitz constant for any model with finite d2.
FixedWeightOsl fixed_weight_osl(const NetworkModel& model, NormFamily family, const WeightVector& eta);

}  // namespace netcontract
