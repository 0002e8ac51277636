#pragma once

#include <cstdint>
#include <vector>

#include "netcontract/matrix_core.hpp"
#include "netcontract/networks.hpp"

namespace netcontract {

enum class ActivationKind { Relu, LeakyRelu, Tanh, Sigmoid, RectPoly, Linear };

const char* to_string(ActivationKind kind);

// Scalar activation applied componentwise.
class Activation {
 public:
  static Activation relu();
  // max(a x, x), 0 < a < 1.
  static Activation leaky_relu(double a);
  static Activation tanh();
  static Activation sigmoid();
  // max(0, x)^r, integer r >= 2.
  static Activation rect_poly(int r);
  static Activation linear(double k);

  ActivationKind kind() const { return kind_; }
  // a, r or k; zero for parameterless kinds.
  double parameter() const { return parameter_; }

  double value(double x) const;
  // Right derivative.
  double slope(double x) const;
  bool is_kink(double x) const;
  // Tightest interval containing every difference quotient.
  SlopeInterval slope_bounds() const;

 private:
  Activation(ActivationKind kind, double parameter) : kind_(kind), parameter_(parameter) {}
  ActivationKind kind_;
  double parameter_;
};

Vector vector_field(const NetworkModel& model, const Activation& phi, const Vector& x);
Matrix jacobian(const NetworkModel& model, const Activation& phi, const Vector& x);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
};

// Fixed-step RK4 on [0, horizon]; floor(horizon / step) + 1 samples. The
// activation's slopes must lie in the model's interval. Throws
// NumericalError when the state stops being finite.
Trajectory integrate(const NetworkModel& model, const Activation& phi, const Vector& x0, double horizon,
                     double step);

inline constexpr double kContractionRatioTolerance = 1.001;

inline constexpr double kDefaultHorizon = 5.0;
inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kSampleScale = 3.0;

struct SimReport {
  bool passed = false;
  // max over pairs and samples of ||x(t) - y(t)|| / (exp(-rate t) ||x(0) - y(0)||)
  double worst_decay_ratio = 0.0;
  // Largest log norm of the Jacobian seen along the trajectories.
  double max_sampled_mu = 0.0;
  int pairs = 0;
  double horizon = 0.0;
  double step = 0.0;  // step actually used
  std::uint64_t seed = 0;
  long kink_perturbations = 0;
};

// Simulates random pairs of initial conditions and measures distance decay
// in the certificate's weighted norm. Initial states are 3 * N(0, 1) per
// component (uniform on [-1, 1] for rect_poly, with half the step), drawn
// from a stream seeded by (seed, pair index). Throws ValidationError when
// the certificate is not contracting.
SimReport verify_contraction(const NetworkModel& model, const Activation& phi,
                                      const ContractionCertificate& cert, int pairs, double horizon, double step,
                                      std::uint64_t seed);

struct SampledMu {
  double max_mu = 0.0;  // -inf for an empty sample
  long kink_perturbations = 0;
};

inline constexpr double kKinkOffset = 1e-12;

// Jacobian log norms at the given states. Activation arguments that sit
// exactly on a kink are moved by kKinkOffset first.
SampledMu sample_jacobian_mu(const NetworkModel& model, const Activation& phi, NormFamily family,
                             const WeightVector& eta, const std::vector<Vector>& states);

// Same, at `samples` states with independent scale * N(0, 1) entries.
SampledMu sample_jacobian_mu(const NetworkModel& model, const Activation& phi, int samples, NormFamily family,
                             const WeightVector& eta, std::uint64_t seed, double scale = kSampleScale);

}  // namespace netcontract
