#include "netcontract/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"

namespace netcontract {
namespace {

constexpr double kDivergenceLimit = 1e12;

// Derivative evaluation that nudges kink arguments and counts them.
struct SlopeProbe {
  const Activation& phi;
  long kinks = 0;

  double operator()(double z) {
    if (phi.is_kink(z)) {
      ++kinks;
      z += kKinkOffset;
    }
    return phi.slope(z);
  }

  Vector operator()(const Vector& z) {
    Vector out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = (*this)(z[i]);
    return out;
  }
};

Vector apply(const Activation& phi, const Vector& z) {
  return z.unaryExpr([&phi](double t) { return phi.value(t); });
}

Matrix jacobian_impl(const NetworkModel& model, SlopeProbe& probe, const Vector& x) {
  struct Visitor {
    SlopeProbe& probe;
    const Vector& x;

    Matrix operator()(const Hopfield& m) const {
      return Matrix(-m.c() + m.a() * probe(x).asDiagonal());
    }
    Matrix operator()(const FiringRate& m) const {
      const Vector z = m.a() * x + m.u();
      return Matrix(-m.c() + probe(z).asDiagonal() * m.a());
    }
    Matrix operator()(const Persidskii& m) const { return Matrix(m.a() * probe(x).asDiagonal()); }
    Matrix operator()(const AxMinusCPhi& m) const { return Matrix(m.a() - m.c() * probe(x).asDiagonal()); }
    Matrix operator()(const Entrywise& m) const { return Matrix(m.a() * probe(x).asDiagonal()); }
    Matrix operator()(const Lure& m) const {
      return Matrix(m.a() + probe(m.w().dot(x)) * m.v() * m.w().transpose());
    }
    Matrix operator()(const MultiLure& m) const {
      const Vector z = m.cout() * x;
      return Matrix(m.a() + m.b() * probe(z).asDiagonal() * m.cout());
    }
  };
  if (x.size() != model_dim(model)) throw ValidationError("state has the wrong dimension");
  return std::visit(Visitor{probe, x}, model);
}

void require_compatible(const NetworkModel& model, const Activation& phi) {
  if (!model_slopes(model).contains(phi.slope_bounds())) {
    throw ValidationError(std::string("activation ") + to_string(phi.kind()) +
                          " has slopes outside the model's slope interval");
  }
}

std::mt19937_64 substream(std::uint64_t seed, std::uint32_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32), index};
  return std::mt19937_64(seq);
}

bool diverged(const Vector& x) {
  return !x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceLimit;
}

}  // namespace

const char* to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Relu: return "relu";
    case ActivationKind::LeakyRelu: return "leaky_relu";
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::RectPoly: return "rect_poly";
    case ActivationKind::Linear: return "linear";
  }
  return "unknown";
}

Activation Activation::relu() { return {ActivationKind::Relu, 0.0}; }

Activation Activation::leaky_relu(double a) {
  if (!(a > 0.0 && a < 1.0)) throw ValidationError("leaky_relu requires 0 < a < 1");
  return {ActivationKind::LeakyRelu, a};
}

Activation Activation::tanh() { return {ActivationKind::Tanh, 0.0}; }

Activation Activation::sigmoid() { return {ActivationKind::Sigmoid, 0.0}; }

Activation Activation::rect_poly(int r) {
  if (r < 2) throw ValidationError("rect_poly requires an integer r >= 2");
  return {ActivationKind::RectPoly, static_cast<double>(r)};
}

Activation Activation::linear(double k) {
  if (!std::isfinite(k)) throw ValidationError("linear activation requires a finite gain");
  return {ActivationKind::Linear, k};
}

double Activation::value(double x) const {
  switch (kind_) {
    case ActivationKind::Relu: return std::max(x, 0.0);
    case ActivationKind::LeakyRelu: return x >= 0.0 ? x : parameter_ * x;
    case ActivationKind::Tanh: return std::tanh(x);
    case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case ActivationKind::RectPoly: return x > 0.0 ? std::pow(x, parameter_) : 0.0;
    case ActivationKind::Linear: return parameter_ * x;
  }
  return 0.0;
}

double Activation::slope(double x) const {
  switch (kind_) {
    case ActivationKind::Relu: return x >= 0.0 ? 1.0 : 0.0;
    case ActivationKind::LeakyRelu: return x >= 0.0 ? 1.0 : parameter_;
    case ActivationKind::Tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case ActivationKind::Sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 - s);
    }
    case ActivationKind::RectPoly: return x > 0.0 ? parameter_ * std::pow(x, parameter_ - 1.0) : 0.0;
    case ActivationKind::Linear: return parameter_;
  }
  return 0.0;
}

bool Activation::is_kink(double x) const {
  switch (kind_) {
    case ActivationKind::Relu:
    case ActivationKind::LeakyRelu: return x == 0.0;
    default: return false;
  }
}

SlopeInterval Activation::slope_bounds() const {
  switch (kind_) {
    case ActivationKind::Relu: return {0.0, 1.0};
    case ActivationKind::LeakyRelu: return {parameter_, 1.0};
    case ActivationKind::Tanh: return {0.0, 1.0};
    case ActivationKind::Sigmoid: return {0.0, 0.25};
    case ActivationKind::RectPoly: return {0.0, kInf};
    case ActivationKind::Linear: return {parameter_, parameter_};
  }
  return {};
}

Vector vector_field(const NetworkModel& model, const Activation& phi, const Vector& x) {
  struct Visitor {
    const Activation& phi;
    const Vector& x;

    Vector operator()(const Hopfield& m) const { return -m.c() * x + m.a() * apply(phi, x) + m.u(); }
    Vector operator()(const FiringRate& m) const { return -m.c() * x + apply(phi, m.a() * x + m.u()); }
    Vector operator()(const Persidskii& m) const { return m.a() * apply(phi, x); }
    Vector operator()(const AxMinusCPhi& m) const { return m.a() * x - m.c() * apply(phi, x); }
    Vector operator()(const Entrywise& m) const { return m.a() * apply(phi, x); }
    Vector operator()(const Lure& m) const { return m.a() * x + phi.value(m.w().dot(x)) * m.v(); }
    Vector operator()(const MultiLure& m) const { return m.a() * x + m.b() * apply(phi, m.cout() * x); }
  };
  if (x.size() != model_dim(model)) throw ValidationError("state has the wrong dimension");
  return std::visit(Visitor{phi, x}, model);
}

Matrix jacobian(const NetworkModel& model, const Activation& phi, const Vector& x) {
  SlopeProbe probe{phi};
  return jacobian_impl(model, probe, x);
}

Trajectory integrate(const NetworkModel& model, const Activation& phi, const Vector& x0, double horizon,
                     double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step must be positive");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon must be nonnegative");
  require_finite(x0, "initial state");
  if (x0.size() != model_dim(model)) throw ValidationError("initial state has the wrong dimension");
  require_compatible(model, phi);

  const auto steps = static_cast<long>(std::floor(horizon / step + 1e-9));
  Trajectory out;
  out.times.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  Vector x = x0;
  out.times.push_back(0.0);
  out.states.push_back(x);
  for (long k = 1; k <= steps; ++k) {
    const Vector k1 = vector_field(model, phi, x);
    const Vector k2 = vector_field(model, phi, x + 0.5 * step * k1);
    const Vector k3 = vector_field(model, phi, x + 0.5 * step * k2);
    const Vector k4 = vector_field(model, phi, x + step * k3);
    x += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(k) * step;
    if (diverged(x)) throw NumericalError("trajectory diverged at t = " + std::to_string(t));
    out.times.push_back(t);
    out.states.push_back(x);
  }
  return out;
}

SimReport verify_contraction(const NetworkModel& model, const Activation& phi,
                                      const ContractionCertificate& cert, int pairs, double horizon, double step,
                                      std::uint64_t seed) {
  if (!cert.contracting) throw ValidationError("certificate absent: the model is not certified contracting");
  if (pairs <= 0) throw ValidationError("pairs must be positive");
  require_compatible(model, phi);
  const Eigen::Index n = model_dim(model);
  if (cert.eta.size() != n) throw ValidationError("certificate weight has the wrong dimension");

  const bool bounded_start = phi.kind() == ActivationKind::RectPoly;
  const double h = bounded_start ? 0.5 * step : step;
  SimReport report;
  report.pairs = pairs;
  report.horizon = horizon;
  report.step = h;
  report.seed = seed;
  report.max_sampled_mu = -kInf;
  for (int p = 0; p < pairs; ++p) {
    std::mt19937_64 rng = substream(seed, static_cast<std::uint32_t>(p));
    std::normal_distribution<double> normal(0.0, kSampleScale);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Vector x0(n);
    Vector y0(n);
    for (Eigen::Index i = 0; i < n; ++i) x0[i] = bounded_start ? uniform(rng) : normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) y0[i] = bounded_start ? uniform(rng) : normal(rng);

    const Trajectory tx = integrate(model, phi, x0, horizon, h);
    const Trajectory ty = integrate(model, phi, y0, horizon, h);
    const double d0 = weighted_norm(x0 - y0, cert.family, cert.eta);
    for (std::size_t k = 0; k < tx.states.size(); ++k) {
      const double dt = weighted_norm(tx.states[k] - ty.states[k], cert.family, cert.eta);
      const double ratio = d0 > 0.0 ? dt / (std::exp(-cert.rate * tx.times[k]) * d0) : 0.0;
      report.worst_decay_ratio = std::max(report.worst_decay_ratio, ratio);
    }
    for (const Trajectory* t : {&tx, &ty}) {
      const SampledMu s = sample_jacobian_mu(model, phi, cert.family, cert.eta, t->states);
      report.max_sampled_mu = std::max(report.max_sampled_mu, s.max_mu);
      report.kink_perturbations += s.kink_perturbations;
    }
  }
  report.passed = report.worst_decay_ratio <= kContractionRatioTolerance;
  return report;
}

SampledMu sample_jacobian_mu(const NetworkModel& model, const Activation& phi, NormFamily family,
                             const WeightVector& eta, const std::vector<Vector>& states) {
  SlopeProbe probe{phi};
  SampledMu out{-kInf, 0};
  for (const Vector& x : states) out.max_mu = std::max(out.max_mu, lognorm(jacobian_impl(model, probe, x), family, eta));
  out.kink_perturbations = probe.kinks;
  return out;
}

SampledMu sample_jacobian_mu(const NetworkModel& model, const Activation& phi, int samples, NormFamily family,
                             const WeightVector& eta, std::uint64_t seed, double scale) {
  if (samples < 0) throw ValidationError("samples must be nonnegative");
  const Eigen::Index n = model_dim(model);
  std::mt19937_64 rng = substream(seed, 0);
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<Vector> states(static_cast<std::size_t>(samples), Vector(n));
  for (Vector& x : states) {
    for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
  }
  return sample_jacobian_mu(model, phi, family, eta, states);
}

}  // namespace netcontract
