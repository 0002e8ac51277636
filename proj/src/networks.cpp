#include "netcontract/networks.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "netcontract/classify.hpp"
#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"
#include "netcontract/optimize.hpp"
#include "netcontract/spectral.hpp"

namespace netcontract {
namespace {

constexpr double kClosedFormAgreement = 1e-6;

void require_bounded(const SlopeInterval& slopes, const char* what) {
  if (!slopes.bounded()) throw ValidationError(std::string(what) + " requires a finite slope upper bound");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError(std::string(what) + " has the wrong size");
}

// Perron data of a Metzler matrix, perturbed when it is reducible.
struct PerronWeights {
  PerronPair pair;
  double alpha;  // alpha of the unperturbed matrix
};

PerronWeights perron_weights(const Matrix& m) {
  const bool irreducible = is_irreducible(m);
  PerronPair pair = perron_pair(m, irreducible ? 0.0 : kDefaultPerronDelta);
  const double alpha = irreducible ? pair.alpha : spectral_abscissa(m);
  return {std::move(pair), alpha};
}

bool uniform_diagonal(const Matrix& c) {
  return (c.diagonal().array() == c(0, 0)).all();
}

bool invertible(const Matrix& a) {
  Eigen::FullPivLU<Matrix> lu(a);
  return lu.isInvertible();
}

template <class Model>
ContractionCertificate recurrent_certificate(const Model& model, NormFamily family, ScalingSide side,
                                             NormFamily closed_family, const char* name, bool exact_jacobians) {
  require_bounded(model.slopes(), "optimal certificate");
  if (family == NormFamily::L2) throw ValidationError("optimal certificate supports l1 and linf only");
  const PolytopeSpec spec(model.a(), -model.c().diagonal(), model.slopes(), side);
  const auto [first, second] = worst_case_vertices(spec, family);
  const BisectResult lp = bisect_min_mu({first, second}, family);
  if (!lp.eta_star) throw NumericalError("weight optimization found no feasible weight");

  WeightVector eta = *lp.eta_star;
  double osl = worst_case_mu(spec, family, eta);
  std::string tag = std::string(name) + "_" + to_string(family) + "_weight_bisection";
  const Matrix majorant = metzler_majorant(model.a());
  bool tight = exact_jacobians;
  std::optional<double> closed;

  const double d1 = model.slopes().d1;
  const double d2 = model.slopes().d2;
  const Matrix& c = model.c();
  if (family == closed_family) {
    std::optional<Matrix> perron_matrix;
    if (uniform_diagonal(c) && d1 >= 0.0) {
      const PerronWeights pw = perron_weights(majorant);
      closed = -c(0, 0) + std::max(d1 * pw.alpha, d2 * pw.alpha);
      perron_matrix = majorant;
      tag = std::string(name) + "_" + to_string(family) + "_uniform_decay";
    } else if (d1 == 0.0 && (c.diagonal().array() > 0.0).all()) {
      Matrix p = -c + d2 * majorant;
      closed = std::max((-c.diagonal()).maxCoeff(), spectral_abscissa(p));
      perron_matrix = std::move(p);
      tag = std::string(name) + "_" + to_string(family) + "_zero_lower_slope";
    }
    if (closed) {
      if (std::abs(lp.b_star - *closed) > kClosedFormAgreement * (1.0 + std::abs(*closed))) {
        throw NumericalError("closed-form optimum disagrees with weight bisection");
      }
      const PerronWeights pw = perron_weights(*perron_matrix);
      WeightVector candidate = family == NormFamily::L1 ? pw.pair.left_w : pw.pair.right_v;
      const double candidate_osl = worst_case_mu(spec, family, candidate);
      if (candidate_osl <= osl) {
        eta = std::move(candidate);
        osl = candidate_osl;
      }
      // A reducible majorant means the optimum need not be attained.
      tight = tight && pw.pair.irreducible;
    }
  }

  ContractionCertificate cert = make_certificate(osl, family, std::move(eta), std::move(tag), tight);
  cert.b_star = lp.b_star;
  cert.closed_form = closed;
  return cert;
}

}  // namespace

namespace detail {

DecayNetwork::DecayNetwork(Matrix c, Matrix a, Vector u, SlopeInterval slopes)
    : c_(std::move(c)), a_(std::move(a)), u_(std::move(u)), slopes_(slopes) {
  require_square(a_, "A");
  require_nonneg_diagonal(c_, "C");
  require_same_dim(c_, a_, "C");
  require_finite(u_, "u");
  if (u_.size() != a_.rows()) throw ValidationError("u has the wrong length");
}

}  // namespace detail

Persidskii::Persidskii(Matrix a, SlopeInterval slopes) : a_(std::move(a)), slopes_(slopes) {
  require_square(a_, "A");
  require_bounded(slopes_, "Persidskii model");
  if (!(slopes_.d1 > 0.0)) throw ValidationError("Persidskii model requires d1 > 0");
}

AxMinusCPhi::AxMinusCPhi(Matrix a, Matrix c, SlopeInterval slopes)
    : a_(std::move(a)), c_(std::move(c)), slopes_(slopes) {
  require_square(a_, "A");
  require_nonneg_diagonal(c_, "C");
  require_same_dim(c_, a_, "C");
  require_bounded(slopes_, "Ax - C Phi(x) model");
}

Entrywise::Entrywise(Matrix a, SlopeInterval slopes) : a_(std::move(a)), slopes_(slopes) {
  require_square(a_, "A");
  require_bounded(slopes_, "entrywise model");
  if (!(slopes_.d1 > 0.0)) throw ValidationError("entrywise model requires d1 > 0");
}

Lure::Lure(Matrix a, Vector v, Vector w, SlopeInterval slopes)
    : a_(std::move(a)), v_(std::move(v)), w_(std::move(w)), slopes_(slopes) {
  require_square(a_, "A");
  require_finite(v_, "v");
  require_finite(w_, "w");
  if (v_.size() != a_.rows() || w_.size() != a_.rows()) throw ValidationError("v and w must have length n");
  require_bounded(slopes_, "Lur'e model");
}

MultiLure::MultiLure(Matrix a, Matrix b, Matrix cout, SlopeInterval slopes)
    : a_(std::move(a)), b_(std::move(b)), cout_(std::move(cout)), slopes_(slopes) {
  require_square(a_, "A");
  require_finite(b_, "B");
  require_finite(cout_, "Cout");
  if (b_.rows() != a_.rows() || b_.cols() == 0) throw ValidationError("B must be n x m with m >= 1");
  if (cout_.rows() != b_.cols() || cout_.cols() != a_.rows()) throw ValidationError("Cout must be m x n");
  require_bounded(slopes_, "multi-Lur'e model");
}

const char* model_tag(const NetworkModel& model) {
  struct Visitor {
    const char* operator()(const Hopfield&) const { return "hopfield"; }
    const char* operator()(const FiringRate&) const { return "firing_rate"; }
    const char* operator()(const Persidskii&) const { return "persidskii"; }
    const char* operator()(const AxMinusCPhi&) const { return "ax_minus_cphi"; }
    const char* operator()(const Entrywise&) const { return "entrywise"; }
    const char* operator()(const Lure&) const { return "lure"; }
    const char* operator()(const MultiLure&) const { return "multilure"; }
  };
  return std::visit(Visitor{}, model);
}

Eigen::Index model_dim(const NetworkModel& model) {
  return std::visit([](const auto& m) { return m.dim(); }, model);
}

const SlopeInterval& model_slopes(const NetworkModel& model) {
  return std::visit([](const auto& m) -> const SlopeInterval& { return m.slopes(); }, model);
}

ContractionCertificate make_certificate(double osl, NormFamily family, WeightVector eta, std::string tag,
                                        bool tight) {
  const bool contracting = osl <= -kContractionMargin;
  return ContractionCertificate{
      .contracting = contracting,
      .rate = contracting ? -osl : 0.0,
      .family = family,
      .eta = std::move(eta),
      .theorem_tag = std::move(tag),
      .tight = tight,
      .margin = -osl,
      .osl = osl,
      .linf_eta = std::nullopt,
      .b_star = std::nullopt,
      .closed_form = std::nullopt,
      .statement_rate = std::nullopt,
      .mh_shortcut = false,
      .violated_condition = {},
  };
}

double osl_hopfield(const Hopfield& model, NormFamily family, const WeightVector& eta) {
  require_bounded(model.slopes(), "fixed-weight bound");
  const PolytopeSpec spec(model.a(), -model.c().diagonal(), model.slopes(), ScalingSide::Right);
  return worst_case_mu(spec, family, eta);
}

FixedWeightOsl osl_firing_rate(const FiringRate& model, NormFamily family, const WeightVector& eta) {
  require_bounded(model.slopes(), "fixed-weight bound");
  const PolytopeSpec spec(model.a(), -model.c().diagonal(), model.slopes(), ScalingSide::Left);
  return {worst_case_mu(spec, family, eta), invertible(model.a())};
}

ContractionCertificate optimal_certificate(const Hopfield& model, NormFamily family) {
  return recurrent_certificate(model, family, ScalingSide::Right, NormFamily::L1, "hopfield", true);
}

ContractionCertificate optimal_certificate(const FiringRate& model, NormFamily family) {
  return recurrent_certificate(model, family, ScalingSide::Left, NormFamily::Linf, "firing_rate",
                               invertible(model.a()));
}

ContractionCertificate certify_unbounded_slope(RecurrentKind kind, const Matrix& c, const Matrix& a, double d1) {
  require_square(a, "A");
  require_nonneg_diagonal(c, "C");
  require_same_dim(c, a, "C");
  if (!std::isfinite(d1)) throw ValidationError("d1 must be finite");

  const bool hopfield = kind == RecurrentKind::Hopfield;
  const NormFamily family = hopfield ? NormFamily::L1 : NormFamily::Linf;
  const Matrix majorant = metzler_majorant(a);
  const PerronWeights pw = perron_weights(majorant);
  WeightVector eta = hopfield ? pw.pair.left_w : pw.pair.right_v;
  const std::string tag = hopfield ? "hopfield_l1_unbounded_slope" : "firing_rate_linf_unbounded_slope";

  const double alpha_c = (-c.diagonal()).maxCoeff();
  const double min_diag = a.diagonal().minCoeff();
  const double shrink = std::abs(d1) - d1;
  // The decay bound uses the log norm actually achieved at eta, which is
  // alpha itself for an irreducible majorant.
  const double achieved = lognorm(majorant, family, eta);
  const double bound = alpha_c + std::max(d1, 0.0) * achieved - shrink * min_diag;

  const bool a1 = pw.alpha < -kClassEps && achieved < 0.0;
  ContractionCertificate cert = make_certificate(a1 ? bound : kInf, family, std::move(eta), tag, false);
  cert.statement_rate = -alpha_c + std::max(d1, 0.0) * pw.alpha + shrink * min_diag;
  cert.mh_shortcut = d1 >= 0.0;
  if (!a1) {
    cert.violated_condition = "A1: A is not M-Hurwitz";
  } else if (!cert.contracting) {
    cert.violated_condition = "A2: decay bound is not negative";
  }
  return cert;
}

ContractionCertificate certify_persidskii(const Persidskii& model) {
  const Matrix majorant = metzler_majorant(model.a());
  const PerronWeights pw = perron_weights(majorant);
  const PolytopeSpec spec(model.a(), Vector::Zero(model.dim()), model.slopes(), ScalingSide::Right);
  const double osl = worst_case_mu(spec, NormFamily::L1, pw.pair.left_w);
  ContractionCertificate cert =
      make_certificate(osl, NormFamily::L1, pw.pair.left_w, "persidskii_l1", pw.pair.irreducible);
  cert.closed_form = model.slopes().d1 * pw.alpha;
  if (!cert.contracting) cert.violated_condition = "A is not M-Hurwitz";
  return cert;
}

ContractionCertificate certify_hopfield_mh(const Matrix& c, const Matrix& a, double d2) {
  if (!std::isfinite(d2) || d2 < 0.0) throw ValidationError("d2 must be finite and nonnegative");
  require_square(a, "A");
  require_nonneg_diagonal(c, "C");
  require_same_dim(c, a, "C");
  if (!(c.diagonal().array() > 0.0).all()) throw ValidationError("C must be positive definite");

  const Matrix p = -c + d2 * metzler_majorant(a);
  const PerronWeights pw = perron_weights(p);
  const Hopfield model(c, a, Vector::Zero(a.rows()), SlopeInterval(0.0, d2));
  const double osl = osl_hopfield(model, NormFamily::L1, pw.pair.left_w);
  ContractionCertificate cert =
      make_certificate(osl, NormFamily::L1, pw.pair.left_w, "hopfield_l1_m_hurwitz", pw.pair.irreducible);
  cert.closed_form = std::max((-c.diagonal()).maxCoeff(), pw.alpha);
  if (!cert.contracting) cert.violated_condition = "-C + d2 A is not M-Hurwitz";
  return cert;
}

ContractionCertificate certify_ax_minus_cphi(const AxMinusCPhi& model) {
  const double d1 = model.slopes().d1;
  const Matrix p = metzler_majorant(model.a()) - d1 * model.c();
  const PerronWeights pw = perron_weights(p);
  // The diagonal of A - C[d] is largest at d = d1 since C >= 0.
  const double osl = mu1(model.a() - d1 * model.c(), pw.pair.left_w);
  ContractionCertificate cert =
      make_certificate(osl, NormFamily::L1, pw.pair.left_w, "ax_minus_cphi_l1", pw.pair.irreducible);
  cert.closed_form = pw.alpha;
  if (!cert.contracting) cert.violated_condition = "A - d1 C is not M-Hurwitz";
  return cert;
}

namespace {

// Majorant of every Jacobian A o D with D_ij in [d1, d2], d1 > 0.
Matrix entrywise_bound(const Matrix& a, const SlopeInterval& slopes) {
  Matrix b = metzler_majorant(slopes.d2 * a);
  for (Eigen::Index i = 0; i < a.rows(); ++i) b(i, i) = std::max(slopes.d1 * a(i, i), slopes.d2 * a(i, i));
  return b;
}

}  // namespace

ContractionCertificate certify_entrywise(const Entrywise& model) {
  const double d1 = model.slopes().d1;
  const double d2 = model.slopes().d2;
  Matrix b = d2 * model.a();
  b.diagonal() -= (d2 - d1) * model.a().diagonal();
  const Matrix majorant = metzler_majorant(b);
  const PerronWeights pw = perron_weights(majorant);
  const double osl = mu1(entrywise_bound(model.a(), model.slopes()), pw.pair.left_w);
  ContractionCertificate cert =
      make_certificate(osl, NormFamily::L1, pw.pair.left_w, "entrywise_l1_linf",
                       pw.pair.irreducible);
  cert.linf_eta = pw.pair.right_v;
  cert.closed_form = pw.alpha;
  if (!cert.contracting) cert.violated_condition = "B is not M-Hurwitz";
  return cert;
}

namespace {

std::vector<Matrix> lure_vertices(const Lure& model) {
  const Matrix outer = model.v() * model.w().transpose();
  return {model.a() + model.slopes().d1 * outer, model.a() + model.slopes().d2 * outer};
}

bool lure_tight(const Lure& model) {
  return !model.w().isZero(0.0) || model.v().isZero(0.0);
}

}  // namespace

ContractionCertificate certify_lure(const Lure& model, NormFamily family) {
  if (family == NormFamily::L2) throw ValidationError("Lur'e certificate supports l1 and linf only");
  const std::vector<Matrix> vertices = lure_vertices(model);
  const BisectResult lp = bisect_min_mu(vertices, family);
  if (!lp.eta_star) throw NumericalError("weight optimization found no feasible weight");
  const double osl = max_lognorm(vertices, family, *lp.eta_star);
  ContractionCertificate cert = make_certificate(osl, family, *lp.eta_star,
                                                 std::string("lure_") + to_string(family) + "_weight_bisection",
                                                 lure_tight(model));
  cert.b_star = lp.b_star;
  return cert;
}

Matrix build_lure_F(const MultiLure& model) {
  const double d1 = model.slopes().d1;
  const double d2 = model.slopes().d2;
  if (d1 < 0.0) throw ValidationError("the multi-Lur'e majorant bound requires d1 >= 0");
  const Eigen::Index n = model.dim();
  Matrix f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double plus = 0.0;
      double minus = 0.0;
      for (Eigen::Index k = 0; k < model.inputs(); ++k) {
        const double p = model.b()(i, k) * model.cout()(k, j);
        if (p > 0.0) plus += p;
        else minus += p;
      }
      if (i == j) {
        f(i, i) = model.a()(i, i) + d2 * plus + d1 * minus;
      } else {
        f(i, j) = std::abs(model.a()(i, j)) + std::max(d2 * plus + d1 * minus, -d1 * plus - d2 * minus);
      }
    }
  }
  return f;
}

ContractionCertificate certify_multilure(const MultiLure& model) {
  const Matrix f = build_lure_F(model);
  const PerronWeights pw = perron_weights(f);
  const double osl = mu1(f, pw.pair.left_w);
  ContractionCertificate cert =
      make_certificate(osl, NormFamily::L1, pw.pair.left_w, "multilure_metzler_bound", false);
  cert.linf_eta = pw.pair.right_v;
  cert.closed_form = pw.alpha;
  if (!cert.contracting) cert.violated_condition = "F is not M-Hurwitz";
  return cert;
}

namespace {

// max over d of muinf(A + B[d]Cout, eta); see osl_multilure_linf.
double multilure_row_enumeration(const Matrix& a, const Matrix& b, const Matrix& cout, const SlopeInterval& slopes,
                                 const WeightVector& eta) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  if (n > kMultiLureMaxDim) throw ValidationError("row enumeration is limited to n <= 16");
  if (eta.size() != n) throw ValidationError("weight dimension does not match matrix");
  double best = -kInf;
  const unsigned long long patterns = 1ULL << (n - 1);
  Vector coeff(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (unsigned long long mask = 0; mask < patterns; ++mask) {
      // Row i of the Jacobian is linear in d once the sign of every
      // off-diagonal entry is fixed, so each d_k sits at an endpoint.
      double constant = a(i, i);
      coeff.setZero();
      Eigen::Index bit = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        double s = 1.0;
        double scale = 1.0;
        if (j != i) {
          s = (mask & (1ULL << bit)) ? -1.0 : 1.0;
          scale = eta[j] / eta[i];
          ++bit;
          constant += s * scale * a(i, j);
        }
        for (Eigen::Index k = 0; k < m; ++k) coeff[k] += s * scale * b(i, k) * cout(k, j);
      }
      double value = constant;
      for (Eigen::Index k = 0; k < m; ++k) value += coeff[k] * (coeff[k] > 0.0 ? slopes.d2 : slopes.d1);
      best = std::max(best, value);
    }
  }
  return best;
}

bool full_column_rank(const Matrix& cout) {
  Eigen::FullPivLU<Matrix> lu(cout);
  return cout.rows() >= cout.cols() && lu.rank() == cout.cols();
}

}  // namespace

FixedWeightOsl osl_multilure_linf(const MultiLure& model, const WeightVector& eta) {
  return {multilure_row_enumeration(model.a(), model.b(), model.cout(), model.slopes(), eta),
          full_column_rank(model.cout())};
}

ContractionCertificate certify(const NetworkModel& model, std::optional<NormFamily> family) {
  struct Visitor {
    std::optional<NormFamily> family;

    NormFamily pick(NormFamily natural) const { return family.value_or(natural); }

    ContractionCertificate operator()(const Hopfield& m) const {
      const NormFamily f = pick(NormFamily::L1);
      if (m.slopes().bounded()) return optimal_certificate(m, f);
      if (f != NormFamily::L1) throw ValidationError("unbounded slopes are certified in the l1 norm only");
      return certify_unbounded_slope(RecurrentKind::Hopfield, m.c(), m.a(), m.slopes().d1);
    }
    ContractionCertificate operator()(const FiringRate& m) const {
      const NormFamily f = pick(NormFamily::Linf);
      if (m.slopes().bounded()) return optimal_certificate(m, f);
      if (f != NormFamily::Linf) throw ValidationError("unbounded slopes are certified in the linf norm only");
      return certify_unbounded_slope(RecurrentKind::FiringRate, m.c(), m.a(), m.slopes().d1);
    }
    ContractionCertificate operator()(const Persidskii& m) const {
      const NormFamily f = pick(NormFamily::L1);
      if (f == NormFamily::L1) return certify_persidskii(m);
      const Hopfield as_hopfield(Matrix::Zero(m.dim(), m.dim()), m.a(), Vector::Zero(m.dim()), m.slopes());
      return optimal_certificate(as_hopfield, f);
    }
    ContractionCertificate operator()(const AxMinusCPhi& m) const {
      if (pick(NormFamily::L1) != NormFamily::L1) throw ValidationError("this model is certified in l1 only");
      return certify_ax_minus_cphi(m);
    }
    ContractionCertificate operator()(const Entrywise& m) const {
      ContractionCertificate cert = certify_entrywise(m);
      if (pick(NormFamily::L1) == NormFamily::L1) return cert;
      if (family == NormFamily::L2) throw ValidationError("this model is certified in l1 and linf only");
      const double osl = muinf(entrywise_bound(m.a(), m.slopes()), *cert.linf_eta);
      ContractionCertificate out = make_certificate(osl, NormFamily::Linf,
                                                    *cert.linf_eta, cert.theorem_tag, cert.tight);
      out.linf_eta = cert.eta;
      out.closed_form = cert.closed_form;
      out.violated_condition = cert.violated_condition;
      return out;
    }
    ContractionCertificate operator()(const Lure& m) const { return certify_lure(m, pick(NormFamily::L1)); }
    ContractionCertificate operator()(const MultiLure& m) const {
      ContractionCertificate cert = certify_multilure(m);
      if (pick(NormFamily::L1) == NormFamily::L1) return cert;
      if (family == NormFamily::L2) throw ValidationError("this model is certified in l1 and linf only");
      const Matrix f = build_lure_F(m);
      ContractionCertificate out =
          make_certificate(muinf(f, *cert.linf_eta), NormFamily::Linf, *cert.linf_eta, cert.theorem_tag, false);
      out.linf_eta = cert.eta;
      out.closed_form = cert.closed_form;
      out.violated_condition = cert.violated_condition;
      return out;
    }
  };
  return std::visit(Visitor{family}, model);
}

FixedWeightOsl fixed_weight_osl(const NetworkModel& model, NormFamily family, const WeightVector& eta) {
  if (family == NormFamily::L2) throw ValidationError("fixed-weight bounds support l1 and linf only");
  if (!model_slopes(model).bounded()) throw ValidationError("fixed-weight bounds require a finite d2");
  if (eta.size() != model_dim(model)) throw ValidationError("weight dimension does not match model");
  struct Visitor {
    NormFamily family;
    const WeightVector& eta;

    FixedWeightOsl operator()(const Hopfield& m) const { return {osl_hopfield(m, family, eta), true}; }
    FixedWeightOsl operator()(const FiringRate& m) const { return osl_firing_rate(m, family, eta); }
    FixedWeightOsl operator()(const Persidskii& m) const {
      const PolytopeSpec spec(m.a(), Vector::Zero(m.dim()), m.slopes(), ScalingSide::Right);
      return {worst_case_mu(spec, family, eta), true};
    }
    FixedWeightOsl operator()(const AxMinusCPhi& m) const {
      return {lognorm(m.a() - m.slopes().d1 * m.c(), family, eta), true};
    }
    FixedWeightOsl operator()(const Entrywise& m) const {
      return {lognorm(entrywise_bound(m.a(), m.slopes()), family, eta), true};
    }
    FixedWeightOsl operator()(const Lure& m) const {
      return {max_lognorm(lure_vertices(m), family, eta), lure_tight(m)};
    }
    FixedWeightOsl operator()(const MultiLure& m) const {
      if (family == NormFamily::Linf) return osl_multilure_linf(m, eta);
      // mu1(X, eta) = muinf(X^T, eta), and X^T = A^T + Cout^T [d] B^T.
      return {multilure_row_enumeration(m.a().transpose(), m.cout().transpose(), m.b().transpose(), m.slopes(),
                                        eta),
              full_column_rank(m.cout())};
    }
  };
  return std::visit(Visitor{family, eta}, model);
}

}  // namespace netcontract
