#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"
#include "netcontract/networks.hpp"
#include "netcontract/spectral.hpp"
#include "test_support.hpp"

namespace nc = netcontract;
using nc::Matrix;
using nc::NormFamily;
using nc::SlopeInterval;
using nc::Vector;
using nc::WeightVector;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix eye(Eigen::Index n) { return Matrix::Identity(n, n); }

const Matrix kAstar = m2(1, 1, -1, 1);
const Matrix kLds = m2(-1, -1, 2, -1);

nc::Hopfield hopfield(const Matrix& c, const Matrix& a, SlopeInterval s) {
  return nc::Hopfield(c, a, Vector::Zero(a.rows()), s);
}

nc::FiringRate firing(const Matrix& c, const Matrix& a, SlopeInterval s) {
  return nc::FiringRate(c, a, Vector::Zero(a.rows()), s);
}

Matrix random_decay(testsupport::Rng& rng, Eigen::Index n) {
  return rng.vector(n, 0.2, 2.0).asDiagonal();
}

TEST(Models, Validation) {
  EXPECT_THROW(hopfield(m2(1, 0.1, 0, 1), eye(2), {0, 1}), nc::ValidationError);
  EXPECT_THROW(hopfield(-eye(2), eye(2), {0, 1}), nc::ValidationError);
  EXPECT_THROW(nc::Hopfield(eye(2), eye(2), Vector::Zero(3), {0, 1}), nc::ValidationError);
  EXPECT_THROW(nc::Persidskii(eye(2), {0.0, 1.0}), nc::ValidationError);
  EXPECT_THROW(nc::Persidskii(eye(2), {0.5, nc::kInf}), nc::ValidationError);
  EXPECT_THROW(nc::Entrywise(eye(2), {-1.0, 1.0}), nc::ValidationError);
  EXPECT_THROW(nc::Lure(eye(2), Vector::Zero(2), Vector::Zero(3), {0, 1}), nc::ValidationError);
  EXPECT_THROW(nc::MultiLure(eye(2), Matrix::Zero(2, 1), Matrix::Zero(2, 2), {0, 1}), nc::ValidationError);
  EXPECT_NO_THROW(hopfield(eye(2), eye(2), {0, nc::kInf}));
}

TEST(OslHopfield, Fixtures) {
  for (NormFamily f : {NormFamily::L1, NormFamily::Linf}) {
    EXPECT_DOUBLE_EQ(nc::osl_hopfield(hopfield(eye(3), Matrix::Zero(3, 3), {-2, 5}), f, WeightVector{1, 2, 3}),
                     -1.0);
  }
  EXPECT_NEAR(nc::osl_hopfield(hopfield(eye(2), m2(0, 0.5, 0.5, 0), {0, 1}), NormFamily::L1, WeightVector::ones(2)),
              -0.5, 1e-15);
  EXPECT_THROW(nc::osl_hopfield(hopfield(eye(2), eye(2), {0, nc::kInf}), NormFamily::L1, WeightVector::ones(2)),
               nc::ValidationError);
}

TEST(OslHopfield, MatchesVertexEnumeration) {
  testsupport::Rng rng(131);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = rng.integer(1, 8);
    const Matrix c = random_decay(rng, n);
    const Matrix a = rng.matrix(n, -2, 2);
    const double d1 = rng.uniform(-1, 1);
    const SlopeInterval s(d1, d1 + rng.uniform(0, 2));
    const WeightVector eta = rng.weight(n);
    for (NormFamily f : {NormFamily::L1, NormFamily::Linf}) {
      const nc::PolytopeSpec spec(a, -c.diagonal(), s, nc::ScalingSide::Right);
      EXPECT_NEAR(nc::osl_hopfield(hopfield(c, a, s), f, eta), nc::brute_force_worst_case(spec, f, eta), 1e-10);
    }
  }
}

TEST(OslFiringRate, Fixtures) {
  const nc::FixedWeightOsl zero = nc::osl_firing_rate(firing(eye(2), Matrix::Zero(2, 2), {0, 1}), NormFamily::Linf,
                                                      WeightVector::ones(2));
  EXPECT_DOUBLE_EQ(zero.value, -1.0);
  EXPECT_FALSE(zero.tight);

  const Matrix a = m2(1, 2, -3, 0.5);
  const nc::FixedWeightOsl single =
      nc::osl_firing_rate(firing(2 * eye(2), a, {0.7, 0.7}), NormFamily::L1, WeightVector{1, 3});
  EXPECT_TRUE(single.tight);
  EXPECT_NEAR(single.value, nc::mu1(-2 * eye(2) + 0.7 * a, WeightVector{1, 3}), 1e-14);
}

TEST(OslFiringRate, MatchesVertexEnumeration) {
  testsupport::Rng rng(137);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = rng.integer(1, 8);
    const Matrix c = random_decay(rng, n);
    const Matrix a = rng.matrix(n, -2, 2);
    const SlopeInterval s(rng.uniform(-1, 0.5), 1.0);
    const WeightVector eta = rng.weight(n);
    for (NormFamily f : {NormFamily::L1, NormFamily::Linf}) {
      const nc::FixedWeightOsl r = nc::osl_firing_rate(firing(c, a, s), f, eta);
      EXPECT_TRUE(r.tight);
      const nc::PolytopeSpec spec(a, -c.diagonal(), s, nc::ScalingSide::Left);
      EXPECT_NEAR(r.value, nc::brute_force_worst_case(spec, f, eta), 1e-10);
    }
  }
}

TEST(OptimalCertificate, UniformDecayFixture) {
  const nc::ContractionCertificate c =
      nc::optimal_certificate(hopfield(2 * eye(2), m2(0, 1, 1, 0), {0.5, 1}), NormFamily::L1);
  EXPECT_TRUE(c.contracting);
  EXPECT_NEAR(c.rate, 1.0, 1e-9);
  EXPECT_NEAR(c.eta[0] / c.eta[1], 1.0, 1e-9);
  ASSERT_TRUE(c.closed_form.has_value());
  EXPECT_NEAR(*c.closed_form, -1.0, 1e-12);
}

TEST(OptimalCertificate, NotContractingForComplexPair) {
  const nc::ContractionCertificate c = nc::optimal_certificate(hopfield(eye(2), kAstar, {1, 1}), NormFamily::L1);
  EXPECT_FALSE(c.contracting);
  EXPECT_EQ(c.rate, 0.0);
  ASSERT_TRUE(c.b_star.has_value());
  EXPECT_NEAR(*c.b_star, 1.0, 1e-6);
}

TEST(OptimalCertificate, ZeroLowerSlopeClosedForm) {
  testsupport::Rng rng(139);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = rng.integer(2, 6);
    const Matrix a = rng.matrix(n, -0.6, 0.6);
    const nc::ContractionCertificate c = nc::optimal_certificate(hopfield(eye(n), a, {0, 1}), NormFamily::L1);
    const double expected = std::max(-1.0, testsupport::dense_abscissa(-eye(n) + testsupport::majorant(a)));
    EXPECT_NEAR(*c.b_star, expected, 1e-6);
    EXPECT_NEAR(c.osl, expected, 1e-6);
    if (expected < -1e-6) {
      EXPECT_NEAR(c.rate, -expected, 1e-6);
    }
  }
}

TEST(OptimalCertificate, FiringRateClosedForms) {
  testsupport::Rng rng(149);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = rng.integer(2, 6);
    const Matrix a = rng.matrix(n, -1, 1);
    const double alpha = testsupport::dense_abscissa(testsupport::majorant(a));
    const nc::ContractionCertificate u =
        nc::optimal_certificate(firing(1.5 * eye(n), a, {0.2, 0.9}), NormFamily::Linf);
    EXPECT_NEAR(*u.b_star, -1.5 + std::max(0.2 * alpha, 0.9 * alpha), 1e-6);
    const Matrix c = random_decay(rng, n);
    const nc::ContractionCertificate z = nc::optimal_certificate(firing(c, a, {0, 0.8}), NormFamily::Linf);
    const double expected =
        std::max((-c.diagonal()).maxCoeff(), testsupport::dense_abscissa(-c + 0.8 * testsupport::majorant(a)));
    EXPECT_NEAR(*z.b_star, expected, 1e-6);
  }
}

TEST(OptimalCertificate, BoundedBelowByVertexMajorants) {
  testsupport::Rng rng(151);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = rng.integer(1, 6);
    const Matrix c = random_decay(rng, n);
    const Matrix a = rng.matrix(n, -1, 1);
    const double d1 = rng.uniform(-1, 0.5);
    const SlopeInterval s(d1, d1 + rng.uniform(0.1, 1.5));
    for (NormFamily f : {NormFamily::L1, NormFamily::Linf}) {
      for (nc::ScalingSide side : {nc::ScalingSide::Right, nc::ScalingSide::Left}) {
        const nc::ContractionCertificate cert = side == nc::ScalingSide::Right
                                                    ? nc::optimal_certificate(hopfield(c, a, s), f)
                                                    : nc::optimal_certificate(firing(c, a, s), f);
        const auto [x1, x2] = nc::worst_case_vertices(nc::PolytopeSpec(a, -c.diagonal(), s, side), f);
        const double floor = std::max(testsupport::dense_abscissa(testsupport::majorant(x1)),
                                      testsupport::dense_abscissa(testsupport::majorant(x2)));
        EXPECT_GE(*cert.b_star, floor - 1e-6);
        // The reported bound is re-evaluated at the returned weight.
        const nc::PolytopeSpec spec(a, -c.diagonal(), s, side);
        EXPECT_NEAR(cert.osl, nc::worst_case_mu(spec, f, cert.eta), 1e-12);
        EXPECT_LE(cert.osl, *cert.b_star + 1e-8);
        EXPECT_EQ(cert.contracting, cert.osl <= -nc::kContractionMargin);
      }
    }
  }
}

TEST(OptimalCertificate, ReducibleMajorantNotTight) {
  const nc::ContractionCertificate c =
      nc::optimal_certificate(hopfield(eye(2), m2(-1, 0.5, 0, -1), {0.5, 1}), NormFamily::L1);
  EXPECT_TRUE(c.contracting);
  EXPECT_FALSE(c.tight);
}

TEST(UnboundedSlope, MHurwitzSufficesForNonnegativeLowerSlope) {
  const Matrix a = m2(-2, 1, 1, -2);
  const nc::ContractionCertificate c =
      nc::certify_unbounded_slope(nc::RecurrentKind::Hopfield, Matrix::Zero(2, 2), a, 0.5);
  EXPECT_TRUE(c.contracting);
  EXPECT_NEAR(c.rate, 0.5, 1e-9);
  EXPECT_TRUE(c.mh_shortcut);
  EXPECT_EQ(c.family, NormFamily::L1);
}

TEST(UnboundedSlope, DecayBoundFixture) {
  const nc::ContractionCertificate c =
      nc::certify_unbounded_slope(nc::RecurrentKind::Hopfield, eye(2), m2(-2, 1, 1, -2), 1.0);
  EXPECT_TRUE(c.contracting);
  EXPECT_NEAR(c.rate, 2.0, 1e-9);
  ASSERT_TRUE(c.statement_rate.has_value());
}

TEST(UnboundedSlope, NegativeLowerSlopeUsesDiagonal) {
  // d1 = -0.5: bound = alpha(-C) - (|d1| - d1) min A_ii = -1 - 1 * (-3) = 2.
  const Matrix a = m2(-3, 0.5, 0.5, -3);
  const nc::ContractionCertificate c =
      nc::certify_unbounded_slope(nc::RecurrentKind::FiringRate, eye(2), a, -0.5);
  EXPECT_FALSE(c.contracting);
  EXPECT_NEAR(c.osl, 2.0, 1e-9);
  EXPECT_EQ(c.family, NormFamily::Linf);
  EXPECT_FALSE(c.mh_shortcut);
  EXPECT_EQ(c.violated_condition.substr(0, 2), "A2");
}

TEST(UnboundedSlope, NotMHurwitzNamesA1) {
  const nc::ContractionCertificate c = nc::certify_unbounded_slope(nc::RecurrentKind::Hopfield, eye(2), kLds, 1.0);
  EXPECT_FALSE(c.contracting);
  EXPECT_EQ(c.violated_condition.substr(0, 2), "A1");
}

TEST(Persidskii, Fixtures) {
  const nc::ContractionCertificate c = nc::certify_persidskii(nc::Persidskii(m2(-2, 1, 1, -2), {0.5, 3}));
  EXPECT_TRUE(c.contracting);
  EXPECT_NEAR(c.rate, 0.5, 1e-9);
  EXPECT_NEAR(c.eta[0], 0.5, 1e-9);

  const nc::ContractionCertificate diag = nc::certify_persidskii(nc::Persidskii(-eye(2), {0.5, 3}));
  EXPECT_TRUE(diag.contracting);
  EXPECT_NEAR(diag.rate, 0.5, 1e-6);
  EXPECT_FALSE(diag.tight);

  EXPECT_FALSE(nc::certify_persidskii(nc::Persidskii(kLds, {1, 2})).contracting);
}

TEST(HopfieldMHurwitz, Fixtures) {
  EXPECT_NEAR(nc::certify_hopfield_mh(eye(2), m2(0, 0.5, 0.5, 0), 1).rate, 0.5, 1e-9);
  EXPECT_NEAR(nc::certify_hopfield_mh(eye(2), Matrix::Zero(2, 2), 1).rate, 1.0, 1e-6);
  EXPECT_FALSE(nc::certify_hopfield_mh(eye(2), kAstar, 1).contracting);
  EXPECT_THROW(nc::certify_hopfield_mh(Matrix::Zero(2, 2), kAstar, 1), nc::ValidationError);
}

TEST(AxMinusCPhi, Fixtures) {
  const nc::ContractionCertificate c =
      nc::certify_ax_minus_cphi(nc::AxMinusCPhi(m2(-1, 0.5, 0.5, -1), eye(2), {1, 2}));
  EXPECT_TRUE(c.contracting);
  EXPECT_NEAR(c.rate, 1.5, 1e-9);

  const Matrix a = m2(-2, 0.7, -0.4, -1.5);
  const nc::ContractionCertificate zero_c =
      nc::certify_ax_minus_cphi(nc::AxMinusCPhi(a, Matrix::Zero(2, 2), {1, 2}));
  EXPECT_NEAR(zero_c.rate, -testsupport::dense_abscissa(testsupport::majorant(a)), 1e-9);

  EXPECT_FALSE(nc::certify_ax_minus_cphi(nc::AxMinusCPhi(kLds, Matrix::Zero(2, 2), {1, 2})).contracting);
}

TEST(Entrywise, Fixtures) {
  const Matrix a = m2(-2, 0.7, -0.4, -1.5);
  const nc::ContractionCertificate same = nc::certify_entrywise(nc::Entrywise(a, {1, 1}));
  EXPECT_NEAR(same.rate, -testsupport::dense_abscissa(testsupport::majorant(a)), 1e-9);

  const nc::ContractionCertificate marginal = nc::certify_entrywise(nc::Entrywise(m2(-2, 1, 1, -2), {1, 2}));
  EXPECT_FALSE(marginal.contracting);
  EXPECT_EQ(marginal.rate, 0.0);

  const nc::ContractionCertificate c = nc::certify_entrywise(nc::Entrywise(m2(-3, 1, 1, -3), {1, 2}));
  EXPECT_TRUE(c.contracting);
  EXPECT_NEAR(c.rate, 1.0, 1e-9);
  ASSERT_TRUE(c.linf_eta.has_value());
  const Matrix b = m2(-3, 2, 2, -3);
  EXPECT_NEAR(nc::muinf(b, *c.linf_eta), -1.0, 1e-9);
}

TEST(Lure, Fixtures) {
  Vector e1 = Vector::Zero(2);
  e1[0] = 1.0;
  const nc::ContractionCertificate c = nc::certify_lure(nc::Lure(-2 * eye(2), e1, e1, {0, 1}), NormFamily::L1);
  ASSERT_TRUE(c.b_star.has_value());
  EXPECT_NEAR(*c.b_star, -1.0, 1e-6);
  EXPECT_TRUE(c.contracting);

  const Matrix a = m2(-2, 0.7, -0.4, -1.5);
  const nc::ContractionCertificate zero = nc::certify_lure(nc::Lure(a, Vector::Zero(2), e1, {0, 1}), NormFamily::L1);
  EXPECT_NEAR(*zero.b_star, testsupport::dense_abscissa(testsupport::majorant(a)), 1e-6);
  EXPECT_TRUE(zero.tight);
}

TEST(Lure, MatchesScalarGrid) {
  testsupport::Rng rng(157);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = rng.integer(2, 5);
    const nc::Lure model(rng.m_hurwitz(n), rng.vector(n), rng.vector(n), {rng.uniform(-1, 0), rng.uniform(0, 1)});
    for (NormFamily f : {NormFamily::L1, NormFamily::Linf}) {
      const nc::ContractionCertificate c = nc::certify_lure(model, f);
      double grid = -nc::kInf;
      for (int k = 0; k <= 100; ++k) {
        const double d = model.slopes().d1 + (model.slopes().d2 - model.slopes().d1) * k / 100.0;
        grid = std::max(grid, nc::lognorm(model.a() + d * model.v() * model.w().transpose(), f, c.eta));
      }
      EXPECT_NEAR(grid, c.osl, 1e-9);
      EXPECT_NEAR(grid, *c.b_star, 1e-6);
    }
  }
}

TEST(BuildLureF, Fixtures) {
  const Matrix a = m2(-2, -0.7, 0.4, -1.5);
  const nc::MultiLure zero_b(a, Matrix::Zero(2, 3), Matrix::Ones(3, 2), {0, 1});
  EXPECT_EQ(nc::build_lure_F(zero_b), testsupport::majorant(a));

  const nc::MultiLure scalar(Matrix::Constant(1, 1, -1.0), Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 0.5),
                             {0.25, 3});
  EXPECT_DOUBLE_EQ(nc::build_lure_F(scalar)(0, 0), -1.0 + 3 * 1.0);

  EXPECT_THROW(nc::build_lure_F(nc::MultiLure(a, Matrix::Ones(2, 1), Matrix::Ones(1, 2), {-0.1, 1})),
               nc::ValidationError);
}

TEST(BuildLureF, DominatesSampledMajorants) {
  testsupport::Rng rng(163);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = rng.integer(1, 5);
    const Eigen::Index m = rng.integer(1, 4);
    const nc::MultiLure model(rng.matrix(n), rng.rect(n, m), rng.rect(m, n), {rng.uniform(0, 0.5), 1.0});
    const Matrix f = nc::build_lure_F(model);
    for (int s = 0; s < 1000; ++s) {
      const Vector d = rng.vector(m, model.slopes().d1, model.slopes().d2);
      const Matrix sample = testsupport::majorant(model.a() + model.b() * d.asDiagonal() * model.cout());
      EXPECT_TRUE(((f - sample).array() >= -1e-12).all());
    }
  }
}

TEST(MultiLure, Certificates) {
  const Matrix a = m2(-2, 0.7, -0.4, -1.5);
  const nc::ContractionCertificate c =
      nc::certify_multilure(nc::MultiLure(a, Matrix::Zero(2, 1), Matrix::Ones(1, 2), {0, 1}));
  EXPECT_NEAR(c.rate, -testsupport::dense_abscissa(testsupport::majorant(a)), 1e-9);
  EXPECT_TRUE(c.linf_eta.has_value());
  EXPECT_FALSE(nc::certify_multilure(nc::MultiLure(kLds, Matrix::Zero(2, 1), Matrix::Ones(1, 2), {0, 1})).contracting);
}

TEST(MultiLureOsl, Fixtures) {
  testsupport::Rng rng(167);
  const Matrix a = rng.matrix(3);
  const WeightVector eta = rng.weight(3);
  const nc::FixedWeightOsl zero = nc::osl_multilure_linf(nc::MultiLure(a, Matrix::Zero(3, 3), eye(3), {0, 1}), eta);
  EXPECT_NEAR(zero.value, nc::muinf(a, eta), 1e-14);
  EXPECT_TRUE(zero.tight);

  const Matrix b = rng.rect(3, 2);
  const Matrix cout = rng.rect(2, 3);
  const nc::FixedWeightOsl single = nc::osl_multilure_linf(nc::MultiLure(a, b, cout, {0.3, 0.3}), eta);
  EXPECT_NEAR(single.value, nc::muinf(a + 0.3 * b * cout, eta), 1e-12);
  EXPECT_FALSE(single.tight);
  EXPECT_THROW(nc::osl_multilure_linf(nc::MultiLure(eye(17), Matrix::Zero(17, 1), Matrix::Zero(1, 17), {0, 1}),
                                      WeightVector::ones(17)),
               nc::ValidationError);
}

TEST(MultiLureOsl, MatchesVertexEnumeration) {
  testsupport::Rng rng(173);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = rng.integer(2, 6);
    const Eigen::Index m = rng.integer(1, 6);
    const double d1 = rng.uniform(-1, 0.5);
    const nc::MultiLure model(rng.matrix(n), rng.rect(n, m), rng.rect(m, n), {d1, d1 + rng.uniform(0, 2)});
    const WeightVector eta = rng.weight(n);
    EXPECT_NEAR(nc::osl_multilure_linf(model, eta).value,
                testsupport::multilure_vertex_max(model.a(), model.b(), model.cout(), model.slopes().d1,
                                                  model.slopes().d2, eta),
                1e-9);
    // l1 goes through the transpose.
    EXPECT_NEAR(nc::fixed_weight_osl(model, NormFamily::L1, eta).value,
                testsupport::multilure_vertex_max(model.a().transpose(), model.cout().transpose(),
                                                  model.b().transpose(), model.slopes().d1, model.slopes().d2, eta),
                1e-9);
  }
}

TEST(Dispatch, NaturalFamilies) {
  const nc::NetworkModel h = hopfield(eye(2), m2(0, 0.5, 0.5, 0), {0, 1});
  EXPECT_EQ(nc::certify(h).family, NormFamily::L1);
  const nc::NetworkModel fr = firing(eye(2), m2(0, 0.5, 0.5, 0), {0, 1});
  EXPECT_EQ(nc::certify(fr).family, NormFamily::Linf);
  const nc::NetworkModel unbounded = hopfield(eye(2), m2(-2, 1, 1, -2), {1, nc::kInf});
  EXPECT_NEAR(nc::certify(unbounded).rate, 2.0, 1e-9);
  EXPECT_THROW(nc::certify(unbounded, NormFamily::Linf), nc::ValidationError);
  const nc::NetworkModel p = nc::Persidskii(m2(-2, 1, 1, -2), {0.5, 3});
  // Column scaling is only favourable in l1; the linf bound sees d2 off the diagonal.
  EXPECT_FALSE(nc::certify(p, NormFamily::Linf).contracting);
  EXPECT_NEAR(nc::certify(p, NormFamily::L1).rate, 0.5, 1e-9);
  EXPECT_THROW(nc::fixed_weight_osl(unbounded, NormFamily::L1, WeightVector::ones(2)), nc::ValidationError);
}

TEST(Certificates, PrunedModelsStayCertified) {
  testsupport::Rng rng(179);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = rng.integer(2, 5);
    const Matrix a = rng.m_hurwitz(n);
    const SlopeInterval s(0.4, 2.0);
    const nc::ContractionCertificate full = nc::certify_persidskii(nc::Persidskii(a, s));
    const Matrix c = random_decay(rng, n);
    const nc::ContractionCertificate full_mh = nc::certify_hopfield_mh(c, a, 1.5);
    ASSERT_TRUE(full.contracting);
    for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
      const nc::IndexSet set = nc::IndexSet::from_mask(mask, n);
      const nc::ContractionCertificate sub = nc::certify_persidskii(nc::Persidskii(nc::principal_submatrix(a, set), s));
      EXPECT_TRUE(sub.contracting);
      EXPECT_GE(sub.rate, full.rate - 1e-9);
      const nc::ContractionCertificate sub_mh =
          nc::certify_hopfield_mh(nc::principal_submatrix(c, set), nc::principal_submatrix(a, set), 1.5);
      EXPECT_GE(sub_mh.rate, full_mh.rate - 1e-9);
    }
  }
}

TEST(Certificates, InvariantsHold) {
  testsupport::Rng rng(181);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = rng.integer(1, 5);
    const nc::ContractionCertificate c =
        nc::optimal_certificate(hopfield(random_decay(rng, n), rng.matrix(n), {0, 1}), NormFamily::L1);
    EXPECT_EQ(c.contracting, c.osl <= -nc::kContractionMargin);
    EXPECT_DOUBLE_EQ(c.margin, -c.osl);
    if (c.contracting) EXPECT_DOUBLE_EQ(c.rate, -c.osl);
    else EXPECT_EQ(c.rate, 0.0);
  }
}

}  // namespace
