#include <gtest/gtest.h>

#include <cmath>

#include "netcontract/classify.hpp"
#include "netcontract/errors.hpp"
#include "netcontract/lognorm.hpp"
#include "test_support.hpp"

namespace nc = netcontract;
using nc::Matrix;
using nc::WeightVector;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix edge_matrix() {
  Matrix a(3, 3);
  a << 0, -1, 1, 1, 0, 15, -1, -15, 0;
  return a;
}

TEST(Hurwitz, Fixtures) {
  EXPECT_TRUE(nc::is_hurwitz(m2(1, 1, -4, -3)));
  EXPECT_TRUE(nc::is_hurwitz(-Matrix::Identity(3, 3)));
  Matrix pruned = edge_matrix();
  pruned(2, 1) = 0.0;
  EXPECT_FALSE(nc::is_hurwitz(-Matrix::Identity(3, 3) + pruned));
}

TEST(TotallyHurwitz, Fixtures) {
  EXPECT_FALSE(nc::is_totally_hurwitz(m2(1, 1, -4, -3)));
  EXPECT_TRUE(nc::is_totally_hurwitz(-Matrix::Identity(4, 4)));
  EXPECT_FALSE(nc::is_totally_hurwitz(m2(-1, 5, 5, 0)));
  EXPECT_THROW(nc::is_totally_hurwitz(-Matrix::Identity(21, 21)), nc::ValidationError);
}

TEST(MHurwitz, Fixtures) {
  EXPECT_FALSE(nc::is_m_hurwitz(m2(-1, -1, 2, -1)));
  EXPECT_TRUE(nc::is_m_hurwitz(-Matrix::Identity(2, 2)));
  EXPECT_TRUE(nc::is_m_hurwitz(m2(-2, 1, 1, -2)));
}

TEST(Quasidominant, Fixtures) {
  EXPECT_TRUE(nc::is_quasidominant(Matrix::Identity(2, 2)));
  EXPECT_FALSE(nc::is_quasidominant(m2(0, 0.1, 0.1, 5)));
  EXPECT_TRUE(nc::is_quasidominant(m2(2, -1, -1, 2)));
}

TEST(LdsCertificate, Fixtures) {
  EXPECT_TRUE(nc::lds_certificate(m2(-1, -1, 2, -1), WeightVector::ones(2)));
  EXPECT_FALSE(nc::lds_certificate(Matrix::Identity(2, 2), WeightVector{3, 0.5}));
  const Matrix shifted = -Matrix::Identity(3, 3) + edge_matrix();
  EXPECT_TRUE(nc::lds_certificate(shifted, WeightVector::ones(3)));
  EXPECT_NEAR(nc::mu2(shifted, WeightVector::ones(3)), -1.0, 1e-12);
}

TEST(Classify, CounterexampleFixtures) {
  const nc::ClassReport lds = nc::classify(m2(-1, -1, 2, -1), WeightVector::ones(2));
  EXPECT_TRUE(lds.lds_certified_at.has_value());
  EXPECT_FALSE(lds.m_hurwitz);
  EXPECT_TRUE(lds.hurwitz);
  EXPECT_NEAR(lds.majorant_abscissa, std::sqrt(2.0) - 1.0, 1e-9);

  const nc::ClassReport h = nc::classify(m2(1, 1, -4, -3));
  EXPECT_TRUE(h.hurwitz);
  EXPECT_FALSE(h.totally_hurwitz);
  EXPECT_NEAR(h.abscissa, -1.0, 1e-9);
  EXPECT_FALSE(h.lds_certified_at.has_value());
}

TEST(Classify, MarginalFlags) {
  const nc::ClassReport r = nc::classify(m2(-1, 1, 1, -1));
  EXPECT_TRUE(r.hurwitz_marginal);
  EXPECT_TRUE(r.m_hurwitz_marginal);
  EXPECT_FALSE(r.hurwitz);
}

TEST(Classify, InclusionChainOnMHurwitzSamples) {
  testsupport::Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = rng.matrix(rng.integer(1, 7), -2, 2);
    // Push the majorant to be Hurwitz with a diagonal shift.
    a.diagonal().array() -= testsupport::dense_abscissa(testsupport::majorant(a)) + rng.uniform(0.05, 1.0);
    ASSERT_TRUE(nc::is_m_hurwitz(a));
    const WeightVector witness = nc::lds_witness_weight(a);
    EXPECT_TRUE(nc::lds_certificate(a, witness)) << a;
    EXPECT_TRUE(nc::is_totally_hurwitz(a));
    EXPECT_TRUE(nc::is_hurwitz(a));
    const nc::ClassReport r = nc::classify(a, witness);
    EXPECT_TRUE(r.m_hurwitz && r.totally_hurwitz && r.hurwitz && r.lds_certified_at.has_value());
  }
}

TEST(Classify, ReportImplications) {
  testsupport::Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const nc::ClassReport r = nc::classify(rng.matrix(rng.integer(1, 5), -2, 1));
    if (r.m_hurwitz) {
      EXPECT_TRUE(r.hurwitz);
    }
    if (r.totally_hurwitz) {
      EXPECT_TRUE(r.hurwitz);
    }
  }
}

TEST(Pruning, MHurwitzSubsetsAllPass) {
  testsupport::Rng rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = rng.m_hurwitz(rng.integer(1, 6));
    const auto report = nc::pruning_robustness(a);
    EXPECT_EQ(report.size(), (1u << a.rows()) - 1);
    for (const auto& e : report) EXPECT_TRUE(e.m_hurwitz);
    EXPECT_EQ(report.back().m_hurwitz, nc::is_m_hurwitz(a));
  }
}

TEST(Pruning, NegativeIdentity) {
  for (const auto& e : nc::pruning_robustness(-Matrix::Identity(3, 3))) {
    EXPECT_TRUE(e.m_hurwitz);
    EXPECT_NEAR(e.majorant_abscissa, -1.0, 1e-12);
  }
  EXPECT_THROW(nc::pruning_robustness(Matrix::Zero(13, 13)), nc::ValidationError);
}

TEST(Pruning, FullSetMirrorsClassification) {
  const Matrix a = m2(-1, -1, 2, -1);
  EXPECT_EQ(nc::pruning_robustness(a).back().m_hurwitz, nc::classify(a).m_hurwitz);
}

TEST(EdgeRemoval, ConnectiveProbe) {
  const nc::EdgeRemovalResult r = nc::edge_removal_check(edge_matrix(), {{2, 1}}, -1.0);
  EXPECT_TRUE(r.before_hurwitz);
  EXPECT_FALSE(r.after_hurwitz);
  EXPECT_NEAR(r.after_abscissa, 1.1971, 1e-3);
}

TEST(EdgeRemoval, NothingZeroed) {
  const nc::EdgeRemovalResult r = nc::edge_removal_check(edge_matrix(), {}, -0.5);
  EXPECT_EQ(r.before_hurwitz, r.after_hurwitz);
}

TEST(EdgeRemoval, RejectsDiagonal) {
  EXPECT_THROW(nc::edge_removal_check(edge_matrix(), {{1, 1}}, 0.0), nc::ValidationError);
  EXPECT_THROW(nc::edge_removal_check(edge_matrix(), {{3, 1}}, 0.0), nc::ValidationError);
}

TEST(EdgeRemoval, MHurwitzStaysHurwitz) {
  testsupport::Rng rng(109);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = rng.m_hurwitz(4);
    const Eigen::Index i = rng.integer(0, 3);
    const Eigen::Index j = (i + rng.integer(1, 3)) % 4;
    const nc::EdgeRemovalResult r = nc::edge_removal_check(a, {{i, j}}, 0.0);
    EXPECT_TRUE(r.before_hurwitz && r.after_hurwitz);
  }
}

TEST(EdgeRemoval, MetzlerAbscissaNeverIncreases) {
  testsupport::Rng rng(113);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = rng.irreducible_metzler(rng.integer(2, 6));
    const Eigen::Index n = m.rows();
    const Eigen::Index i = rng.integer(0, static_cast<int>(n) - 1);
    const Eigen::Index j = (i + rng.integer(1, static_cast<int>(n) - 1)) % n;
    Matrix pruned = m;
    pruned(i, j) = 0.0;
    EXPECT_LE(testsupport::dense_abscissa(pruned), testsupport::dense_abscissa(m) + 1e-10);
  }
}

}  // namespace
