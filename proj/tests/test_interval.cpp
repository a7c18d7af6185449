#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "cuspid/interval.hpp"
#include "cuspid/interval_linalg.hpp"

using namespace cuspid;

TEST(Interval, ExactEndpointArithmetic) {
  Interval a(1, 2), b(3, 4);
  Interval s = a + b;
  EXPECT_EQ(s.lo, 4.0);
  EXPECT_EQ(s.hi, 6.0);

  Interval p = Interval(-1, 2) * Interval(3, 4);
  EXPECT_EQ(p.lo, -4.0);
  EXPECT_EQ(p.hi, 8.0);

  Interval d = Interval(1, 2) / Interval(2, 4);
  EXPECT_EQ(d.lo, 0.25);
  EXPECT_EQ(d.hi, 1.0);
}

TEST(Interval, DivisionByIntervalContainingZeroThrows) {
  EXPECT_THROW(Interval(1, 2) / Interval(-1, 1), DivisionByZeroInterval);
  EXPECT_THROW(Interval(1, 2) / Interval(0, 1), DivisionByZeroInterval);
  EXPECT_NO_THROW(Interval(1, 2) / Interval(-2, -1));
}

TEST(Interval, OverflowIsAnError) {
  double big = 1e308;
  EXPECT_THROW(Interval(big) * Interval(big), OverflowToInfinity);
}

TEST(Interval, RandomizedSingleOpContainment) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int k = 0; k < 100000; ++k) {
    double a = dist(rng), b = dist(rng);
    Interval ia(a), ib(b);
    EXPECT_TRUE((ia + ib).contains(a + b));
    EXPECT_TRUE((ia - ib).contains(a - b));
    EXPECT_TRUE((ia * ib).contains(a * b));
    if (std::fabs(b) > 1e-6) EXPECT_TRUE((ia / ib).contains(a / b));
  }
}

// Composition containment against a long-double oracle. The oracle itself
// carries ~2^-63 relative error, far below any real containment bug.
TEST(Interval, RandomizedCompositionContainment) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-8.0, 8.0);
  for (int k = 0; k < 20000; ++k) {
    double a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
    Interval r = (Interval(a) + Interval(b)) * Interval(c) - Interval(d) * Interval(a) +
                 sqr(Interval(b)) / (Interval(4.0) + sqr(Interval(c)));
    long double truth = (static_cast<long double>(a) + b) * c - static_cast<long double>(d) * a +
                        static_cast<long double>(b) * b / (4.0L + static_cast<long double>(c) * c);
    long double slack = 1e-16L * std::max(1.0L, std::fabs(truth));
    EXPECT_LE(static_cast<long double>(r.lo), truth + slack);
    EXPECT_GE(static_cast<long double>(r.hi), truth - slack);
  }
}

TEST(Interval, SquareAndIntegerPowers) {
  Interval s = sqr(Interval(-1, 2));
  EXPECT_EQ(s.lo, 0.0);
  EXPECT_EQ(s.hi, 4.0);
  Interval p = pow_int(Interval(-1, 2), 3);
  EXPECT_TRUE(p.contains(-1.0) && p.contains(8.0));
  Interval q = pow_int(Interval(-2, 1), 4);
  EXPECT_EQ(q.lo, 0.0);
  EXPECT_EQ(q.hi, 16.0);
  EXPECT_TRUE(pow_int(Interval(3.0), 0).contains(1.0));
}

TEST(Interval, MidRadAndPm) {
  Interval a = Interval::pm(1.0, 0.25);
  EXPECT_LE(a.lo, 0.75);
  EXPECT_GE(a.hi, 1.25);
  EXPECT_NEAR(a.mid(), 1.0, 1e-15);
  EXPECT_GE(a.rad(), 0.25);
  EXPECT_TRUE(a.contains(Interval(0.9, 1.1)));
}

TEST(ComplexInterval, ProductAndModulusContainment) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int k = 0; k < 20000; ++k) {
    std::complex<double> za(dist(rng), dist(rng)), zb(dist(rng), dist(rng));
    ComplexInterval ia(Interval(za.real()), Interval(za.imag()));
    ComplexInterval ib(Interval(zb.real()), Interval(zb.imag()));
    ComplexInterval prod = ia * ib;
    std::complex<double> zp = za * zb;
    EXPECT_LE(prod.re.lo, zp.real());
    EXPECT_GE(prod.re.hi, zp.real());
    EXPECT_LE(prod.im.lo, zp.imag());
    EXPECT_GE(prod.im.hi, zp.imag());
    EXPECT_GE(mod_up(ia), std::abs(za) * (1 - 1e-15));
    EXPECT_LE(mod_down(ia), std::abs(za) * (1 + 1e-15));
  }
}

TEST(IntervalMatrix, SupNormExamples) {
  EXPECT_EQ(mat_norm_sup_upper(IntervalMatrix::identity(2)), 1.0);

  Eigen::MatrixXd m(2, 2);
  m << 1, -2, 3, 4;
  EXPECT_EQ(mat_norm_sup_upper(IntervalMatrix::enclose(m)), 7.0);

  IntervalMatrix r(1, 2);
  r(0, 0) = Interval(0, 1);
  r(0, 1) = Interval(-2, -1);
  EXPECT_EQ(mat_norm_sup_upper(r), 3.0);
}

TEST(IntervalMatrix, SupNormMonotoneUnderWidening) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    IntervalMatrix a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double lo = dist(rng), hi = lo + std::fabs(dist(rng));
        a(i, j) = Interval(lo, hi);
        b(i, j) = Interval(lo - std::fabs(dist(rng)), hi + std::fabs(dist(rng)));
      }
    EXPECT_GE(mat_norm_sup_upper(b), mat_norm_sup_upper(a));
  }
}

TEST(EncloseInverse, IdentityAndDiagonal) {
  IntervalMatrix inv = enclose_inverse(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_TRUE(inv(i, j).contains(i == j ? 1.0 : 0.0));
      EXPECT_LE(inv(i, j).width(), 1e-15);
    }

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 4;
  IntervalMatrix dinv = enclose_inverse(d);
  EXPECT_TRUE(dinv(0, 0).contains(0.5));
  EXPECT_TRUE(dinv(1, 1).contains(0.25));
}

TEST(EncloseInverse, ProductContainsIdentity) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    Eigen::MatrixXd p(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) p(i, j) = dist(rng) + (i == j ? 4.0 : 0.0);
    IntervalMatrix prod = enclose_inverse(p) * IntervalMatrix::enclose(p);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) EXPECT_TRUE(prod(i, j).contains(i == j ? 1.0 : 0.0));
  }
}

TEST(EncloseInverse, SingularMatrixRejected) {
  Eigen::MatrixXd s(2, 2);
  s << 1, 2, 2, 4;
  EXPECT_THROW(enclose_inverse(s), NotVerifiablyInvertible);
}

TEST(Gershgorin, PointDiagonalExamples) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 5;
  auto disks = gershgorin_disks(ComplexIntervalMatrix::enclose(d.cast<std::complex<double>>()));
  ASSERT_EQ(disks.size(), 2u);
  EXPECT_EQ(disks[0].radius.hi, 0.0);
  EXPECT_EQ(disks[1].radius.hi, 0.0);
  EXPECT_TRUE(disks[0].center.re.contains(1.0));
  EXPECT_TRUE(disks[1].center.re.contains(5.0));

  Eigen::MatrixXd m(2, 2);
  m << 0, 0.1, 0.1, 5;
  auto dm = gershgorin_disks(ComplexIntervalMatrix::enclose(m.cast<std::complex<double>>()));
  EXPECT_NEAR(dm[0].radius.hi, 0.1, 1e-15);
  EXPECT_NEAR(dm[1].radius.hi, 0.1, 1e-15);
  EXPECT_TRUE(disks_disjoint(dm[0], dm[1]));
}

TEST(Gershgorin, UnionContainsSpectrumOfRandomMatrices) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = dist(rng) + (i == j ? 6.0 * (i + 1) : 0.0);
    auto disks = gershgorin_disks(ComplexIntervalMatrix::enclose(a.cast<std::complex<double>>()));
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    for (int e = 0; e < 4; ++e) {
      std::complex<double> ev = es.eigenvalues()[e];
      bool inside = false;
      for (const Disk& disk : disks) {
        double dist_to_center =
            std::abs(ev - std::complex<double>(disk.center.re.mid(), disk.center.im.mid()));
        if (dist_to_center <= disk.radius.hi + 1e-8) inside = true;
      }
      EXPECT_TRUE(inside);
    }
  }
}

TEST(Gershgorin, DiskPredicates) {
  Disk a{ComplexInterval(0.0, 0.0), Interval(0.0, 1.0)};
  Disk b{ComplexInterval(3.0, 0.0), Interval(0.0, 1.0)};
  Disk c{ComplexInterval(1.5, 0.0), Interval(0.0, 1.0)};
  EXPECT_TRUE(disks_disjoint(a, b));
  EXPECT_FALSE(disks_disjoint(a, c));
  Disk z1{ComplexInterval(0.0, 0.0), Interval(0.0)};
  EXPECT_FALSE(disks_disjoint(z1, z1));

  EXPECT_TRUE(a.may_contain_zero());
  EXPECT_FALSE(b.may_contain_zero());
  EXPECT_TRUE(b.excludes_imaginary_axis());
  EXPECT_FALSE(a.excludes_imaginary_axis());
  Disk neg{ComplexInterval(-4.0, 1.0), Interval(0.0, 2.0)};
  EXPECT_TRUE(neg.excludes_imaginary_axis());
}
