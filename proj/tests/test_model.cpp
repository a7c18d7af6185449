#include <gtest/gtest.h>

#include <random>

#include "cuspid/builtin_models.hpp"
#include "cuspid/model.hpp"

using namespace cuspid;

namespace {

Eigen::VectorXd random_point_in_region(const EquilibriumModel& md, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.15, 0.85);
  Eigen::VectorXd z(md.m());
  for (int a = 0; a < md.m(); ++a) {
    double lo = md.region_lo[size_t(a)], hi = md.region_hi[size_t(a)];
    z[a] = lo + u(rng) * (hi - lo);
  }
  return z;
}

// Relative error of the analytic derivative tensors against central finite
// differences of the next-lower order, in random unit directions. A sample
// only counts when the FD oracle self-certifies (values at step h and h/2
// agree), which rejects points too close to a pole of the model for finite
// differences to have converged; most samples must survive that gate.
void expect_fd_consistency(const EquilibriumModel& md, int points, std::mt19937_64& rng) {
  const int m = md.m();
  const double h = 1e-5;
  std::normal_distribution<double> g(0.0, 1.0);
  int asserted = 0;
  for (int k = 0; k < points; ++k) {
    Eigen::VectorXd z = random_point_in_region(md, rng);
    Eigen::VectorXd u(m), v(m), w(m);
    for (int a = 0; a < m; ++a) {
      u[a] = g(rng);
      v[a] = g(rng);
      w[a] = g(rng);
    }
    u.normalize();
    v.normalize();
    w.normalize();
    ModelEval<double> ev;
    try {
      md.eval(z.data(), 3, ev);
    } catch (const DomainError&) {
      continue;
    }

    auto converged = [](const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine) {
      return (coarse - fine).norm() / (1 + fine.norm()) < 3e-7;
    };

    // order 1: J u  vs  FD of f
    auto fd1 = [&](double step) -> Eigen::VectorXd {
      return (md.f(z + step * u) - md.f(z - step * u)) / (2 * step);
    };
    Eigen::VectorXd dan = Eigen::VectorXd::Zero(md.n);
    for (int i = 0; i < md.n; ++i)
      for (int a = 0; a < m; ++a) dan[i] += ev.j(i, a) * u[a];
    Eigen::VectorXd d_h = fd1(h), d_h2 = fd1(h / 2);
    if (converged(d_h, d_h2)) {
      EXPECT_LT((dan - d_h2).norm() / (1 + dan.norm()), 1e-6);
      ++asserted;
    }

    // order 2: H(u, v)  vs  FD of J u in direction v
    auto fd2 = [&](double step) -> Eigen::VectorXd {
      return (md.jacobian(z + step * v) - md.jacobian(z - step * v)) / (2 * step) * u;
    };
    Eigen::VectorXd h_an = Eigen::VectorXd::Zero(md.n);
    for (int i = 0; i < md.n; ++i)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) h_an[i] += ev.h(i, a, b) * u[a] * v[b];
    Eigen::VectorXd h_h = fd2(h), h_h2 = fd2(h / 2);
    if (converged(h_h, h_h2)) EXPECT_LT((h_an - h_h2).norm() / (1 + h_an.norm()), 1e-6);

    // order 3: T(u, v, w)  vs  FD of H(u, v) in direction w
    auto fd3 = [&](double step) -> Eigen::VectorXd {
      ModelEval<double> evp, evm;
      Eigen::VectorXd zp = z + step * w, zm = z - step * w;
      md.eval(zp.data(), 2, evp);
      md.eval(zm.data(), 2, evm);
      Eigen::VectorXd out = Eigen::VectorXd::Zero(md.n);
      for (int i = 0; i < md.n; ++i)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) out[i] += (evp.h(i, a, b) - evm.h(i, a, b)) / (2 * step) * u[a] * v[b];
      return out;
    };
    Eigen::VectorXd t_an = Eigen::VectorXd::Zero(md.n);
    for (int i = 0; i < md.n; ++i)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c) t_an[i] += ev.t(i, a, b, c) * u[a] * v[b] * w[c];
    Eigen::VectorXd t_h = fd3(h), t_h2 = fd3(h / 2);
    if (converged(t_h, t_h2)) EXPECT_LT((t_an - t_h2).norm() / (1 + t_an.norm()), 1e-6);
  }
  EXPECT_GE(asserted, points * 7 / 10);
}

}  // namespace

TEST(Poly, SymbolicDifferentiation) {
  // p = 3 x0^2 x1 + x1
  Poly p{mono(3.0, {{0, 2}, {1, 1}}), mono(1.0, {{1, 1}})};
  Poly dx0 = p.diff(0);  // 6 x0 x1
  Poly dx1 = p.diff(1);  // 3 x0^2 + 1
  double z[2] = {2.0, 5.0};
  double pw[2 * 3] = {1, 2, 4, 1, 5, 25};
  EXPECT_EQ(p.eval(pw, 3, 2), 3 * 4 * 5 + 5.0);
  EXPECT_EQ(dx0.eval(pw, 3, 2), 6 * 2 * 5.0);
  EXPECT_EQ(dx1.eval(pw, 3, 2), 3 * 4 + 1.0);
  (void)z;
}

TEST(Models, BuiltinListMatchesContract) {
  auto mods = builtin_models();
  ASSERT_EQ(mods.size(), 5u);
  EXPECT_EQ(mods[0].name, "bazykin");
  EXPECT_EQ(mods[0].n, 2);
  EXPECT_EQ(mods[1].name, "predator-prey");
  EXPECT_EQ(mods[1].n, 2);
  EXPECT_EQ(mods[2].name, "bykov");
  EXPECT_EQ(mods[2].n, 3);
  EXPECT_EQ(mods[3].name, "metastatic");
  EXPECT_EQ(mods[3].n, 3);
  EXPECT_EQ(mods[4].name, "scalar-oracle");
  EXPECT_EQ(mods[4].n, 1);

  // exploration windows
  EXPECT_EQ(mods[0].region_hi, (std::vector<double>{35, 35, 4, 4}));
  EXPECT_EQ(mods[3].region_lo, (std::vector<double>{0, 0, 0, 0.05, 0.05}));
  EXPECT_EQ(mods[3].region_hi, (std::vector<double>{3, 3, 3, 1.5, 1.5}));

  EXPECT_TRUE(find_model("sphere-test").has_value());
  EXPECT_FALSE(find_model("nonexistent").has_value());
}

TEST(Models, SeedsAreEquilibria) {
  for (const auto& md : builtin_models()) {
    Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(md.seed.data(), md.m());
    double res = md.f(z).lpNorm<Eigen::Infinity>();
    EXPECT_LT(res, 1e-9) << md.name;
  }
  // the two explicitly computed equilibria from the applications
  auto baz = models::bazykin();
  Eigen::VectorXd zb(4);
  zb << 10, 10, 91.0 / 90.0, -0.01;
  EXPECT_LT(baz.f(zb).lpNorm<Eigen::Infinity>(), 1e-13);

  auto pp = models::predator_prey();
  Eigen::VectorXd zp(4);
  zp << 1200.0 / 1001.0, 989.0 / 1001.0, 0, 0;
  EXPECT_LT(pp.f(zp).lpNorm<Eigen::Infinity>(), 1e-14);
}

TEST(Models, ScalarOracleDerivatives) {
  auto md = models::scalar_oracle();
  Eigen::VectorXd z(3);
  z << 1.0, 0.0, 0.0;
  EXPECT_DOUBLE_EQ(md.state_jacobian(z)(0, 0), -3.0);
  Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  EXPECT_DOUBLE_EQ(md.d2xx(z, one, one)[0], -6.0);
  EXPECT_DOUBLE_EQ(md.d3xxx(z, one, one, one)[0], -6.0);
  // cubic: third derivative is constant in x
  z << -0.3, 0.2, 0.1;
  EXPECT_DOUBLE_EQ(md.d3xxx(z, one, one, one)[0], -6.0);
}

TEST(Models, BilinearActionSymmetry) {
  std::mt19937_64 rng(123);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const auto& md : builtin_models()) {
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd z = random_point_in_region(md, rng);
      Eigen::VectorXd u(md.n), v(md.n);
      for (int i = 0; i < md.n; ++i) {
        u[i] = g(rng);
        v[i] = g(rng);
      }
      try {
        Eigen::VectorXd uv = md.d2xx(z, u, v);
        Eigen::VectorXd vu = md.d2xx(z, v, u);
        EXPECT_LT((uv - vu).lpNorm<Eigen::Infinity>(), 1e-12 * (1 + uv.lpNorm<Eigen::Infinity>()));
      } catch (const DomainError&) {
        // pole inside the sampling box; irrelevant here
      }
    }
  }
}

TEST(Models, FiniteDifferenceOracle) {
  std::mt19937_64 rng(2024);
  for (const auto& md : builtin_models()) {
    SCOPED_TRACE(md.name);
    expect_fd_consistency(md, 25, rng);
  }
}

TEST(Models, IntervalEvaluationContainsFloatEvaluation) {
  std::mt19937_64 rng(77);
  for (const auto& md : builtin_models()) {
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd z = random_point_in_region(md, rng);
      ModelEval<double> fe;
      ModelEval<Interval> ie;
      std::vector<Interval> zi(size_t(md.m()));
      for (int a = 0; a < md.m(); ++a) zi[size_t(a)] = Interval(z[a]);
      try {
        md.eval(z.data(), 3, fe);
        md.eval(zi.data(), 3, ie);
      } catch (const DomainError&) {
        continue;
      }
      for (int i = 0; i < md.n; ++i) EXPECT_TRUE(ie.f[size_t(i)].contains(fe.f[size_t(i)]));
      for (size_t t = 0; t < fe.J.size(); ++t) EXPECT_TRUE(ie.J[t].contains(fe.J[t]));
      for (size_t t = 0; t < fe.H.size(); ++t) EXPECT_TRUE(ie.H[t].contains(fe.H[t]));
      for (size_t t = 0; t < fe.T.size(); ++t) EXPECT_TRUE(ie.T[t].contains(fe.T[t]));
    }
  }
}

TEST(Models, DomainErrorOnSingularDenominator) {
  auto md = models::bazykin();
  Eigen::VectorXd z(4);
  z << 1.0, 1.0, -1.0, 0.0;  // 1 + l1 x1 = 0
  EXPECT_THROW(md.f(z), DomainError);

  std::vector<Interval> zi = {Interval(0.9, 1.1), Interval(1.0), Interval(-1.0), Interval(0.0)};
  ModelEval<Interval> ie;
  EXPECT_THROW(md.eval(zi.data(), 0, ie), DomainError);
}
