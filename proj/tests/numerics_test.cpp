#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "mml/constants.hpp"
#include "mml/errors.hpp"
#include "mml/matrix.hpp"
#include "mml/numerics.hpp"
#include "mml/rng.hpp"
#include "mml/weibull.hpp"

using namespace mml;

namespace {

Matrix random_spd(std::mt19937_64& gen, std::size_t d) {
  std::normal_distribution<double> normal;
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = normal(gen);
  Matrix m = g.transpose() * g + Matrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) m(j, i) = m(i, j);
  return m;
}

}  // namespace

TEST(SolveSpd, Identity) {
  const Vector x = solve_spd(Matrix::identity(2), Vector{3.0, 4.0});
  EXPECT_DOUBLE_EQ(x[0], 3.0);
  EXPECT_DOUBLE_EQ(x[1], 4.0);
}

TEST(SolveSpd, Diagonal) {
  const Vector x = solve_spd(Matrix{{2.0, 0.0}, {0.0, 4.0}}, Vector{2.0, 4.0});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 1.0);
}

TEST(SolveSpd, WeibullInformationResidual) {
  const Matrix m = weibull_fisher(ParamPoint::positive({1.0, 1.0}));
  const Vector b{1.0, 0.0};
  const Vector x = solve_spd(m, b);
  EXPECT_LE(norm_inf(m * x - b), 1e-10 * (1.0 + norm_inf(b)));
  // First column of I⁻¹ at (1,1): (6, -6(γ-1)) / π².
  const double pi2 = constants::pi * constants::pi;
  EXPECT_NEAR(x[0], 6.0 / pi2, 1e-12);
  EXPECT_NEAR(x[1], -6.0 * (constants::euler_gamma - 1.0) / pi2, 1e-12);
}

TEST(SolveSpd, RejectsIndefiniteAndSingular) {
  EXPECT_THROW(solve_spd(Matrix{{1.0, 2.0}, {2.0, 1.0}}, Vector{1.0, 1.0}), NotPositiveDefinite);
  EXPECT_THROW(solve_spd(Matrix{{1.0, 1.0}, {1.0, 1.0}}, Vector{1.0, 1.0}), NotPositiveDefinite);
  EXPECT_THROW(solve_spd(Matrix{{1.0, 0.5}, {0.4, 1.0}}, Vector{1.0, 1.0}), NotPositiveDefinite);
}

TEST(SolveSpd, ResidualBoundOnRandomSpdMatrices) {
  std::mt19937_64 gen(20240611);
  std::normal_distribution<double> normal;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix m = random_spd(gen, d);
      Vector b(d);
      for (double& v : b) v = 10.0 * normal(gen);
      const Vector x = solve_spd(m, b);
      EXPECT_LE(norm_inf(m * x - b), 1e-10 * (1.0 + norm_inf(b))) << "d=" << d << " trial=" << trial;
    }
}

TEST(Matrix, InverseAndLogDet) {
  std::mt19937_64 gen(7);
  for (std::size_t d = 1; d <= 3; ++d) {
    const Matrix m = random_spd(gen, d);
    const Matrix prod = m * inverse_spd(m);
    EXPECT_LE(max_abs_entry(prod - Matrix::identity(d)), 1e-12);
    EXPECT_NEAR(log_det_spd(m), std::log(determinant(m)), 1e-12);
  }
}

TEST(Matrix, VecIsColumnStacking) {
  const Matrix m{{1.0, 2.0}, {3.0, 4.0}};
  EXPECT_EQ(vec(m), (Vector{1.0, 3.0, 2.0, 4.0}));
}

TEST(CentralGrad, Square) {
  const Vector g = central_grad([](std::span<const double> x) { return x[0] * x[0]; }, Vector{3.0});
  EXPECT_NEAR(g[0], 6.0, 1e-6);
}

TEST(CentralGrad, ConstantGivesZero) {
  const Vector g = central_grad([](std::span<const double>) { return 4.2; }, Vector{1.0, -2.0, 5.0});
  for (double v : g) EXPECT_EQ(v, 0.0);
}

TEST(CentralGrad, StepRule) {
  const double ce = std::cbrt(std::numeric_limits<double>::epsilon());
  EXPECT_DOUBLE_EQ(fd_step(0.3), ce);
  EXPECT_DOUBLE_EQ(fd_step(-20.0), 20.0 * ce);
}

TEST(CentralGrad, WeibullLogDensityMatchesAnalyticGradient) {
  const WeibullModel m;
  const double x = 1.0;
  const Vector g = central_grad([&](std::span<const double> t) { return m.logpdf(x, t); }, Vector{1.0, 1.0});
  const Vector analytic = m.grad(x, Vector{1.0, 1.0});
  EXPECT_NEAR(g[0], analytic[0], 1e-6);
  EXPECT_NEAR(g[1], analytic[1], 1e-6);
}

TEST(CentralGrad, NonFiniteProbeThrows) {
  EXPECT_THROW(central_grad([](std::span<const double> x) { return std::log(x[0]); }, Vector{0.0}),
               NonFiniteEvaluation);
}

TEST(CentralGrad, ErrorDecaysQuadratically) {
  // f = x³ + 2x⁴: central-difference error is h² f'''/6 + O(h⁴); at x = 1.3
  // the truncation term dominates round-off for step multipliers 64..8.
  const auto f = [](std::span<const double> x) { return x[0] * x[0] * x[0] + 2.0 * std::pow(x[0], 4); };
  const double x0 = 1.3;
  const double exact = 3.0 * x0 * x0 + 8.0 * x0 * x0 * x0;
  double prev = std::abs(central_grad_scaled(f, Vector{x0}, 64.0)[0] - exact);
  for (double s : {32.0, 16.0, 8.0}) {
    const double err = std::abs(central_grad_scaled(f, Vector{x0}, s)[0] - exact);
    EXPECT_NEAR(prev / err, 4.0, 0.2) << "scale " << s;
    prev = err;
  }
}

TEST(Quadrature, LaguerreRuleIntegratesPolynomialsExactly) {
  const QuadratureRule& rule = gauss_laguerre(16);
  ASSERT_EQ(rule.nodes.size(), 16u);
  // ∫ u^m e^{-u} du = m!, exact for m ≤ 31.
  double factorial = 1.0;
  for (int m = 0; m <= 12; ++m) {
    if (m > 0) factorial *= m;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], m);
    EXPECT_NEAR(s / factorial, 1.0, 1e-11) << "m=" << m;
  }
}

TEST(Quadrature, LogSingularityAgainstIndependentOracle) {
  // E[log U] = -γ and E[U log²U] for U ~ Exp(1), checked against Boost's
  // exp_sinh rule which shares nothing with the Laguerre path.
  boost::math::quadrature::exp_sinh<double> oracle;
  const auto h1 = [](double u) { return std::log(u); };
  const auto h2 = [](double u) { return u * std::log(u) * std::log(u); };
  const double ref1 = oracle.integrate([&](double u) { return h1(u) * std::exp(-u); });
  const double ref2 = oracle.integrate([&](double u) { return h2(u) * std::exp(-u); });
  EXPECT_NEAR(ref1, -constants::euler_gamma, 1e-12);
  EXPECT_NEAR(integrate_unit_exponential(h1).value, ref1, 1e-10);
  EXPECT_NEAR(integrate_unit_exponential(h2).value, ref2, 1e-10);
}

TEST(Quadrature, Normalisation) {
  const WeibullModel m;
  for (double k : {0.5, 1.0, 3.0})
    for (double lam : {0.5, 2.0})
      EXPECT_NEAR(expect_quadrature(m, Vector{k, lam}, [](double) { return 1.0; }), 1.0, 1e-10);
}

TEST(Quadrature, WeibullMean) {
  const WeibullModel m;
  EXPECT_NEAR(expect_quadrature(m, Vector{1.0, 1.0}, [](double x) { return x; }), 1.0, 1e-10);
  for (double k : {0.5, 2.0, 4.0}) {
    const double lam = 1.7;
    EXPECT_NEAR(expect_quadrature(m, Vector{k, lam}, [](double x) { return x; }),
                std::tgamma(1.0 + 1.0 / k) * lam, 1e-9);
  }
}

TEST(Quadrature, ShapeShapeSecondDerivative) {
  const WeibullModel m;
  const double v = expect_quadrature(m, Vector{1.0, 1.0}, [&](double x) { return m.hess(x, Vector{1.0, 1.0})(0, 0); });
  EXPECT_NEAR(v, -1.82368066085287939, 1e-9);
}

TEST(Quadrature, ScoreHasMeanZeroOnGrid) {
  const WeibullModel m;
  for (double k : {0.5, 1.0, 2.0})
    for (double lam : {0.5, 1.0, 2.0}) {
      const Vector th{k, lam};
      const Vector e = expect_quadrature(m, th, std::function<Vector(double)>([&](double x) { return m.grad(x, th); }));
      EXPECT_LE(norm_inf(e), 1e-8) << k << "," << lam;
    }
}

TEST(Quadrature, NotConvergedForDiscontinuousIntegrand) {
  // A jump inside the tail makes Gauss rules converge only like 1/order, so
  // the 1e-9 doubling test cannot pass by order 512.
  EXPECT_THROW(integrate_unit_exponential([](double u) { return u < 2.5 ? 1.0 : 0.0; }),
               QuadratureNotConverged);
}

TEST(Quadrature, WeightsSumToOneAtEveryOrder) {
  for (std::size_t order = kMinQuadratureOrder; order <= kMaxQuadratureOrder; order *= 2) {
    const QuadratureRule& rule = gauss_laguerre(order);
    double s = 0.0;
    for (double w : rule.weights) {
      ASSERT_GE(w, 0.0);
      s += w;
    }
    EXPECT_NEAR(s, 1.0, 1e-10) << "order " << order;
  }
}

TEST(Rng, PhiloxKnownAnswers) {
  // Random123 known-answer vectors for philox4x32-10.
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsAreIndependentOfConsumerThread) {
  // Draw 8 streams serially and from 8 threads; the per-stream sequences
  // must be bit-identical.
  constexpr int kStreams = 8;
  std::vector<std::vector<double>> serial(kStreams), threaded(kStreams);
  for (int s = 0; s < kStreams; ++s) {
    RngStream r(99, s);
    for (int i = 0; i < 500; ++i) serial[s].push_back(r.uniform_open());
  }
  {
    std::vector<std::jthread> pool;
    for (int s = 0; s < kStreams; ++s)
      pool.emplace_back([&, s] {
        RngStream r(99, s);
        for (int i = 0; i < 500; ++i) threaded[s].push_back(r.uniform_open());
      });
  }
  EXPECT_EQ(serial, threaded);
}

TEST(Rng, DistinctStreamsLookIndependent) {
  // Correlation between two streams of 100k uniforms should be O(1/√n).
  RngStream a(5, 0), b(5, 1);
  const int n = 100000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform_open(), y = b.uniform_open();
    sa += x; sb += y; sab += x * y; saa += x * x; sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(sa / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, UniformOpenNeverHitsEndpoints) {
  RngStream r(0, 0);
  for (int i = 0; i < 200000; ++i) {
    const double u = r.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
