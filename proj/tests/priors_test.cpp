#include <gtest/gtest.h>

#include <cmath>

#include "fd_oracle.hpp"
#include "mml/constants.hpp"
#include "mml/errors.hpp"
#include "mml/exponential.hpp"
#include "mml/priors.hpp"
#include "mml/weibull.hpp"

using namespace mml;

namespace {
const ModelPtr kWeibull = make_model("weibull");
const ModelPtr kExponential = make_model("exponential");
}  // namespace

TEST(Penalty, FlatAtUnitScale) {
  const PriorSpec flat = flat_prior(2);
  for (double k : {0.5, 1.0, 3.0})
    EXPECT_NEAR(penalty(*kWeibull, flat, Vector{k, 1.0}), 0.248850151235372646, 1e-14) << k;
  EXPECT_NEAR(penalty(*kWeibull, flat, Vector{1.0, 2.0}), 0.248850151235372646 - std::log(2.0), 1e-14);
}

TEST(Penalty, HalfCauchyAtUnitParameters) {
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  EXPECT_TRUE(hc.proper);
  EXPECT_NEAR(penalty(*kWeibull, hc, Vector{1.0, 1.0}), 2.53830992293416791, 1e-13);
}

TEST(PenaltyGradient, HalfCauchyExamples) {
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const Vector a11 = penalty_gradient_a(*kWeibull, hc, Vector{1.0, 1.0});
  EXPECT_NEAR(a11[0], -1.0, 1e-14);
  EXPECT_NEAR(a11[1], 0.0, 1e-14);
  const Vector a21 = penalty_gradient_a(*kWeibull, hc, Vector{2.0, 1.0});
  EXPECT_NEAR(a21[0], -0.8, 1e-14);
  EXPECT_NEAR(a21[1], 0.0, 1e-14);
}

TEST(PenaltyGradient, JeffreysIsIdenticallyZero) {
  for (const ModelPtr& m : {kWeibull, kExponential}) {
    const PriorSpec j = jeffreys_prior(m);
    for (double t : {0.3, 1.0, 4.0}) {
      const Vector th(m->dim(), t);
      for (double v : penalty_gradient_a(*m, j, th)) EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(PenaltyGradient, FisherSquaredIsHalfLogDetGradient) {
  const PriorSpec fs = fisher_squared_prior(kWeibull);
  for (double lam : {0.5, 1.0, 2.0}) {
    const Vector a = penalty_gradient_a(*kWeibull, fs, Vector{1.5, lam});
    EXPECT_NEAR(a[0], 0.0, 1e-14);
    EXPECT_NEAR(a[1], -1.0 / lam, 1e-14);
  }
}

TEST(PenaltyGradient, EqualsNegativePenaltyGradient) {
  const std::vector<PriorSpec> priors{flat_prior(2), jeffreys_prior(kWeibull), fisher_squared_prior(kWeibull),
                                      half_cauchy_prior({1.0, 1.0}), half_cauchy_prior({0.5, 3.0})};
  for (const PriorSpec& p : priors)
    for (double k : {0.5, 1.0, 2.0})
      for (double lam : {0.5, 1.0, 2.0}) {
        const Vector th{k, lam};
        const fdo::Field pen = [&](std::span<const double> t) { return penalty(*kWeibull, p, t); };
        const Vector a = penalty_gradient_a(*kWeibull, p, th);
        for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(a[i], -fdo::fd_first(pen, th, i), 1e-7) << p.name;
        const Matrix h = penalty_hessian(*kWeibull, p, th);
        EXPECT_TRUE(h.is_symmetric(0.0));
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(h(i, j), fdo::fd_second(pen, th, i, j), 1e-5) << p.name;
      }
}

TEST(GradLogDetFisher, AnalyticMatchesNumeric) {
  const Vector th{1.7, 0.6};
  const Vector g = grad_log_det_fisher(*kWeibull, th);
  const fdo::Field f = [&](std::span<const double> t) { return log_det_spd(kWeibull->fisher(t)); };
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(g[i], fdo::fd_first(f, th, i), 1e-8);
}

TEST(CustomPrior, IsUsedVerbatim) {
  const PriorSpec p = custom_prior(
      "gamma_like", [](std::span<const double> t) { return -2.0 * t[0]; },
      [](std::span<const double>) { return Vector{-2.0}; }, true);
  EXPECT_EQ(p.kind, PriorKind::Custom);
  const Vector a = penalty_gradient_a(*kExponential, p, Vector{0.5});
  EXPECT_NEAR(a[0], -2.0 + 1.0 / 0.5, 1e-14);  // prior term plus −½∇log|I| = 1/θ
}

TEST(MakePrior, KnownNamesAndErrors) {
  EXPECT_EQ(make_prior("flat", kWeibull).kind, PriorKind::Flat);
  EXPECT_EQ(make_prior("jeffreys", kWeibull).kind, PriorKind::Jeffreys);
  EXPECT_EQ(make_prior("fisher_squared", kWeibull).kind, PriorKind::FisherSquared);
  EXPECT_EQ(make_prior("half_cauchy", kWeibull).kind, PriorKind::HalfCauchyProduct);
  EXPECT_THROW(make_prior("uniform", kWeibull), ConfigError);
  EXPECT_STREQ(to_string(PriorKind::HalfCauchyProduct), "half_cauchy");
}
