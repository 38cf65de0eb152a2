#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mml/codelength.hpp"
#include "mml/errors.hpp"
#include "mml/estimators.hpp"
#include "mml/priors.hpp"
#include "mml/weibull.hpp"

using namespace mml;

namespace {
const ModelPtr kWeibull = make_model("weibull");
const ModelPtr kExponential = make_model("exponential");

DataSet draw(const ModelPtr& m, Vector theta, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return m->sample(m->point(std::move(theta)), n, rng);
}
}  // namespace

TEST(Kappa, ExactLowDimensions) {
  EXPECT_DOUBLE_EQ(kappa_const(1).value, 1.0 / 12.0);
  EXPECT_NEAR(kappa_const(2).value, 5.0 / (36.0 * std::sqrt(3.0)), 1e-16);
  EXPECT_NEAR(kappa_const(2).value, 0.0801875373874480, 1e-15);
  EXPECT_NEAR(kappa_const(3).value, 19.0 / (192.0 * std::cbrt(2.0)), 1e-16);
  EXPECT_NEAR(kappa_const(3).value, 0.0785432812171765, 1e-15);
  for (std::size_t d = 1; d <= 3; ++d) EXPECT_FALSE(kappa_const(d).approximate);
  EXPECT_TRUE(kappa_const(4).approximate);
  EXPECT_THROW(kappa_const(0), DomainError);
}

TEST(Kappa, StrictlyDecreasingWhereExact) {
  EXPECT_GT(kappa_const(1).value, kappa_const(2).value);
  EXPECT_GT(kappa_const(2).value, kappa_const(3).value);
}

TEST(Kappa, LargeDimensionApproximationApproachesLimit) {
  // The approximation is not calibrated against the exact small-d values, so
  // only its own trend and limit are checked.
  const double limit = 1.0 / (2.0 * std::numbers::pi * std::numbers::e);
  for (std::size_t d = 4; d < 200; ++d) {
    EXPECT_GT(kappa_const(d).value, kappa_const(d + 1).value) << d;
    EXPECT_GT(kappa_const(d + 1).value, limit) << d;
  }
  EXPECT_NEAR(kappa_const(100000).value, limit, 1e-4);
}

TEST(CellVolume, Identity) {
  EXPECT_NEAR(optimal_cell_volume(1), 3.46410161513775, 1e-13);
  EXPECT_NEAR(optimal_cell_volume(2), 12.4707658144959, 1e-12);
  EXPECT_NEAR(optimal_cell_volume(3), 45.4293412607205, 1e-12);
  for (std::size_t d = 1; d <= 3; ++d)
    EXPECT_NEAR(optimal_cell_volume(d) * std::pow(kappa_const(d).value, d / 2.0), 1.0, 1e-12);
  EXPECT_THROW(optimal_cell_volume(4), DomainError);
}

TEST(MessageLength, PartsAreConsistent) {
  const DataSet d = draw(kWeibull, {2.0, 1.0}, 300, 41);
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const EstimateResult wf = fit_wf(*kWeibull, hc, d);
  const CodelengthReport r = message_length(*kWeibull, hc, d, wf.theta_hat.values());
  EXPECT_NEAR(r.total, r.assertion_part + r.detail_part, 1e-9);
  EXPECT_NEAR(r.gap, r.total - r.bic_form, 1e-9);
  EXPECT_FALSE(r.up_to_constant);
  EXPECT_FALSE(r.approximate_kappa);
  // gap = pen(θ) + (d/2)(log κ_d + 1), independent of n.
  const double pen = penalty(*kWeibull, hc, wf.theta_hat.values());
  EXPECT_NEAR(r.gap, pen + std::log(kappa_const(2).value) + 1.0, 1e-9);
}

TEST(MessageLength, ImproperPriorIsUpToConstant) {
  const DataSet d = draw(kExponential, {1.0}, 50, 43);
  EXPECT_TRUE(message_length(*kExponential, flat_prior(1), d, Vector{1.0}).up_to_constant);
}

TEST(MessageLength, WfPointMinimisesTotal) {
  const DataSet d = draw(kExponential, {1.5}, 80, 47);
  const PriorSpec flat = flat_prior(1);
  const double th = fit_wf(*kExponential, flat, d).theta_hat[0];
  const double best = message_length(*kExponential, flat, d, Vector{th}).total;
  for (int i = -20; i <= 20; ++i) {
    if (i == 0) continue;
    const double t = th * (1.0 + 0.005 * i);
    EXPECT_GT(message_length(*kExponential, flat, d, Vector{t}).total, best) << t;
  }
}

TEST(MessageLength, WfNoLongerThanMle) {
  const DataSet d = draw(kWeibull, {0.7, 2.0}, 60, 53);
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const EstimateResult mle = fit_mle(*kWeibull, d);
  const EstimateResult wf = fit_wf(*kWeibull, hc, d);
  EXPECT_LE(message_length(*kWeibull, hc, d, wf.theta_hat.values()).total,
            message_length(*kWeibull, hc, d, mle.theta_hat.values()).total + 1e-12);
}

TEST(MessageLength, ToBits) {
  const DataSet d = draw(kExponential, {1.0}, 40, 59);
  const CodelengthReport nats = message_length(*kExponential, flat_prior(1), d, Vector{1.0});
  const CodelengthReport bits = to_bits(nats);
  EXPECT_NEAR(bits.total, nats.total / std::log(2.0), 1e-12);
  EXPECT_NEAR(bits.gap, nats.gap / std::log(2.0), 1e-12);
}

TEST(GapProfile, BoundedAndRefitted) {
  const DataSet d = draw(kWeibull, {2.0, 1.0}, 2000, 61);
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const std::vector<std::size_t> sizes{250, 500, 1000, 2000};
  const std::vector<GapPoint> prof = bic_gap_profile(*kWeibull, hc, d, sizes);
  ASSERT_EQ(prof.size(), sizes.size());
  for (std::size_t i = 0; i < prof.size(); ++i) {
    EXPECT_EQ(prof[i].n, sizes[i]);
    EXPECT_LT(std::abs(prof[i].gap), 10.0);
    const EstimateResult fit = fit_wf(*kWeibull, hc, d.prefix(sizes[i]));
    const double k_hat = fit.theta_hat[0];
    EXPECT_NEAR(prof[i].theta_hat[0], k_hat, 1e-10);
  }
  const std::vector<std::size_t> too_big{4000};
  EXPECT_THROW(bic_gap_profile(*kWeibull, hc, d, too_big), Error);
}
