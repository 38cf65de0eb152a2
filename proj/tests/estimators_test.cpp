#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "mml/errors.hpp"
#include "mml/estimators.hpp"
#include "mml/exponential.hpp"
#include "mml/weibull.hpp"

using namespace mml;

namespace {

const ModelPtr kWeibull = make_model("weibull");
const ModelPtr kExponential = make_model("exponential");

DataSet draw(const ModelPtr& m, Vector theta, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return m->sample(m->point(std::move(theta)), n, rng);
}

double total(const DataSet& d) { return std::accumulate(d.observations.begin(), d.observations.end(), 0.0); }

}  // namespace

TEST(FitMle, DegenerateDataRejected) {
  EXPECT_THROW(fit_mle(*kWeibull, DataSet{{2.0, 2.0, 2.0, 2.0}}), DegenerateData);
  EXPECT_THROW(fit_mle(*kWeibull, DataSet{{1.0, 2.0}}), DomainError);
}

TEST(FitMle, ExponentialRateIsReciprocalMean) {
  const DataSet d = draw(kExponential, {2.5}, 300, 5);
  const EstimateResult r = fit_mle(*kExponential, d);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.theta_hat[0], d.n() / total(d), 1e-10);
}

TEST(FitMle, WeibullLargeSampleIsClose) {
  const DataSet d = draw(kWeibull, {2.0, 1.0}, 100000, 9);
  const EstimateResult r = fit_mle(*kWeibull, d);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.residual, 1e-9);
  EXPECT_NEAR(r.theta_hat[0], 2.0, 0.02);
  EXPECT_NEAR(r.theta_hat[1], 1.0, 0.02);
  EXPECT_TRUE(r.observed_info.is_symmetric(1e-9));
}

TEST(FitMle, ScaleEquivariant) {
  DataSet d = draw(kWeibull, {1.5, 1.0}, 200, 21);
  const EstimateResult r1 = fit_mle(*kWeibull, d);
  for (double& x : d.observations) x *= 3.0;
  const EstimateResult r3 = fit_mle(*kWeibull, d);
  EXPECT_NEAR(r3.theta_hat[0], r1.theta_hat[0], 1e-8);
  EXPECT_NEAR(r3.theta_hat[1], 3.0 * r1.theta_hat[1], 1e-8);
}

TEST(FitMle, MultipleStartsAgree) {
  const DataSet d = draw(kWeibull, {2.0, 1.0}, 150, 3);
  FitOptions opt;
  opt.extra_inits = {{0.5, 0.5}, {5.0, 3.0}, {1.0, 1.0}};
  const EstimateResult r = fit_mle(*kWeibull, d, std::nullopt, opt);
  EXPECT_EQ(r.stationary_points, 1u);
  const EstimateResult plain = fit_mle(*kWeibull, d);
  EXPECT_NEAR(r.theta_hat[0], plain.theta_hat[0], 1e-8);
}

TEST(FitWf, JeffreysEqualsMle) {
  const DataSet d = draw(kWeibull, {0.8, 2.0}, 120, 13);
  const EstimateResult mle = fit_mle(*kWeibull, d);
  const EstimateResult wf = fit_wf(*kWeibull, jeffreys_prior(kWeibull), d);
  EXPECT_NEAR(wf.theta_hat[0], mle.theta_hat[0], 1e-9);
  EXPECT_NEAR(wf.theta_hat[1], mle.theta_hat[1], 1e-9);
}

TEST(FitWf, FlatExponentialClosedForm) {
  // pen = −log θ, so the stationary point is (n + 1)/Σx.
  const DataSet d = draw(kExponential, {0.7}, 50, 17);
  const EstimateResult wf = fit_wf(*kExponential, flat_prior(1), d);
  EXPECT_NEAR(wf.theta_hat[0], (d.n() + 1.0) / total(d), 1e-10);
  EXPECT_LT(wf.residual, 1e-10);
  EXPECT_LT(norm_inf(stationarity_psi(*kExponential, nullptr, d,
                                      fit_mle(*kExponential, d).theta_hat.values())),
            1e-10);
}

TEST(FitWf, HalfCauchyShiftMatchesPrediction) {
  const DataSet d = draw(kWeibull, {2.0, 1.0}, 200, 23);
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const EstimateResult mle = fit_mle(*kWeibull, d);
  const EstimateResult wf = fit_wf(*kWeibull, hc, d);
  const Vector pred = predicted_shift(*kWeibull, hc, mle.theta_hat.values(), d.n());
  const double shift = wf.theta_hat[0] - mle.theta_hat[0];
  EXPECT_LT(shift, 0.0);
  EXPECT_GT(shift / pred[0], 0.5);
  EXPECT_LT(shift / pred[0], 2.0);
}

TEST(FitWf, ShiftScalesAsOneOverN) {
  const DataSet big = draw(kWeibull, {2.0, 1.0}, 800, 29);
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  std::vector<double> scaled;
  for (std::size_t n : {200, 400, 800}) {
    const DataSet d = big.prefix(n);
    const EstimateResult mle = fit_mle(*kWeibull, d);
    const EstimateResult wf = fit_wf(*kWeibull, hc, d);
    scaled.push_back(n * (wf.theta_hat[0] - mle.theta_hat[0]));
  }
  for (double s : scaled) EXPECT_NEAR(s / scaled.back(), 1.0, 0.3);
}

TEST(FitWf, ObjectiveIsLocalMinimum) {
  const DataSet d = draw(kWeibull, {1.2, 0.8}, 100, 31);
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  const EstimateResult wf = fit_wf(*kWeibull, hc, d);
  const auto v = wf.theta_hat.values();
  const Vector th(v.begin(), v.end());
  EXPECT_NEAR(objective_q(*kWeibull, &hc, d, th), wf.objective, 1e-12);
  for (double dk : {-0.01, 0.0, 0.01})
    for (double dl : {-0.01, 0.0, 0.01}) {
      if (dk == 0.0 && dl == 0.0) continue;
      EXPECT_GT(objective_q(*kWeibull, &hc, d, Vector{th[0] + dk, th[1] + dl}), wf.objective);
    }
}

TEST(PredictedShift, HalfCauchyExample) {
  const Vector s = predicted_shift(*kWeibull, half_cauchy_prior({1.0, 1.0}), Vector{2.0, 1.0}, 100);
  EXPECT_NEAR(s[0], -0.0194536672593288521, 1e-12);
  EXPECT_NEAR(s[1], -0.00205617644436554206, 1e-12);
}

TEST(Covariance, AsymptoticAtUnitParameters) {
  const Matrix c = asymptotic_cov(*kWeibull, Vector{1.0, 1.0});
  EXPECT_NEAR(c(0, 0), 0.607927101854026629, 1e-13);
  EXPECT_NEAR(c(0, 1), 0.257022055545693, 1e-13);
  EXPECT_NEAR(c(1, 0), 0.257022055545693, 1e-13);
  EXPECT_NEAR(c(1, 1), 1.10866489885953, 1e-13);
}

TEST(Covariance, SandwichReducesToInverseUnderIdentity) {
  const Vector th{2.0, 0.5};
  const Matrix i = kWeibull->fisher(th);
  const Matrix b = score_outer_expectation(*kWeibull, th);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_NEAR(b(r, c), i(r, c), 1e-8 * std::max(1.0, std::abs(i(r, c))));
  const Matrix s = sandwich_cov(i, i);
  const Matrix inv = asymptotic_cov(*kWeibull, th);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_NEAR(s(r, c), inv(r, c), 1e-12);
}
