#include "mml/weibull.hpp"

#include <cmath>
#include <sstream>

#include "mml/constants.hpp"
#include "mml/errors.hpp"

namespace mml {

namespace {

using constants::euler_gamma;
using constants::pi;
using constants::zeta3;

constexpr double kPi2 = pi * pi;
constexpr double kPi4 = kPi2 * kPi2;

struct Terms {
  double k, lam, r, z;  // r = log(x/λ), z = (x/λ)^k
};

Terms terms(const WeibullModel& m, double x, std::span<const double> theta) {
  m.check_theta(theta);
  m.check_observation(x);
  const double k = theta[0];
  const double lam = theta[1];
  const double r = std::log(x / lam);
  return {k, lam, r, std::exp(k * r)};
}

}  // namespace

double WeibullModel::logpdf(double x, std::span<const double> theta) const {
  const auto [k, lam, r, z] = terms(*this, x, theta);
  return std::log(k) - std::log(lam) + (k - 1.0) * r - z;
}

Vector WeibullModel::grad(double x, std::span<const double> theta) const {
  const auto [k, lam, r, z] = terms(*this, x, theta);
  return {1.0 / k + r - r * z, (k / lam) * (z - 1.0)};
}

Matrix WeibullModel::hess(double x, std::span<const double> theta) const {
  const auto [k, lam, r, z] = terms(*this, x, theta);
  const double kk = -1.0 / (k * k) - r * r * z;
  const double kl = (z - 1.0 + k * r * z) / lam;
  const double ll = (k / (lam * lam)) * (1.0 - (k + 1.0) * z);
  return {{kk, kl}, {kl, ll}};
}

Tensor3 WeibullModel::third(double x, std::span<const double> theta) const {
  const auto [k, lam, r, z] = terms(*this, x, theta);
  const double kkk = 2.0 / (k * k * k) - r * r * r * z;
  const double kkl = r * z * (2.0 + k * r) / lam;
  const double kll = (1.0 - z * (1.0 + 2.0 * k + k * (1.0 + k) * r)) / (lam * lam);
  const double lll = (k / (lam * lam * lam)) * (-2.0 + (k + 1.0) * (k + 2.0) * z);
  Tensor3 t(2);
  t(0, 0, 0) = kkk;
  t(0, 0, 1) = t(0, 1, 0) = t(1, 0, 0) = kkl;
  t(0, 1, 1) = t(1, 0, 1) = t(1, 1, 0) = kll;
  t(1, 1, 1) = lll;
  return t;
}

Matrix WeibullModel::fisher(std::span<const double> theta) const {
  check_theta(theta);
  const double k = theta[0];
  const double lam = theta[1];
  const double g1 = euler_gamma - 1.0;
  const double kk = (6.0 * g1 * g1 + kPi2) / (6.0 * k * k);
  const double kl = g1 / lam;
  const double ll = (k * k) / (lam * lam);
  return {{kk, kl}, {kl, ll}};
}

std::optional<Vector> WeibullModel::grad_log_det_fisher(std::span<const double> theta) const {
  check_theta(theta);
  // |I| = π² / (6λ²)
  return Vector{0.0, -2.0 / theta[1]};
}

double WeibullModel::from_unit_exponential(double u, std::span<const double> theta) const {
  return theta[1] * std::pow(u, 1.0 / theta[0]);
}

Vector WeibullModel::initial_guess(const DataSet& data) const {
  const double n = static_cast<double>(data.n());
  double mean = 0.0;
  for (double x : data.observations) mean += std::log(x);
  mean /= n;
  double ss = 0.0;
  for (double x : data.observations) {
    const double d = std::log(x) - mean;
    ss += d * d;
  }
  const double sd = data.n() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  if (!(sd > 0.0)) throw DegenerateData("weibull: all observations are equal (sd(log x) = 0)");
  const double k0 = 1.28 / sd;
  return {k0, std::exp(mean + euler_gamma / k0)};
}

double weibull_logpdf(const ParamPoint& theta, double x) {
  return WeibullModel{}.logpdf(x, theta.values());
}

Matrix weibull_fisher(const ParamPoint& theta) { return WeibullModel{}.fisher(theta.values()); }

DataSet weibull_sample(const ParamPoint& theta, std::size_t n, RngStream& rng) {
  if (n == 0) throw DomainError("weibull_sample: n must be >= 1");
  return WeibullModel{}.sample(theta, n, rng);
}

double weibull_shape_bias_coefficient() { return 18.0 * (kPi2 - 2.0 * zeta3) / kPi4; }

Vector weibull_mle_bias_closed(const ParamPoint& theta, std::size_t n) {
  WeibullModel{}.check_theta(theta.values());
  const double k = theta[0];
  const double lam = theta[1];
  const double g = euler_gamma;
  const double nn = static_cast<double>(n);
  const double shape = weibull_shape_bias_coefficient() * k;
  const double scale = lam *
                       (72.0 * (g - 1.0) * k * zeta3 +
                        6.0 * kPi2 * (5.0 * k + g * (-4.0 * k + g - 2.0) + 1.0) + kPi4 * (1.0 - 2.0 * k)) /
                       (2.0 * kPi4 * k * k);
  return {shape / nn, scale / nn};
}

Vector weibull_half_cauchy_correction_closed(const ParamPoint& theta, std::size_t n) {
  WeibullModel{}.check_theta(theta.values());
  const double k = theta[0];
  const double lam = theta[1];
  const double g1 = euler_gamma - 1.0;
  const double nn = static_cast<double>(n);
  const double lam_ratio = (lam * lam - 1.0) / (lam * lam + 1.0);
  const double k_ratio = k * k * k / (k * k + 1.0);
  const double shape = (6.0 / kPi2) * (g1 * lam_ratio - 2.0 * k_ratio);
  const double scale =
      (lam / (kPi2 * k * k)) * (12.0 * g1 * k_ratio - (6.0 * g1 * g1 + kPi2) * lam_ratio);
  return {shape / nn, scale / nn};
}

Vector weibull_mml_bias_closed(const ParamPoint& theta, std::size_t n) {
  return weibull_mle_bias_closed(theta, n) + weibull_half_cauchy_correction_closed(theta, n);
}

double weibull_bias_ratio(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    std::ostringstream os;
    os << "weibull_bias_ratio: k must be > 0, got " << k;
    throw DomainError(os.str());
  }
  const double k2 = k * k;
  const double denom = kPi2 * (k2 + 3.0) - 6.0 * (k2 + 1.0) * zeta3;
  if (!(denom > 0.0)) throw DomainError("weibull_bias_ratio: non-positive denominator");
  return 3.0 * (k2 + 1.0) * (kPi2 - 2.0 * zeta3) / denom;
}

}  // namespace mml
