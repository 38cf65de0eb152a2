#include "mml/exponential.hpp"

#include <cmath>

#include "mml/errors.hpp"

namespace mml {

double ExponentialModel::logpdf(double x, std::span<const double> theta) const {
  check_theta(theta);
  check_observation(x);
  return std::log(theta[0]) - theta[0] * x;
}

Vector ExponentialModel::grad(double x, std::span<const double> theta) const {
  check_theta(theta);
  check_observation(x);
  return {1.0 / theta[0] - x};
}

Matrix ExponentialModel::hess(double x, std::span<const double> theta) const {
  check_theta(theta);
  check_observation(x);
  return {{-1.0 / (theta[0] * theta[0])}};
}

Tensor3 ExponentialModel::third(double x, std::span<const double> theta) const {
  check_theta(theta);
  check_observation(x);
  Tensor3 t(1);
  t(0, 0, 0) = 2.0 / (theta[0] * theta[0] * theta[0]);
  return t;
}

Matrix ExponentialModel::fisher(std::span<const double> theta) const {
  check_theta(theta);
  return {{1.0 / (theta[0] * theta[0])}};
}

std::optional<Vector> ExponentialModel::grad_log_det_fisher(std::span<const double> theta) const {
  check_theta(theta);
  return Vector{-2.0 / theta[0]};
}

double ExponentialModel::from_unit_exponential(double u, std::span<const double> theta) const {
  return u / theta[0];
}

Vector ExponentialModel::initial_guess(const DataSet& data) const {
  double s = 0.0;
  for (double x : data.observations) s += x;
  if (!(s > 0.0)) throw DegenerateData("exponential: sample sum is not positive");
  return {static_cast<double>(data.n()) / s};
}

}  // namespace mml
