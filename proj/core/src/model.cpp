#include "mml/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mml/errors.hpp"
#include "mml/exponential.hpp"
#include "mml/numerics.hpp"
#include "mml/weibull.hpp"

namespace mml {

ParamPoint::ParamPoint(Vector values, std::vector<bool> positive)
    : values_(std::move(values)), positive_(std::move(positive)) {
  if (values_.size() != positive_.size())
    throw DomainError("ParamPoint: value and positivity mask lengths differ");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream os;
      os << "ParamPoint: coordinate " << i << " is not finite";
      throw DomainError(os.str());
    }
    if (positive_[i] && !(values_[i] > 0.0)) {
      std::ostringstream os;
      os << "ParamPoint: coordinate " << i << " must be > 0, got " << values_[i];
      throw DomainError(os.str());
    }
  }
}

ParamPoint ParamPoint::positive(Vector values) {
  std::vector<bool> mask(values.size(), true);
  return ParamPoint(std::move(values), std::move(mask));
}

bool ParamPoint::admits(std::span<const double> candidate) const {
  if (candidate.size() != values_.size()) return false;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (!std::isfinite(candidate[i])) return false;
    if (positive_[i] && !(candidate[i] > 0.0)) return false;
  }
  return true;
}

ParamPoint ParamPoint::with_values(Vector values) const { return ParamPoint(std::move(values), positive_); }

DataSet DataSet::prefix(std::size_t m) const {
  m = std::min(m, observations.size());
  return DataSet{std::vector<double>(observations.begin(), observations.begin() + static_cast<std::ptrdiff_t>(m))};
}

double Tensor3::max_permutation_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t l = 0; l < d_; ++l) {
        const double v = (*this)(i, j, l);
        for (double w : {(*this)(i, l, j), (*this)(j, i, l), (*this)(j, l, i), (*this)(l, i, j),
                         (*this)(l, j, i)})
          worst = std::max(worst, std::abs(v - w));
      }
  return worst;
}

void ModelSpec::check_theta(std::span<const double> theta) const {
  if (theta.size() != dim()) {
    std::ostringstream os;
    os << name() << ": expected " << dim() << " parameters, got " << theta.size();
    throw DomainError(os.str());
  }
  const auto mask = positivity();
  const auto names = parameter_names();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i]) || (mask[i] && !(theta[i] > 0.0))) {
      std::ostringstream os;
      os << name() << ": parameter " << names[i] << " = " << theta[i] << " is outside the parameter space";
      throw DomainError(os.str());
    }
  }
}

void ModelSpec::check_observation(double x) const {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << name() << ": observation " << x << " is outside the support (0, inf)";
    throw DomainError(os.str());
  }
}

ParamPoint ModelSpec::point(Vector values) const {
  check_theta(values);
  return ParamPoint(std::move(values), positivity());
}

DataSet ModelSpec::sample(const ParamPoint& theta, std::size_t n, RngStream& rng) const {
  check_theta(theta.values());
  DataSet data;
  data.observations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = -std::log(rng.uniform_open());
    data.observations.push_back(from_unit_exponential(u, theta.values()));
  }
  return data;
}

double log_likelihood(const ModelSpec& model, const DataSet& data, std::span<const double> theta) {
  double s = 0.0;
  for (double x : data.observations) s += model.logpdf(x, theta);
  return s;
}

Vector total_score(const ModelSpec& model, const DataSet& data, std::span<const double> theta) {
  Vector s(model.dim(), 0.0);
  for (double x : data.observations) {
    const Vector g = model.grad(x, theta);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += g[i];
  }
  return s;
}

Matrix total_hessian(const ModelSpec& model, const DataSet& data, std::span<const double> theta) {
  Matrix h(model.dim(), model.dim());
  for (double x : data.observations) h = h + model.hess(x, theta);
  return h;
}

void validate_data(const ModelSpec& model, const DataSet& data) {
  if (data.n() < model.dim() + 1) {
    std::ostringstream os;
    os << model.name() << ": need at least " << model.dim() + 1 << " observations, got " << data.n();
    throw DomainError(os.str());
  }
  for (std::size_t i = 0; i < data.n(); ++i) {
    try {
      model.check_observation(data.observations[i]);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "observation " << i << ": " << e.what();
      throw DomainError(os.str());
    }
  }
}

ModelPtr make_model(std::string_view name) {
  if (name == "weibull") return std::make_shared<WeibullModel>();
  if (name == "exponential") return std::make_shared<ExponentialModel>();
  throw ConfigError("unknown model '" + std::string(name) + "' (expected weibull or exponential)");
}

double expect_quadrature(const ModelSpec& model, std::span<const double> theta,
                         const std::function<double(double)>& g) {
  model.check_theta(theta);
  return integrate_unit_exponential(
             [&](double u) { return g(model.from_unit_exponential(u, theta)); })
      .value;
}

Vector expect_quadrature(const ModelSpec& model, std::span<const double> theta,
                         const std::function<Vector(double)>& g) {
  model.check_theta(theta);
  return integrate_unit_exponential(std::function<Vector(double)>(
                                        [&](double u) { return g(model.from_unit_exponential(u, theta)); }))
      .value;
}

}  // namespace mml
