#include "mml/priors.hpp"

#include <cmath>

#include "mml/constants.hpp"
#include "mml/errors.hpp"
#include "mml/numerics.hpp"

namespace mml {

const char* to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::Flat: return "flat";
    case PriorKind::Jeffreys: return "jeffreys";
    case PriorKind::FisherSquared: return "fisher_squared";
    case PriorKind::HalfCauchyProduct: return "half_cauchy";
    case PriorKind::Custom: return "custom";
  }
  return "custom";
}

PriorSpec flat_prior(std::size_t dim) {
  PriorSpec p;
  p.kind = PriorKind::Flat;
  p.name = "flat";
  p.log_density = [](std::span<const double>) { return 0.0; };
  p.grad_log_density = [dim](std::span<const double>) { return Vector(dim, 0.0); };
  p.proper = false;
  return p;
}

namespace {

PriorSpec fisher_power_prior(ModelPtr model, double power, PriorKind kind, std::string name) {
  PriorSpec p;
  p.kind = kind;
  p.name = std::move(name);
  p.log_density = [model, power](std::span<const double> theta) {
    return power * log_det_spd(model->fisher(theta));
  };
  p.grad_log_density = [model, power](std::span<const double> theta) {
    return power * std::span<const double>(grad_log_det_fisher(*model, theta));
  };
  p.proper = false;
  return p;
}

}  // namespace

PriorSpec jeffreys_prior(ModelPtr model) {
  return fisher_power_prior(std::move(model), 0.5, PriorKind::Jeffreys, "jeffreys");
}

PriorSpec fisher_squared_prior(ModelPtr model) {
  return fisher_power_prior(std::move(model), 1.0, PriorKind::FisherSquared, "fisher_squared");
}

PriorSpec half_cauchy_prior(Vector scales) {
  for (double s : scales)
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("half_cauchy: scales must be positive and finite");
  PriorSpec p;
  p.kind = PriorKind::HalfCauchyProduct;
  p.name = "half_cauchy";
  p.log_density = [scales](std::span<const double> theta) {
    double s = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double t = theta[i] / scales[i];
      s += std::log(2.0 / (constants::pi * scales[i])) - std::log1p(t * t);
    }
    return s;
  };
  p.grad_log_density = [scales](std::span<const double> theta) {
    Vector g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
      g[i] = -2.0 * theta[i] / (scales[i] * scales[i] + theta[i] * theta[i]);
    return g;
  };
  p.proper = true;
  return p;
}

PriorSpec custom_prior(std::string name, std::function<double(std::span<const double>)> log_density,
                       std::function<Vector(std::span<const double>)> grad_log_density, bool proper) {
  return PriorSpec{PriorKind::Custom, std::move(name), std::move(log_density), std::move(grad_log_density),
                   proper};
}

PriorSpec make_prior(std::string_view name, ModelPtr model, double half_cauchy_scale) {
  if (name == "flat") return flat_prior(model->dim());
  if (name == "jeffreys") return jeffreys_prior(model);
  if (name == "fisher_squared") return fisher_squared_prior(model);
  if (name == "half_cauchy") return half_cauchy_prior(Vector(model->dim(), half_cauchy_scale));
  throw ConfigError("unknown prior '" + std::string(name) +
                    "' (expected flat, jeffreys, fisher_squared or half_cauchy)");
}

Vector grad_log_det_fisher(const ModelSpec& model, std::span<const double> theta) {
  if (auto g = model.grad_log_det_fisher(theta)) return *g;
  return central_grad([&](std::span<const double> t) { return log_det_spd(model.fisher(t)); }, theta);
}

double penalty(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta) {
  return -prior.log_density(theta) + 0.5 * log_det_spd(model.fisher(theta));
}

Vector penalty_gradient_a(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta) {
  const Vector glp = prior.grad_log_density(theta);
  const Vector gld = grad_log_det_fisher(model, theta);
  Vector a(glp.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = glp[i] - 0.5 * gld[i];
  return a;
}

Matrix penalty_hessian(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta) {
  Matrix j = central_jacobian([&](std::span<const double> t) { return penalty_gradient_a(model, prior, t); },
                              theta);
  const std::size_t d = j.rows();
  Matrix h(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) h(r, c) = -0.5 * (j(r, c) + j(c, r));
  return h;
}

}  // namespace mml
