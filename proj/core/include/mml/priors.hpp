#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "mml/model.hpp"

namespace mml {

enum class PriorKind { Flat, Jeffreys, FisherSquared, HalfCauchyProduct, Custom };

const char* to_string(PriorKind kind);

/// Prior density on θ, up to a constant for the improper kinds. Only
/// gradients and θ-differences of log π enter estimation, so normalisation
/// constants of improper priors are dropped.
struct PriorSpec {
  PriorKind kind = PriorKind::Flat;
  std::string name;
  std::function<double(std::span<const double>)> log_density;
  std::function<Vector(std::span<const double>)> grad_log_density;
  bool proper = false;
};

PriorSpec flat_prior(std::size_t dim);
/// π ∝ |I(θ)|^{1/2}.
PriorSpec jeffreys_prior(ModelPtr model);
/// π ∝ |I(θ)|; the Firth-type penalty.
PriorSpec fisher_squared_prior(ModelPtr model);
/// Independent half-Cauchy factors 2/(π s (1 + (t/s)²)) on (0, ∞), one scale
/// per coordinate. Unit scales give the usual 2/(π(1+t²)).
PriorSpec half_cauchy_prior(Vector scales);
PriorSpec custom_prior(std::string name, std::function<double(std::span<const double>)> log_density,
                       std::function<Vector(std::span<const double>)> grad_log_density, bool proper);

/// Prior by CLI name: flat | jeffreys | fisher_squared | half_cauchy.
/// half_cauchy_scale applies to every coordinate.
PriorSpec make_prior(std::string_view name, ModelPtr model, double half_cauchy_scale = 1.0);

/// ∇ log |I(θ)|: the family's closed form when registered, otherwise central
/// differences of log det I with the standard step rule.
Vector grad_log_det_fisher(const ModelSpec& model, std::span<const double> theta);

/// pen(θ) = -log π(θ) + ½ log |I(θ)| with per-observation I. The 1/n weight
/// is applied by the estimator.
double penalty(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta);

/// a(θ) = ∇ log π(θ) − ½ ∇ log |I(θ)| = −∇ pen(θ).
Vector penalty_gradient_a(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta);

/// ∇² pen(θ) = −∂a/∂θ by central differences of a, symmetrised.
Matrix penalty_hessian(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta);

}  // namespace mml
