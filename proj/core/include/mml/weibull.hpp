#pragma once

#include "mml/model.hpp"

namespace mml {

/// Weibull(k, λ) with density (k/λ)(x/λ)^{k-1} exp{-(x/λ)^k} on x > 0;
/// θ = (shape k, scale λ). x = 0 is excluded from the support.
class WeibullModel final : public ModelSpec {
 public:
  std::string_view name() const override { return "weibull"; }
  std::size_t dim() const override { return 2; }
  std::vector<std::string> parameter_names() const override { return {"k", "lambda"}; }

  double logpdf(double x, std::span<const double> theta) const override;
  Vector grad(double x, std::span<const double> theta) const override;
  Matrix hess(double x, std::span<const double> theta) const override;
  Tensor3 third(double x, std::span<const double> theta) const override;
  Matrix fisher(std::span<const double> theta) const override;
  std::optional<Vector> grad_log_det_fisher(std::span<const double> theta) const override;
  double from_unit_exponential(double u, std::span<const double> theta) const override;
  /// k₀ = 1.28 / sd(log x), λ₀ = exp(mean(log x) + γ/k₀).
  Vector initial_guess(const DataSet& data) const override;
};

double weibull_logpdf(const ParamPoint& theta, double x);
Matrix weibull_fisher(const ParamPoint& theta);
DataSet weibull_sample(const ParamPoint& theta, std::size_t n, RngStream& rng);

/// Closed-form first-order bias of the Weibull MLE, (shape, scale).
Vector weibull_mle_bias_closed(const ParamPoint& theta, std::size_t n);

/// First-order Wallace–Freeman correction (1/n) I(θ)⁻¹ a(θ) for independent
/// unit half-Cauchy priors on k and λ, in closed form.
Vector weibull_half_cauchy_correction_closed(const ParamPoint& theta, std::size_t n);

/// MLE bias plus the half-Cauchy correction above.
Vector weibull_mml_bias_closed(const ParamPoint& theta, std::size_t n);

/// Shape coefficient 18(π² − 2ζ(3))/π⁴ of the MLE bias (bias_k = coef·k/n).
double weibull_shape_bias_coefficient();

/// Ratio of MLE to Wallace–Freeman first-order shape bias at λ = 1:
/// 3(k²+1)(π²−2ζ(3)) / (π²(k²+3) − 6(k²+1)ζ(3)).
double weibull_bias_ratio(double k);

}  // namespace mml
