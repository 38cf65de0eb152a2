#pragma once

#include <optional>
#include <vector>

#include "mml/model.hpp"
#include "mml/priors.hpp"

namespace mml {

struct EstimateResult {
  explicit EstimateResult(ParamPoint theta) : theta_hat(std::move(theta)) {}

  ParamPoint theta_hat;
  double objective = 0.0;   ///< Q_n(θ̂)
  double residual = 0.0;    ///< ‖Ψ_n(θ̂)‖∞
  std::size_t iterations = 0;
  bool converged = false;
  Matrix observed_info;     ///< −∇²ℓ(θ̂), sample level
  std::size_t stationary_points = 1;  ///< distinct converged points over all starts
  std::size_t scoring_steps = 0;      ///< iterations that fell back to Fisher scoring
};

struct FitOptions {
  std::size_t max_iterations = 200;
  double tolerance = 1e-10;
  /// Additional starting points; the converged point with smallest Q_n wins.
  std::vector<Vector> extra_inits;
  /// When false, a non-converged fit is returned with converged = false
  /// instead of raising NoConvergence.
  bool throw_on_failure = true;
};

/// Q_n(θ) = (1/n) Σ −log p(x_i|θ) + (1/n) pen(θ); prior == nullptr gives the
/// unpenalised (maximum likelihood) criterion.
double objective_q(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                   std::span<const double> theta);

/// Ψ_n(θ) = (1/n) Σ ψ(x_i, θ) + (1/n) ∇pen(θ), with ψ = −∇ log p.
Vector stationarity_psi(const ModelSpec& model, const PriorSpec* prior, const DataSet& data,
                        std::span<const double> theta);

/// Maximum likelihood by damped Newton. Throws DomainError on invalid data,
/// DegenerateData when the sample cannot identify θ, NoConvergence after
/// max_iterations (unless throw_on_failure is off).
EstimateResult fit_mle(const ModelSpec& model, const DataSet& data,
                       const std::optional<ParamPoint>& init = std::nullopt, const FitOptions& options = {});

/// Wallace–Freeman estimate: the minimiser of Q_n with the penalty weight
/// fixed to 1/n. Starts from the MLE unless init is given.
EstimateResult fit_wf(const ModelSpec& model, const PriorSpec& prior, const DataSet& data,
                      const std::optional<ParamPoint>& init = std::nullopt, const FitOptions& options = {});

/// First-order MLE → Wallace–Freeman shift (1/n) I(θ)⁻¹ a(θ).
Vector predicted_shift(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta,
                       std::size_t n);

/// Limit covariance of √n(θ̂ − θ₀) under correct specification: I(θ)⁻¹.
Matrix asymptotic_cov(const ModelSpec& model, std::span<const double> theta);

/// A⁻¹ B A⁻¹ for a general M-estimator with A = E[∇ψ], B = E[ψψᵀ].
Matrix sandwich_cov(const Matrix& a, const Matrix& b);

/// E_θ[∇ℓ ∇ℓᵀ] by quadrature; equals I(θ) for a correctly specified model.
Matrix score_outer_expectation(const ModelSpec& model, std::span<const double> theta);

}  // namespace mml
