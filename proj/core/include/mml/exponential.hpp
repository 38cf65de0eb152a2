#pragma once

#include "mml/model.hpp"

namespace mml {

/// Exponential with rate θ: p(x|θ) = θ e^{-θx}, x > 0. A one-parameter family
/// with every cumulant available by hand, used as an oracle.
class ExponentialModel final : public ModelSpec {
 public:
  std::string_view name() const override { return "exponential"; }
  std::size_t dim() const override { return 1; }
  std::vector<std::string> parameter_names() const override { return {"rate"}; }

  double logpdf(double x, std::span<const double> theta) const override;
  Vector grad(double x, std::span<const double> theta) const override;
  Matrix hess(double x, std::span<const double> theta) const override;
  Tensor3 third(double x, std::span<const double> theta) const override;
  Matrix fisher(std::span<const double> theta) const override;
  std::optional<Vector> grad_log_det_fisher(std::span<const double> theta) const override;
  double from_unit_exponential(double u, std::span<const double> theta) const override;
  Vector initial_guess(const DataSet& data) const override;
};

}  // namespace mml
