#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mml/matrix.hpp"
#include "mml/rng.hpp"

namespace mml {

/// A point θ in parameter space with a mask of coordinates restricted to
/// (0, ∞). Construction validates the mask and finiteness.
class ParamPoint {
 public:
  ParamPoint(Vector values, std::vector<bool> positive);

  /// All coordinates constrained positive.
  static ParamPoint positive(Vector values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<bool>& positivity() const noexcept { return positive_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Whether candidate satisfies this point's positivity mask and is finite.
  bool admits(std::span<const double> candidate) const;

  /// Same mask, new values (validated).
  ParamPoint with_values(Vector values) const;

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;

 private:
  Vector values_;
  std::vector<bool> positive_;
};

/// Observations x_1..x_n.
struct DataSet {
  std::vector<double> observations;

  std::size_t n() const noexcept { return observations.size(); }

  /// First m observations; nested prefixes of one sample.
  DataSet prefix(std::size_t m) const;
};

/// Dense d×d×d tensor, used for third derivatives and third cumulants.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t d) : d_(d), data_(d * d * d, 0.0) {}

  std::size_t dim() const noexcept { return d_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t l) {
    return data_[(i * d_ + j) * d_ + l];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t l) const {
    return data_[(i * d_ + j) * d_ + l];
  }
  std::span<const double> entries() const noexcept { return data_; }

  /// Largest |t(i,j,l) - t(σ(i,j,l))| over all index permutations.
  double max_permutation_asymmetry() const;

 private:
  std::size_t d_ = 0;
  std::vector<double> data_;
};

/// Parametric family contract. Every density quantity is per observation;
/// sample-level objects are formed by explicit sums or n-scaling.
class ModelSpec {
 public:
  virtual ~ModelSpec() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::vector<std::string> parameter_names() const = 0;

  /// log p(x | θ). Throws DomainError outside the support / parameter space.
  virtual double logpdf(double x, std::span<const double> theta) const = 0;
  /// ℓ_i = ∂ log p / ∂θ_i.
  virtual Vector grad(double x, std::span<const double> theta) const = 0;
  /// ℓ_ij.
  virtual Matrix hess(double x, std::span<const double> theta) const = 0;
  /// ℓ_ijl.
  virtual Tensor3 third(double x, std::span<const double> theta) const = 0;
  /// Per-observation expected Fisher information I(θ).
  virtual Matrix fisher(std::span<const double> theta) const = 0;

  /// ∇ log |I(θ)| when the family registers a closed form.
  virtual std::optional<Vector> grad_log_det_fisher(std::span<const double>) const {
    return std::nullopt;
  }

  /// The observation x whose standardised variable equals u, where the
  /// standardised variable is unit exponential under p(·|θ). Sampling and
  /// quadrature both go through this map.
  virtual double from_unit_exponential(double u, std::span<const double> theta) const = 0;

  /// Starting point for Newton iterations. Throws DegenerateData when the
  /// sample cannot identify the parameters.
  virtual Vector initial_guess(const DataSet& data) const = 0;

  /// Throws DomainError unless every coordinate of θ is admissible.
  virtual void check_theta(std::span<const double> theta) const;
  /// Throws DomainError unless x lies in the support.
  virtual void check_observation(double x) const;

  /// Positivity mask; both shipped families are fully positive.
  virtual std::vector<bool> positivity() const { return std::vector<bool>(dim(), true); }

  /// Validated parameter point for this family.
  ParamPoint point(Vector values) const;

  /// n i.i.d. draws by inverse transform of -log U, U uniform on (0, 1).
  DataSet sample(const ParamPoint& theta, std::size_t n, RngStream& rng) const;
};

using ModelPtr = std::shared_ptr<const ModelSpec>;

/// Sample-level log-likelihood Σ log p(x_i | θ).
double log_likelihood(const ModelSpec& model, const DataSet& data, std::span<const double> theta);
/// Σ ∇ log p(x_i | θ).
Vector total_score(const ModelSpec& model, const DataSet& data, std::span<const double> theta);
/// Σ ∇² log p(x_i | θ).
Matrix total_hessian(const ModelSpec& model, const DataSet& data, std::span<const double> theta);

/// Validates a data set against a model: n ≥ d+1 and every observation in the
/// support. Throws DomainError naming the offending index.
void validate_data(const ModelSpec& model, const DataSet& data);

/// Looks up "weibull" or "exponential". Throws ConfigError otherwise.
ModelPtr make_model(std::string_view name);

}  // namespace mml

namespace mml {

/// E_θ[g(X)] = ∫ g(x) p(x|θ) dx, computed in the unit-exponential variable
/// u via x = model.from_unit_exponential(u, θ) and integrate_unit_exponential.
double expect_quadrature(const ModelSpec& model, std::span<const double> theta,
                         const std::function<double(double)>& g);

/// Componentwise expectation of a vector-valued g.
Vector expect_quadrature(const ModelSpec& model, std::span<const double> theta,
                         const std::function<Vector(double)>& g);

}  // namespace mml
