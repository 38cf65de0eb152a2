#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mml/matrix.hpp"

namespace mml {

using ScalarField = std::function<double(std::span<const double>)>;
using VectorField = std::function<Vector(std::span<const double>)>;

/// Central-difference step for coordinate value x: cbrt(eps) * max(1, |x|).
double fd_step(double x);

/// Central-difference gradient with the fixed step rule above.
/// Throws NonFiniteEvaluation if any probe is non-finite.
Vector central_grad(const ScalarField& f, std::span<const double> x);

/// Same as central_grad with an explicit per-call step multiplier; used by the
/// validation suites to check the O(h²) error decay. The step for coordinate i
/// is scale * fd_step(x[i]).
Vector central_grad_scaled(const ScalarField& f, std::span<const double> x, double scale);

/// Central-difference Jacobian of a vector field: J(i, j) = d f_i / d x_j.
Matrix central_jacobian(const VectorField& f, std::span<const double> x);

/// Gauss–Laguerre rule for the weight e^{-u} on (0, ∞).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights of the given order, computed once per order (Golub–Welsch)
/// and cached for the life of the process. Thread-safe.
const QuadratureRule& gauss_laguerre(std::size_t order);

struct QuadratureResult {
  double value = 0.0;
  std::size_t order = 0;   ///< order at which the doubling test passed
};

inline constexpr std::size_t kMinQuadratureOrder = 16;
inline constexpr std::size_t kMaxQuadratureOrder = 512;
inline constexpr double kQuadratureRelTol = 1e-9;

/// ∫₀^∞ h(u) e^{-u} du.
///
/// The integrand may carry log-type singularities at u = 0 (every Weibull
/// derivative contains powers of log u), on which plain Gauss–Laguerre
/// converges only algebraically. The range is split at u = 1: the tail uses
/// u = 1 + v and the head uses u = e^{-t}, which turns both pieces into
/// smooth integrals against e^{-v} / e^{-t}. Order starts at 16 and doubles
/// until successive values agree within 1e-9 relative to ∫|h| e^{-u}.
/// Throws QuadratureNotConverged past order 512, NonFiniteEvaluation if h
/// returns a non-finite value at a node.
QuadratureResult integrate_unit_exponential(const std::function<double(double)>& h);

struct VectorQuadratureResult {
  Vector value;
  std::size_t order = 0;
};

/// Componentwise version of integrate_unit_exponential; the doubling test must
/// pass for every component. All calls of h must return the same length.
VectorQuadratureResult integrate_unit_exponential(const std::function<Vector(double)>& h);

}  // namespace mml
