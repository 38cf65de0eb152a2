#include "mml/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "mml/errors.hpp"

namespace mml {

double fd_step(double x) {
  static const double kCbrtEps = std::cbrt(std::numeric_limits<double>::epsilon());
  return kCbrtEps * std::max(1.0, std::abs(x));
}

namespace {

double checked(double v, std::size_t coord) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "finite difference probe along coordinate " << coord << " is non-finite";
    throw NonFiniteEvaluation(os.str());
  }
  return v;
}

}  // namespace

Vector central_grad_scaled(const ScalarField& f, std::span<const double> x, double scale) {
  Vector probe(x.begin(), x.end());
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = scale * fd_step(x[i]);
    probe[i] = x[i] + h;
    const double up = checked(f(probe), i);
    probe[i] = x[i] - h;
    const double down = checked(f(probe), i);
    probe[i] = x[i];
    // Use the representable step actually taken.
    g[i] = (up - down) / ((x[i] + h) - (x[i] - h));
  }
  return g;
}

Vector central_grad(const ScalarField& f, std::span<const double> x) {
  return central_grad_scaled(f, x, 1.0);
}

Matrix central_jacobian(const VectorField& f, std::span<const double> x) {
  Vector probe(x.begin(), x.end());
  Matrix jac;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double h = fd_step(x[j]);
    probe[j] = x[j] + h;
    const Vector up = f(probe);
    probe[j] = x[j] - h;
    const Vector down = f(probe);
    probe[j] = x[j];
    if (j == 0) jac = Matrix(up.size(), x.size());
    const double width = (x[j] + h) - (x[j] - h);
    for (std::size_t i = 0; i < up.size(); ++i)
      jac(i, j) = checked((up[i] - down[i]) / width, j);
  }
  return jac;
}

namespace {

/// L_{m}(x) and L_{m-1}(x) by the three-term recurrence, returned with a
/// shared log scale so large x does not overflow.
struct ScaledLaguerre {
  double cur = 1.0;   ///< L_m(x) · e^{-log_scale}
  double prev = 0.0;  ///< L_{m-1}(x) · e^{-log_scale}
  double log_scale = 0.0;
};

ScaledLaguerre laguerre_pair(std::size_t m, double x) {
  ScaledLaguerre p;
  for (std::size_t j = 0; j < m; ++j) {
    const double jj = static_cast<double>(j);
    const double next = ((2.0 * jj + 1.0 - x) * p.cur - jj * p.prev) / (jj + 1.0);
    p.prev = p.cur;
    p.cur = next;
    if (std::abs(p.cur) > 1e150) {
      p.cur *= 1e-150;
      p.prev *= 1e-150;
      p.log_scale += 150.0 * std::log(10.0);
    }
  }
  return p;
}

QuadratureRule build_laguerre(std::size_t order) {
  // Golub–Welsch eigenvalues of the Jacobi matrix (diagonal 2i+1,
  // off-diagonal i) as starting nodes.
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(order > 0 ? order - 1 : 0);
  for (std::size_t i = 0; i < order; ++i) diag[i] = 2.0 * static_cast<double>(i) + 1.0;
  for (std::size_t i = 0; i + 1 < order; ++i) sub[i] = static_cast<double>(i + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  const double n = static_cast<double>(order);
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (std::size_t i = 0; i < order; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    // Newton polish on L_n using L_n' = n (L_n − L_{n−1}) / x; the shared
    // scale cancels in the ratio.
    for (int it = 0; it < 4; ++it) {
      const ScaledLaguerre p = laguerre_pair(order, x);
      const double deriv = n * (p.cur - p.prev) / x;
      if (deriv == 0.0) break;
      const double dx = p.cur / deriv;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
    }
    // w = x / ((n+1)² L_{n+1}(x)²), evaluated in logs; far-tail weights
    // underflow cleanly to zero.
    const ScaledLaguerre p = laguerre_pair(order + 1, x);
    const double log_w =
        std::log(x) - 2.0 * std::log(n + 1.0) - 2.0 * (std::log(std::abs(p.cur)) + p.log_scale);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_w);
  }
  return rule;
}

// The head map u = e^{-t} stops at t = 40: the dropped piece is
// ∫_0^{e^{-40}} g(u) du, below 1e-15 for the polynomial-in-log integrands
// this is used for, and x(u) stays representable down to shape ≈ 0.1.
constexpr double kHeadCutoff = 40.0;

struct Sums {
  Vector value;
  Vector abs_value;
};

Sums apply_rule(const QuadratureRule& rule, const std::function<Vector(double)>& h) {
  static const double kInvE = std::exp(-1.0);
  Sums s;
  auto accumulate = [&](double weight, const Vector& values, double node) {
    if (s.value.empty()) {
      s.value.assign(values.size(), 0.0);
      s.abs_value.assign(values.size(), 0.0);
    }
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (!std::isfinite(values[c])) {
        std::ostringstream os;
        os << "quadrature integrand non-finite at u=" << node;
        throw NonFiniteEvaluation(os.str());
      }
      s.value[c] += weight * values[c];
      s.abs_value[c] += weight * std::abs(values[c]);
    }
  };
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double w = rule.weights[i];
    // Weights underflow to zero far out in the tail.
    if (w == 0.0) continue;
    accumulate(w * kInvE, h(1.0 + t), 1.0 + t);
    if (t <= kHeadCutoff) {
      const double u = std::exp(-t);
      accumulate(w * std::exp(-u), h(u), u);
    }
  }
  return s;
}

}  // namespace

const QuadratureRule& gauss_laguerre(std::size_t order) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_laguerre(order));
  return *slot;
}

VectorQuadratureResult integrate_unit_exponential(const std::function<Vector(double)>& h) {
  Sums prev = apply_rule(gauss_laguerre(kMinQuadratureOrder), h);
  double worst = 0.0;
  for (std::size_t order = 2 * kMinQuadratureOrder; order <= kMaxQuadratureOrder; order *= 2) {
    Sums cur = apply_rule(gauss_laguerre(order), h);
    bool ok = true;
    worst = 0.0;
    for (std::size_t c = 0; c < cur.value.size(); ++c) {
      const double change = std::abs(cur.value[c] - prev.value[c]);
      const double scale = std::max({std::abs(cur.value[c]), cur.abs_value[c],
                                     std::numeric_limits<double>::min()});
      worst = std::max(worst, change / scale);
      if (change > kQuadratureRelTol * scale) ok = false;
    }
    if (ok) return {std::move(cur.value), order};
    prev = std::move(cur);
  }
  std::ostringstream os;
  os << "Gauss-Laguerre doubling test failed at order " << kMaxQuadratureOrder
     << " (worst relative change " << worst << ")";
  throw QuadratureNotConverged(os.str());
}

QuadratureResult integrate_unit_exponential(const std::function<double(double)>& h) {
  const VectorQuadratureResult r =
      integrate_unit_exponential(std::function<Vector(double)>([&](double u) { return Vector{h(u)}; }));
  return {r.value[0], r.order};
}

}  // namespace mml
