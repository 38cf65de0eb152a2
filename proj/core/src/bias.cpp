#include "mml/bias.hpp"

#include <sstream>

#include "mml/errors.hpp"
#include "mml/estimators.hpp"
#include "mml/numerics.hpp"

namespace mml {

Matrix assemble_a_bar(const Tensor3& kappa2_grad, const Tensor3& kappa3) {
  const std::size_t d = kappa3.dim();
  Matrix a(d, d * d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        a(i, l * d + j) = kappa2_grad(i, j, l) - 0.5 * kappa3(i, j, l);
  return a;
}

CumulantSet compute_cumulants(const ModelSpec& model, std::span<const double> theta) {
  const std::size_t d = model.dim();
  CumulantSet c;

  // One quadrature pass for all second and third derivatives.
  const std::size_t n2 = d * d;
  const std::size_t n3 = d * d * d;
  const Vector moments = expect_quadrature(model, theta, std::function<Vector(double)>([&](double x) {
    const Matrix h = model.hess(x, theta);
    const Tensor3 t = model.third(x, theta);
    Vector out(n2 + n3);
    std::copy(h.entries().begin(), h.entries().end(), out.begin());
    std::copy(t.entries().begin(), t.entries().end(), out.begin() + static_cast<std::ptrdiff_t>(n2));
    return out;
  }));

  c.kappa2 = Matrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c.kappa2(i, j) = moments[i * d + j];
  c.kappa3 = Tensor3(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) c.kappa3(i, j, l) = moments[n2 + (i * d + j) * d + l];

  const double asym = c.kappa3.max_permutation_asymmetry();
  if (asym > 1e-5) {
    std::ostringstream os;
    os << "third cumulants are not permutation-symmetric (max deviation " << asym << ")";
    throw SymmetryViolation(os.str());
  }

  // κ_ij = −I_ij, so κ_ij^(l) = −∂I_ij/∂θ_l; differencing the closed-form
  // information avoids compounding quadrature error.
  const Matrix jac = central_jacobian(
      [&](std::span<const double> t) {
        const Matrix info = model.fisher(t);
        return Vector(info.entries().begin(), info.entries().end());
      },
      theta);
  c.kappa2_grad = Tensor3(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) c.kappa2_grad(i, j, l) = -jac(i * d + j, l);

  c.a_bar = assemble_a_bar(c.kappa2_grad, c.kappa3);
  return c;
}

Vector cox_snell_bias(const CumulantSet& cumulants, const Matrix& fisher, std::size_t n) {
  const Matrix inv = inverse_spd(fisher);
  const Vector inner = cumulants.a_bar * std::span<const double>(vec(inv));
  const Vector b = inv * std::span<const double>(inner);
  return (1.0 / static_cast<double>(n)) * std::span<const double>(b);
}

Vector cox_snell_bias(const ModelSpec& model, std::span<const double> theta, std::size_t n) {
  return cox_snell_bias(compute_cumulants(model, theta), model.fisher(theta), n);
}

Vector cox_snell_bias_summation(const CumulantSet& c, const Matrix& fisher, std::size_t n) {
  const Matrix inv = inverse_spd(fisher);
  const std::size_t d = inv.rows();
  Vector b(d, 0.0);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l)
          b[s] += inv(s, i) * inv(j, l) * (c.kappa2_grad(i, j, l) - 0.5 * c.kappa3(i, j, l));
  return (1.0 / static_cast<double>(n)) * std::span<const double>(b);
}

Vector wf_bias(const ModelSpec& model, const PriorSpec& prior, std::span<const double> theta, std::size_t n) {
  return cox_snell_bias(model, theta, n) + predicted_shift(model, prior, theta, n);
}

}  // namespace mml
